#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pmod/bridge.hpp"
#include "pmod/error.hpp"
#include "pmod/gen.hpp"
#include "pmod/interleave.hpp"
#include "pmod/io.hpp"
#include "report.hpp"

namespace pmod::cli {

namespace {

struct Options {
    std::uint64_t field = 2;
    std::string input;
    std::string second_input;
    std::string output;
    std::string report_path;
    std::string epsilon;
    std::string x0 = "0";
    std::string shift;
    std::string kind;
    std::string method = "bottleneck";
    std::string cert;
    std::uint64_t horizon = 0;
    bool horizon_given = false;
    std::uint64_t budget = default_search_budget;
    // gen
    std::uint64_t seed = 0;
    std::size_t bars = 4;
    std::uint64_t max_endpoint = 10;
    std::uint64_t denominator = 1;
    std::string offset = "0";
    std::string index_kind = "real";
    bool infinite = false;
    bool as_module = false;
    bool raw = false;
    std::size_t grid = 5;
    std::size_t max_dim = 3;
};

class Session {
public:
    Session(const Options& o, std::ostream& out, std::ostream& err, std::string operation)
        : o_(o), out_(out), err_(err), report_(std::move(operation))
    {
        report_.param("field", std::to_string(o.field));
    }

    Report& report() { return report_; }
    Residue field() const { return static_cast<Residue>(o_.field); }

    std::string load(const std::string& path)
    {
        std::string text;
        if (path == "-") {
            std::ostringstream os;
            os << std::cin.rdbuf();
            text = os.str();
        } else {
            text = io::read_file(path);
        }
        report_.input(path, text);
        return text;
    }

    /// Modules directly; barcodes are turned into interval-sum modules.
    TameModule load_module(const std::string& path)
    {
        const std::string text = load(path);
        if (io::sniff(text) == io::FileKind::barcode)
            return from_barcode(io::parse_barcode(text), field());
        return io::parse_module(text);
    }

    Barcode load_barcode(const std::string& path)
    {
        const std::string text = load(path);
        if (io::sniff(text) == io::FileKind::barcode)
            return io::parse_barcode(text);
        return decompose(io::parse_module(text));
    }

    InterleavingCertificate load_certificate(const std::string& path)
    {
        const std::string text = load(path);
        const auto dir = path == "-" ? std::filesystem::path{} : std::filesystem::path(path).parent_path();
        return io::parse_certificate(text, dir);
    }

    /// Artifact to -o or stdout; the report then goes to --report, or to
    /// whichever of stdout/stderr the artifact left free.
    int emit(const std::string& artifact, int code = exit_ok)
    {
        if (!o_.output.empty()) {
            io::write_file(o_.output, artifact);
            report_.artifact(o_.output);
            write_report(out_);
        } else {
            out_ << artifact;
            write_report(err_);
        }
        return code;
    }

    int emit_report(int code)
    {
        write_report(out_);
        return code;
    }

private:
    void write_report(std::ostream& fallback)
    {
        if (o_.report_path.empty())
            fallback << report_.str();
        else
            io::write_file(o_.report_path, report_.str());
    }

    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    Report report_;
};

Rational rational_param(Session& s, std::string_view name, const std::string& text)
{
    if (text.empty())
        throw ParameterError("--" + std::string(name) + " is required");
    Rational r = Rational::parse(text);
    s.report().param(name, r.str());
    return r;
}

int verdict_code(const Verdict& v)
{
    return v.accepted ? exit_ok : exit_rejected;
}

using Handler = std::function<int(const Options&, std::ostream&, std::ostream&)>;

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Persistence modules over R and N: functors, decompositions and interleaving certificates", "pmod"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--field", o.field, "Prime coefficient field (default 2)")->envname("PMOD_FIELD");

    std::map<CLI::App*, Handler> handlers;
    const auto io_options = [&](CLI::App* sub) {
        sub->add_option("-o,--output", o.output, "Write the artifact here instead of stdout");
        sub->add_option("--report", o.report_path, "Write the report here");
    };
    const auto unary = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", o.input, "Input file ('-' for stdin)")->required();
        io_options(sub);
        handlers[sub] = std::move(h);
        return sub;
    };

    unary("decompose", "Interval decomposition of a module", [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "decompose");
        return s.emit(io::serialize(decompose(s.load_module(opt.input))));
    });
    unary("compose", "Direct sum of interval modules from a barcode", [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "compose");
        return s.emit(io::serialize(from_barcode(s.load_barcode(opt.input), s.field())));
    });
    auto* translate_cmd = unary("translate", "Shift functor T_p", [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "translate");
        const Rational p = rational_param(s, "p", opt.shift);
        return s.emit(io::serialize(translate(s.load_module(opt.input), p)));
    });
    translate_cmd->add_option("-p,--p", o.shift, "Translation amount")->required();

    auto* pixelize_cmd = unary("pixelize", "Pixelization P_{x0,eps}", [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "pixelize");
        const Rational x0 = rational_param(s, "x0", opt.x0);
        const Rational eps = rational_param(s, "epsilon", opt.epsilon);
        return s.emit(io::serialize(pixelize(s.load_module(opt.input), x0, eps)));
    });
    pixelize_cmd->add_option("--x0", o.x0, "Lattice basepoint (default 0)");
    pixelize_cmd->add_option("--epsilon", o.epsilon, "Pixel width")->required();

    const auto with_epsilon = [&](const std::string& name, const std::string& help,
                                  std::function<TameModule(const TameModule&, const Rational&)> fn) {
        auto* sub = unary(name, help, [name, fn](const Options& opt, auto& out, auto& err) {
            Session s(opt, out, err, name);
            const Rational eps = rational_param(s, "epsilon", opt.epsilon);
            return s.emit(io::serialize(fn(s.load_module(opt.input), eps)));
        });
        sub->add_option("--epsilon", o.epsilon, "Scale")->required();
    };
    with_epsilon("discretize", "Real to natural: n -> M((n+1) eps)", discretize);
    with_epsilon("realify", "Natural to real: x -> N(floor(x/eps)+1)", realify);
    with_epsilon("gf", "Composite real -> natural -> real", compose_gf);
    with_epsilon("fg", "Composite natural -> real -> natural", compose_fg);

    unary("to-graded", "Natural module to graded k[t] presentation", [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "to-graded");
        return s.emit(io::serialize(nat_to_graded(s.load_module(opt.input))));
    });
    auto* from_graded_cmd = unary("from-graded", "Graded presentation to natural module",
                                  [](const Options& opt, auto& out, auto& err) {
                                      Session s(opt, out, err, "from-graded");
                                      std::optional<Degree> horizon;
                                      if (opt.horizon_given) {
                                          horizon = opt.horizon;
                                          s.report().param("horizon", std::to_string(opt.horizon));
                                      }
                                      const auto pres = io::parse_presentation(s.load(opt.input));
                                      return s.emit(io::serialize(graded_to_nat(pres, horizon)));
                                  });
    from_graded_cmd->add_option("--horizon", o.horizon, "Degree horizon (default max degree + 1)")
        ->each([&](const std::string&) { o.horizon_given = true; });

    auto* canonical_cmd = unary("canonical", "Build a canonical interleaving certificate",
                                [](const Options& opt, auto& out, auto& err) {
                                    Session s(opt, out, err, "canonical");
                                    s.report().param("kind", opt.kind);
                                    const Rational eps = rational_param(s, "epsilon", opt.epsilon);
                                    const TameModule m = s.load_module(opt.input);
                                    std::optional<InterleavingCertificate> cert;
                                    if (opt.kind == "shift")
                                        cert = canonical_shift_interleaving(m, eps);
                                    else if (opt.kind == "pixel")
                                        cert = canonical_pixel_interleaving(m, rational_param(s, "x0", opt.x0), eps);
                                    else if (opt.kind == "gf")
                                        cert = canonical_gf_interleaving(m, eps);
                                    else
                                        cert = canonical_fg_interleaving(m, eps);
                                    const Verdict v = verify(*cert);
                                    s.report().verdict(cert->kind == InterleavingKind::strong ? "strong" : "weak", v);
                                    return s.emit(io::serialize(*cert), verdict_code(v));
                                });
    canonical_cmd->add_option("--kind", o.kind, "shift | pixel | gf | fg")
        ->required()
        ->check(CLI::IsMember({"shift", "pixel", "gf", "fg"}));
    canonical_cmd->add_option("--epsilon", o.epsilon, "Interleaving scale")->required();
    canonical_cmd->add_option("--x0", o.x0, "Basepoint for --kind pixel (default 0)");

    auto* check_cmd = app.add_subcommand("check", "Verify a certificate (strong or weak by its header)");
    check_cmd->add_option("--cert", o.cert, "Certificate file")->required();
    io_options(check_cmd);
    handlers[check_cmd] = [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "check");
        const InterleavingCertificate c = s.load_certificate(opt.cert);
        s.report().param("epsilon", c.epsilon().str());
        if (c.kind == InterleavingKind::weak)
            s.report().param("x0", c.basepoint.str());
        const Verdict v = verify(c);
        s.report().verdict(c.kind == InterleavingKind::strong ? "strong" : "weak", v);
        return s.emit_report(verdict_code(v));
    };

    auto* promote_cmd = app.add_subcommand("promote", "Weak eps certificate to strong 2 eps certificate");
    promote_cmd->add_option("--cert", o.cert, "Weak certificate file")->required();
    io_options(promote_cmd);
    handlers[promote_cmd] = [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "promote");
        InterleavingCertificate c = s.load_certificate(opt.cert);
        if (c.kind == InterleavingKind::strong)
            c = as_weak(c, Rational(0));
        const InterleavingCertificate strong = promote_weak_to_strong(c);
        const Verdict v = verify_strong(strong);
        s.report().verdict("strong", v);
        return s.emit(io::serialize(strong), verdict_code(v));
    };

    auto* distance_cmd = app.add_subcommand("distance", "Bottleneck distance or exhaustive interleaving search");
    distance_cmd->add_option("first", o.input, "First module or barcode")->required();
    distance_cmd->add_option("second", o.second_input, "Second module or barcode")->required();
    distance_cmd->add_option("--method", o.method, "bottleneck | bruteforce")
        ->check(CLI::IsMember({"bottleneck", "bruteforce"}));
    distance_cmd->add_option("--epsilon", o.epsilon, "Threshold (required for bruteforce)");
    distance_cmd->add_option("--budget", o.budget, "Search budget for bruteforce");
    io_options(distance_cmd);
    handlers[distance_cmd] = [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "distance");
        s.report().param("method", opt.method);
        if (opt.method == "bottleneck") {
            const Barcode a = s.load_barcode(opt.input);
            const Barcode b = s.load_barcode(opt.second_input);
            const ExtRational d = bottleneck_distance(a, b);
            s.report().value("distance", d.str());
            if (opt.epsilon.empty())
                return s.emit_report(exit_ok);
            const Rational eps = rational_param(s, "epsilon", opt.epsilon);
            const bool within = d <= ExtRational(eps);
            s.report().value("within-epsilon", within ? "yes" : "no");
            return s.emit_report(within ? exit_ok : exit_rejected);
        }
        const Rational eps = rational_param(s, "epsilon", opt.epsilon);
        s.report().param("budget", std::to_string(opt.budget));
        const TameModule a = s.load_module(opt.input);
        const TameModule b = s.load_module(opt.second_input);
        const bool exists = brute_force_interleaving_exists(a, b, eps, opt.budget);
        s.report().value("interleaving-exists", exists ? "yes" : "no");
        return s.emit_report(exists ? exit_ok : exit_rejected);
    };

    auto* report_cmd = unary("report", "Interleaved-equivalence report", [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "report");
        const Rational eps = rational_param(s, "epsilon", opt.epsilon);
        const EquivalenceReport r = equivalence_report(s.load_module(opt.input), eps);
        s.report().param("input-kind", std::string(to_string(r.input_kind)));
        for (const auto& e : r.entries) {
            const std::string name = (e.informational ? "info:" : "") + std::string(e.name);
            std::string label = name;
            std::replace(label.begin(), label.end(), ' ', '-');
            if (e.verdict)
                s.report().verdict(label, *e.verdict);
            else
                s.report().skipped(label, e.note);
        }
        for (const auto& d : r.diagnostics) {
            std::string label = d.name;
            std::erase(label, ' ');
            s.report().value(label, d.value.str() + " bound " + d.bound.str() + (d.within() ? " ok" : " exceeded"));
        }
        return s.emit_report(r.all_accepted() ? exit_ok : exit_rejected);
    });
    report_cmd->add_option("--epsilon", o.epsilon, "Scale")->required();

    auto* gen_cmd = app.add_subcommand("gen", "Deterministic random barcode or module");
    gen_cmd->add_option("--seed", o.seed, "64-bit seed")->required();
    gen_cmd->add_option("--bars", o.bars, "Number of bars (default 4)");
    gen_cmd->add_option("--max-endpoint", o.max_endpoint, "Largest endpoint / grid value (default 10)");
    gen_cmd->add_option("--denominator", o.denominator, "Endpoints are multiples of 1/denominator (default 1)");
    gen_cmd->add_option("--offset", o.offset, "Added to every endpoint (default 0)");
    gen_cmd->add_option("--kind", o.index_kind, "real | nat")->check(CLI::IsMember({"real", "nat"}));
    gen_cmd->add_flag("--infinite", o.infinite, "Allow bars that never die");
    gen_cmd->add_flag("--module", o.as_module, "Emit the interval-sum module instead of the barcode");
    gen_cmd->add_flag("--raw", o.raw, "Emit a module with random matrices instead");
    gen_cmd->add_option("--grid", o.grid, "Raw modules: maximal grid size (default 5)");
    gen_cmd->add_option("--max-dim", o.max_dim, "Raw modules: maximal dimension (default 3)");
    io_options(gen_cmd);
    handlers[gen_cmd] = [](const Options& opt, auto& out, auto& err) {
        Session s(opt, out, err, "gen");
        s.report().param("seed", std::to_string(opt.seed));
        s.report().param("kind", opt.index_kind);
        const IndexKind kind = parse_index_kind(opt.index_kind);
        if (opt.raw) {
            s.report().param("grid", std::to_string(opt.grid));
            s.report().param("max-dim", std::to_string(opt.max_dim));
            s.report().param("max-endpoint", std::to_string(opt.max_endpoint));
            s.report().param("denominator", std::to_string(opt.denominator));
            gen::RawShape shape{opt.grid, opt.max_dim, s.field(), kind, 0,
                                static_cast<std::int64_t>(opt.max_endpoint), opt.denominator};
            return s.emit(io::serialize(gen::random_raw_module(opt.seed, shape)));
        }
        s.report().param("bars", std::to_string(opt.bars));
        s.report().param("max-endpoint", std::to_string(opt.max_endpoint));
        s.report().param("denominator", std::to_string(opt.denominator));
        const Rational offset = rational_param(s, "offset", opt.offset);
        s.report().param("infinite", opt.infinite ? "yes" : "no");
        gen::BarcodeShape shape{opt.bars, opt.max_endpoint, opt.denominator, offset, kind, opt.infinite};
        const Barcode bc = gen::random_barcode(opt.seed, shape);
        if (opt.as_module)
            return s.emit(io::serialize(from_barcode(bc, s.field())));
        return s.emit(io::serialize(bc));
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }

    try {
        require_prime_modulus(o.field);
        for (const auto& [sub, handler] : handlers)
            if (sub->parsed())
                return handler(o, out, err);
        err << "error: no subcommand\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
}

} // namespace pmod::cli
