#include "pmod/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "pmod/error.hpp"

namespace pmod::io {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
    std::string text;
};

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

class LineReader {
public:
    explicit LineReader(std::string_view text)
    {
        std::size_t number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            ++number;
            std::string_view raw = text.substr(pos, end - pos);
            if (!raw.empty() && raw.back() == '\r')
                raw.remove_suffix(1);
            auto tokens = split_ws(raw);
            if (!tokens.empty() && tokens.front()[0] != '#')
                lines_.push_back({number, std::move(tokens), std::string(raw)});
            pos = end + 1;
        }
        last_line_ = number;
    }

    bool done() const { return next_ == lines_.size(); }
    const Line& peek() const
    {
        if (done())
            throw ParseError(last_line_, "unexpected end of input");
        return lines_[next_];
    }
    const Line& next()
    {
        const Line& l = peek();
        ++next_;
        return l;
    }

    /// Next line, which must start with `keyword` and have `count` further
    /// tokens (any number when count < 0).
    const Line& expect(std::string_view keyword, int count = -1)
    {
        const Line& l = next();
        if (l.tokens.front() != keyword)
            throw ParseError(l.number, "expected '" + std::string(keyword) + "', got '" + l.tokens.front() + "'");
        if (count >= 0 && l.tokens.size() != static_cast<std::size_t>(count) + 1)
            throw ParseError(l.number, "'" + std::string(keyword) + "' takes " + std::to_string(count) + " argument(s)");
        return l;
    }

    void expect_header(std::string_view magic)
    {
        const Line& l = next();
        if (l.tokens.size() != 2 || l.tokens[0] != magic || l.tokens[1] != "v1")
            throw ParseError(l.number, "expected header '" + std::string(magic) + " v1'");
    }

private:
    std::vector<Line> lines_;
    std::size_t next_ = 0;
    std::size_t last_line_ = 0;
};

template <typename Fn>
auto at_line(std::size_t line, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const ParameterError& e) {
        throw ParseError(line, e.what());
    }
}

std::uint64_t parse_unsigned(const std::string& tok, std::size_t line)
{
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
    try {
        return std::stoull(tok);
    } catch (const std::out_of_range&) {
        throw ParseError(line, "integer out of range: '" + tok + "'");
    }
}

Rational parse_rational(const std::string& tok, std::size_t line)
{
    return at_line(line, [&] { return Rational::parse(tok); });
}

std::vector<Rational> parse_rationals(const Line& l)
{
    std::vector<Rational> out;
    for (std::size_t i = 1; i < l.tokens.size(); ++i)
        out.push_back(parse_rational(l.tokens[i], l.number));
    return out;
}

Residue parse_field(LineReader& in)
{
    const Line& l = in.expect("field", 1);
    const std::uint64_t p = parse_unsigned(l.tokens[1], l.number);
    if (p > max_modulus || !is_prime(p))
        throw ParseError(l.number, "field modulus " + l.tokens[1] + " is not a supported prime");
    return static_cast<Residue>(p);
}

IndexKind parse_kind_line(LineReader& in)
{
    const Line& l = in.expect("kind", 1);
    if (l.tokens[1] == "real")
        return IndexKind::real;
    if (l.tokens[1] == "nat")
        return IndexKind::nat;
    throw ParseError(l.number, "kind must be 'real' or 'nat'");
}

// `<r>x<c> [a b; c d]` starting at token index `first`.
Matrix parse_matrix(const Line& l, std::size_t first, Residue p)
{
    if (l.tokens.size() <= first)
        throw ParseError(l.number, "missing matrix shape");
    const std::string& shape = l.tokens[first];
    const auto x = shape.find('x');
    if (x == std::string::npos)
        throw ParseError(l.number, "malformed shape '" + shape + "'");
    const auto rows = parse_unsigned(shape.substr(0, x), l.number);
    const auto cols = parse_unsigned(shape.substr(x + 1), l.number);

    const auto open = l.text.find('[');
    const auto close = l.text.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError(l.number, "matrix entries must be enclosed in [ ]");
    if (l.text.find_first_not_of(" \t", close + 1) != std::string::npos)
        throw ParseError(l.number, "trailing characters after matrix");
    const std::string body = l.text.substr(open + 1, close - open - 1);

    Matrix m(rows, cols, p);
    if (rows == 0 || cols == 0) {
        if (!split_ws(body).empty())
            throw ParseError(l.number, "empty " + shape + " matrix must be written []");
        return m;
    }
    std::vector<std::string> row_texts;
    std::size_t pos = 0;
    while (true) {
        const auto semi = body.find(';', pos);
        row_texts.push_back(body.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
        if (semi == std::string::npos)
            break;
        pos = semi + 1;
    }
    if (row_texts.size() != rows)
        throw ParseError(l.number, "matrix declared " + shape + " but has " + std::to_string(row_texts.size()) + " rows");
    for (std::size_t r = 0; r < rows; ++r) {
        const auto entries = split_ws(row_texts[r]);
        if (entries.size() != cols)
            throw ParseError(l.number, "matrix row " + std::to_string(r) + " has " + std::to_string(entries.size()) +
                                           " entries, expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = parse_unsigned(entries[c], l.number);
            if (v >= p)
                throw ParseError(l.number, "matrix entry " + entries[c] + " not in [0, " + std::to_string(p) + ")");
            m.set(r, c, static_cast<Residue>(v));
        }
    }
    return m;
}

std::string join(const std::vector<Rational>& values)
{
    std::string out;
    for (const auto& v : values)
        out += " " + v.str();
    return out;
}

TameModule read_module(LineReader& in)
{
    in.expect_header("pmod");
    const Residue p = parse_field(in);
    const IndexKind kind = parse_kind_line(in);
    const Line& grid_line = in.expect("grid");
    std::vector<Rational> grid = parse_rationals(grid_line);
    const Line& dims_line = in.expect("dims");
    std::vector<std::size_t> dims;
    for (std::size_t i = 1; i < dims_line.tokens.size(); ++i)
        dims.push_back(parse_unsigned(dims_line.tokens[i], dims_line.number));

    std::vector<std::optional<Matrix>> maps(grid.empty() ? 0 : grid.size() - 1);
    while (!in.done() && in.peek().tokens.front() == "map") {
        const Line& l = in.next();
        if (l.tokens.size() < 3)
            throw ParseError(l.number, "map line needs an index and a shape");
        const auto i = parse_unsigned(l.tokens[1], l.number);
        if (i >= maps.size())
            throw ParseError(l.number, "map index " + l.tokens[1] + " out of range for " +
                                           std::to_string(grid.size()) + " grid points");
        if (maps[i])
            throw ParseError(l.number, "duplicate map " + l.tokens[1]);
        maps[i] = parse_matrix(l, 2, p);
    }
    std::vector<Matrix> ordered;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (!maps[i])
            throw ValidationError("map " + std::to_string(i) + " is missing");
        ordered.push_back(std::move(*maps[i]));
    }
    return TameModule(kind, p, std::move(grid), std::move(dims), std::move(ordered));
}

void expect_done(LineReader& in)
{
    if (!in.done()) {
        const Line& l = in.peek();
        throw ParseError(l.number, "unexpected line starting with '" + l.tokens.front() + "'");
    }
}

} // namespace

FileKind sniff(std::string_view text)
{
    LineReader in(text);
    const Line& l = in.next();
    const std::string& magic = l.tokens.front();
    if (magic == "pmod")
        return FileKind::module;
    if (magic == "barcode")
        return FileKind::barcode;
    if (magic == "grmod")
        return FileKind::presentation;
    if (magic == "cert")
        return FileKind::certificate;
    throw ParseError(l.number, "unknown file header '" + magic + "'");
}

std::string serialize(const TameModule& m)
{
    std::ostringstream os;
    os << "pmod v1\n";
    os << "field " << m.modulus() << "\n";
    os << "kind " << to_string(m.kind()) << "\n";
    os << "grid" << join(m.grid()) << "\n";
    os << "dims";
    for (const auto d : m.dims())
        os << " " << d;
    os << "\n";
    for (std::size_t i = 0; i < m.maps().size(); ++i)
        os << "map " << i << " " << m.maps()[i] << "\n";
    return os.str();
}

TameModule parse_module(std::string_view text)
{
    LineReader in(text);
    TameModule m = read_module(in);
    expect_done(in);
    return m;
}

std::string serialize(const Barcode& bc)
{
    std::ostringstream os;
    os << "barcode v1\n";
    os << "kind " << to_string(bc.kind()) << "\n";
    for (const auto& b : bc.bars())
        os << b.birth << " " << b.death << " " << b.multiplicity << "\n";
    return os.str();
}

Barcode parse_barcode(std::string_view text)
{
    LineReader in(text);
    in.expect_header("barcode");
    const IndexKind kind = parse_kind_line(in);
    std::vector<Bar> bars;
    while (!in.done()) {
        const Line& l = in.next();
        if (l.tokens.size() != 3)
            throw ParseError(l.number, "bar line must read '<birth> <death|inf> <multiplicity>'");
        Bar b{parse_rational(l.tokens[0], l.number),
              at_line(l.number, [&] { return ExtRational::parse(l.tokens[1]); }),
              parse_unsigned(l.tokens[2], l.number)};
        bars.push_back(std::move(b));
    }
    return Barcode(kind, std::move(bars));
}

std::string serialize(const GradedPresentation& pres)
{
    std::ostringstream os;
    os << "grmod v1\n";
    os << "field " << pres.modulus() << "\n";
    os << "gens";
    for (const auto e : pres.generator_degrees())
        os << " " << e;
    os << "\n";
    for (const auto& r : pres.relations()) {
        os << "rel " << r.degree << " [";
        for (std::size_t i = 0; i < r.coefficients.size(); ++i)
            os << (i ? " " : "") << r.coefficients[i];
        os << "]\n";
    }
    return os.str();
}

GradedPresentation parse_presentation(std::string_view text)
{
    LineReader in(text);
    in.expect_header("grmod");
    const Residue p = parse_field(in);
    const Line& g = in.expect("gens");
    std::vector<Degree> gens;
    for (std::size_t i = 1; i < g.tokens.size(); ++i)
        gens.push_back(parse_unsigned(g.tokens[i], g.number));
    std::vector<Relation> rels;
    while (!in.done()) {
        const Line& l = in.expect("rel");
        if (l.tokens.size() < 2)
            throw ParseError(l.number, "relation needs a degree");
        Relation r{parse_unsigned(l.tokens[1], l.number), {}};
        const Line row{l.number, {"rel", std::to_string(gens.size() == 0 ? 0 : 1) + "x" + std::to_string(gens.size())}, l.text};
        const Matrix m = parse_matrix(row, 1, p);
        for (std::size_t i = 0; i < m.cols(); ++i)
            r.coefficients.push_back(m(0, i));
        rels.push_back(std::move(r));
    }
    return GradedPresentation(p, std::move(gens), std::move(rels));
}

namespace {

void write_map(std::ostream& os, const char* header, const ModuleMap& f)
{
    os << header << "\n";
    os << "cellgrid" << join(f.cell_grid()) << "\n";
    for (std::size_t k = 0; k < f.blocks().size(); ++k)
        os << "block " << k << " " << f.blocks()[k] << "\n";
}

TameModule read_endpoint(LineReader& in, std::string_view keyword, const std::filesystem::path& base_dir)
{
    const Line& l = in.expect(keyword, 1);
    if (l.tokens[1] == "inline") {
        TameModule m = read_module(in);
        in.expect("end", 0);
        return m;
    }
    const std::filesystem::path file = base_dir / l.tokens[1];
    try {
        return parse_module(read_file(file));
    } catch (const ParseError& e) {
        throw ParseError(l.number, file.string() + ": " + e.what());
    }
}

ModuleMap read_map(LineReader& in, std::string_view header, const TameModule& source, const TameModule& target,
                   const Rational& shift)
{
    in.expect(header, 0);
    std::vector<Rational> cells = parse_rationals(in.expect("cellgrid"));
    std::vector<std::optional<Matrix>> blocks(cells.size());
    while (!in.done() && in.peek().tokens.front() == "block") {
        const Line& l = in.next();
        if (l.tokens.size() < 3)
            throw ParseError(l.number, "block line needs an index and a shape");
        const auto k = parse_unsigned(l.tokens[1], l.number);
        if (k >= blocks.size())
            throw ParseError(l.number, "block index " + l.tokens[1] + " out of range");
        if (blocks[k])
            throw ParseError(l.number, "duplicate block " + l.tokens[1]);
        blocks[k] = parse_matrix(l, 2, source.modulus());
    }
    std::vector<Matrix> ordered;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (!blocks[k])
            throw ValidationError(std::string(header) + ": block " + std::to_string(k) + " is missing");
        ordered.push_back(std::move(*blocks[k]));
    }
    return ModuleMap(source, target, shift, std::move(cells), std::move(ordered));
}

} // namespace

std::string serialize(const InterleavingCertificate& cert)
{
    std::ostringstream os;
    os << "cert v1\n";
    os << "epsilon " << cert.epsilon() << "\n";
    if (cert.kind == InterleavingKind::strong)
        os << "kind strong\n";
    else
        os << "kind weak " << cert.basepoint << "\n";
    os << "source inline\n" << serialize(cert.first()) << "end\n";
    os << "target inline\n" << serialize(cert.second()) << "end\n";
    write_map(os, "mapf", cert.f);
    write_map(os, "mapg", cert.g);
    return os.str();
}

InterleavingCertificate parse_certificate(std::string_view text, const std::filesystem::path& base_dir)
{
    LineReader in(text);
    in.expect_header("cert");
    const Line& e = in.expect("epsilon", 1);
    const Rational eps = parse_rational(e.tokens[1], e.number);
    const Line& k = in.expect("kind");
    InterleavingKind kind;
    Rational basepoint(0);
    if (k.tokens.size() == 2 && k.tokens[1] == "strong") {
        kind = InterleavingKind::strong;
    } else if (k.tokens.size() == 3 && k.tokens[1] == "weak") {
        kind = InterleavingKind::weak;
        basepoint = parse_rational(k.tokens[2], k.number);
    } else {
        throw ParseError(k.number, "kind must be 'strong' or 'weak <x0>'");
    }
    TameModule source = read_endpoint(in, "source", base_dir);
    TameModule target = read_endpoint(in, "target", base_dir);
    ModuleMap f = read_map(in, "mapf", source, target, eps);
    ModuleMap g = read_map(in, "mapg", target, source, eps);
    expect_done(in);
    InterleavingCertificate cert{std::move(f), std::move(g), kind, std::move(basepoint)};
    cert.validate();
    return cert;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw ParameterError("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw ParameterError("cannot write '" + path.string() + "'");
    os << contents;
}

} // namespace pmod::io
