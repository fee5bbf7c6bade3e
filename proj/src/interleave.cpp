#include "pmod/interleave.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "pmod/bridge.hpp"
#include "pmod/error.hpp"

namespace pmod {

namespace {

std::string shape(const Matrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// A map between two evaluations of M that may sit in the zero space; the
// points are only compared when both spaces are nonzero.
Matrix bridge(const TameModule& m, const Rational& from, const Rational& to, std::size_t rows, std::size_t cols)
{
    if (rows == 0 || cols == 0)
        return Matrix::zero(rows, cols, m.modulus());
    return structure_map(m, from, to);
}

std::size_t cell_of(const std::vector<Rational>& grid, const Rational& x, std::ptrdiff_t& cell)
{
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    cell = (it - grid.begin()) - 1;
    return static_cast<std::size_t>(cell);
}

Rational max_critical(const InterleavingCertificate& c, const Rational& fallback)
{
    std::optional<Rational> best;
    for (const auto* g : {&c.first().grid(), &c.second().grid(), &c.f.cell_grid(), &c.g.cell_grid()})
        if (!g->empty() && (!best || *best < g->back()))
            best = g->back();
    return best.value_or(fallback);
}

// Composite conditions at the given points; naturality is checked elsewhere.
Verdict check_composites(const ModuleMap& f, const ModuleMap& g, const std::vector<Rational>& points)
{
    const Rational& eps = f.shift();
    const Rational two_eps = eps + eps;
    for (const auto& x : points) {
        Matrix lhs = map_at(g, x + eps) * map_at(f, x);
        Matrix rhs = structure_map(f.source(), x, x + two_eps);
        if (lhs != rhs)
            return Verdict::reject({"gf", x, std::move(lhs), std::move(rhs)});
        lhs = map_at(f, x + eps) * map_at(g, x);
        rhs = structure_map(f.target(), x, x + two_eps);
        if (lhs != rhs)
            return Verdict::reject({"fg", x, std::move(lhs), std::move(rhs)});
    }
    return Verdict::accept();
}

// Every x at which one of the piecewise-constant functions in the strong
// conditions can change, plus one point below all of them.
std::vector<Rational> strong_check_points(const ModuleMap& f, const ModuleMap& g)
{
    const Rational& eps = f.shift();
    const std::vector<Rational> shifts{0, eps, -eps, eps + eps, -(eps + eps)};
    std::set<Rational> points;
    for (const auto* grid : {&f.cell_grid(), &g.cell_grid(), &f.source().grid(), &f.target().grid()})
        for (const auto& t : *grid)
            for (const auto& s : shifts)
                points.insert(t + s);
    if (!points.empty())
        points.insert(*points.begin() - 1);
    if (f.source().kind() == IndexKind::nat) {
        std::set<Rational> domain{Rational(0)};
        for (const auto& x : points)
            if (x.sign() >= 0)
                domain.insert(x);
        points = std::move(domain);
    }
    if (points.empty())
        points.insert(Rational(0));
    return {points.begin(), points.end()};
}

void require_kind(const InterleavingCertificate& c, InterleavingKind kind)
{
    if (c.kind != kind)
        throw UsageError(kind == InterleavingKind::strong ? "certificate is weak, expected strong"
                                                          : "certificate is strong, expected weak");
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<Rational> admissible_cell_grid(const TameModule& source, const TameModule& target, const Rational& shift)
{
    std::set<Rational> points(source.grid().begin(), source.grid().end());
    for (const auto& u : target.grid())
        points.insert(u - shift);
    if (source.kind() == IndexKind::nat) {
        std::set<Rational> clamped;
        for (const auto& x : points)
            clamped.insert(x.sign() < 0 ? Rational(0) : x);
        points = std::move(clamped);
    }
    return {points.begin(), points.end()};
}

ModuleMap::ModuleMap(TameModule source, TameModule target, Rational shift, std::vector<Rational> cell_grid,
                     std::vector<Matrix> blocks)
    : source_(std::move(source)),
      target_(std::move(target)),
      shift_(std::move(shift)),
      cell_grid_(std::move(cell_grid)),
      blocks_(std::move(blocks))
{
    if (source_.modulus() != target_.modulus() || source_.kind() != target_.kind())
        throw ValidationError("map endpoints live in different categories");
    if (shift_.sign() < 0)
        throw ValidationError("map shift must be non-negative, got " + shift_.str());
    const bool nat = source_.kind() == IndexKind::nat;
    if (nat && !shift_.is_integer())
        throw ValidationError("natural maps need an integer shift");
    if (blocks_.size() != cell_grid_.size())
        throw ValidationError("cell grid has " + std::to_string(cell_grid_.size()) + " cells but " +
                              std::to_string(blocks_.size()) + " blocks were given");
    for (std::size_t k = 0; k + 1 < cell_grid_.size(); ++k)
        if (!(cell_grid_[k] < cell_grid_[k + 1]))
            throw ValidationError("cell grid not strictly ascending");
    if (nat)
        for (const auto& s : cell_grid_)
            if (!s.is_integer() || s.sign() < 0)
                throw ValidationError("natural cell grid point " + s.str() + " is not a non-negative integer");

    const std::set<Rational> cells(cell_grid_.begin(), cell_grid_.end());
    const auto below_first = [&](const Rational& x) { return cell_grid_.empty() || x < cell_grid_.front(); };
    for (std::size_t i = 0; i < source_.size(); ++i) {
        const Rational& t = source_.grid()[i];
        if (below_first(t)) {
            if (source_.dims()[i] != 0)
                throw ValidationError("source is nonzero at " + t.str() + ", below the first cell");
        } else if (!cells.contains(t)) {
            throw ValidationError("cell grid does not refine the source grid at " + t.str());
        }
    }
    for (const auto& u : target_.grid()) {
        const Rational x = u - shift_;
        if (!below_first(x) && !cells.contains(x))
            throw ValidationError("cell grid does not refine the shifted target grid at " + x.str());
    }
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const Matrix& b = blocks_[k];
        const std::size_t rows = dim_at(target_, cell_grid_[k] + shift_);
        const std::size_t cols = dim_at(source_, cell_grid_[k]);
        if (b.modulus() != source_.modulus())
            throw ValidationError("block " + std::to_string(k) + " is over a different field");
        if (b.rows() != rows || b.cols() != cols)
            throw ValidationError("block " + std::to_string(k) + " has shape " + shape(b) + ", expected " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
    }
}

ModuleMap ModuleMap::tabulate(TameModule source, TameModule target, Rational shift,
                              const std::function<Matrix(const Rational&)>& component)
{
    std::vector<Rational> grid = admissible_cell_grid(source, target, shift);
    std::vector<Matrix> blocks;
    blocks.reserve(grid.size());
    for (const auto& s : grid)
        blocks.push_back(component(s));
    return ModuleMap(std::move(source), std::move(target), std::move(shift), std::move(grid), std::move(blocks));
}

ModuleMap ModuleMap::zero(TameModule source, TameModule target, Rational shift)
{
    const TameModule& src = source;
    const TameModule& tgt = target;
    const Rational& sh = shift;
    const auto component = [&](const Rational& x) {
        return Matrix::zero(dim_at(tgt, x + sh), dim_at(src, x), src.modulus());
    };
    std::vector<Rational> grid = admissible_cell_grid(src, tgt, sh);
    std::vector<Matrix> blocks;
    for (const auto& s : grid)
        blocks.push_back(component(s));
    return ModuleMap(std::move(source), std::move(target), std::move(shift), std::move(grid), std::move(blocks));
}

ModuleMap ModuleMap::with_block(std::size_t k, Matrix block) const
{
    std::vector<Matrix> blocks = blocks_;
    blocks.at(k) = std::move(block);
    return ModuleMap(source_, target_, shift_, cell_grid_, std::move(blocks));
}

Matrix map_at(const ModuleMap& f, const Rational& x)
{
    std::ptrdiff_t cell = 0;
    const std::size_t k = cell_of(f.cell_grid(), x, cell);
    if (cell < 0)
        return Matrix::zero(dim_at(f.target(), x + f.shift()), 0, f.source().modulus());
    return f.blocks()[k];
}

ModuleMap compose_maps(const ModuleMap& f, const ModuleMap& g)
{
    if (!(f.target() == g.source()))
        throw ValidationError("cannot compose maps: target and source differ");
    return ModuleMap::tabulate(f.source(), g.target(), f.shift() + g.shift(),
                               [&](const Rational& x) { return map_at(g, x + f.shift()) * map_at(f, x); });
}

// ---------------------------------------------------------------------------

void InterleavingCertificate::validate() const
{
    if (f.shift() != g.shift())
        throw ValidationError("f and g have different shifts");
    if (!(f.source() == g.target()) || !(f.target() == g.source()))
        throw ValidationError("f and g do not connect the same pair of modules in opposite directions");
}

InterleavingCertificate make_strong(ModuleMap f, ModuleMap g)
{
    InterleavingCertificate c{std::move(f), std::move(g), InterleavingKind::strong, Rational(0)};
    c.validate();
    return c;
}

InterleavingCertificate make_weak(ModuleMap f, ModuleMap g, Rational basepoint)
{
    InterleavingCertificate c{std::move(f), std::move(g), InterleavingKind::weak, std::move(basepoint)};
    c.validate();
    return c;
}

InterleavingCertificate swapped(const InterleavingCertificate& c)
{
    return {c.g, c.f, c.kind, c.basepoint};
}

InterleavingCertificate as_weak(const InterleavingCertificate& c, const Rational& basepoint)
{
    return {c.f, c.g, InterleavingKind::weak, basepoint};
}

InterleavingCertificate as_strong(const InterleavingCertificate& c)
{
    return {c.f, c.g, InterleavingKind::strong, Rational(0)};
}

InterleavingCertificate compose_certificates(const InterleavingCertificate& mn, const InterleavingCertificate& nl)
{
    return make_strong(compose_maps(mn.f, nl.f), compose_maps(nl.g, mn.g));
}

Verdict check_natural(const ModuleMap& f)
{
    const auto& s = f.cell_grid();
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        Matrix lhs = structure_map(f.target(), s[k] + f.shift(), s[k + 1] + f.shift()) * f.blocks()[k];
        Matrix rhs = f.blocks()[k + 1] * structure_map(f.source(), s[k], s[k + 1]);
        if (lhs != rhs)
            return Verdict::reject({"naturality", s[k], std::move(lhs), std::move(rhs)});
    }
    return Verdict::accept();
}

namespace {

Verdict check_both_natural(const InterleavingCertificate& c)
{
    Verdict v = check_natural(c.f);
    if (!v) {
        v.witness->condition = "naturality f";
        return v;
    }
    v = check_natural(c.g);
    if (!v)
        v.witness->condition = "naturality g";
    return v;
}

} // namespace

Verdict verify_strong(const InterleavingCertificate& c)
{
    require_kind(c, InterleavingKind::strong);
    c.validate();
    if (Verdict v = check_both_natural(c); !v)
        return v;
    return check_composites(c.f, c.g, strong_check_points(c.f, c.g));
}

Verdict verify_weak(const InterleavingCertificate& c)
{
    require_kind(c, InterleavingKind::weak);
    c.validate();
    const Rational& eps = c.epsilon();
    if (eps.sign() <= 0)
        throw ParameterError("weak interleavings need a positive epsilon");
    if (Verdict v = check_both_natural(c); !v)
        return v;
    const Rational& x0 = c.basepoint;
    const Integer bound = ceil_div(max_critical(c, x0) + eps + eps - x0, eps) + 1;
    const std::int64_t last = std::max<std::int64_t>(0, to_int64(bound));
    std::vector<Rational> lattice;
    for (std::int64_t k = 0; k <= last; ++k)
        lattice.push_back(x0 + Rational(k) * eps);
    return check_composites(c.f, c.g, lattice);
}

Verdict verify(const InterleavingCertificate& c)
{
    return c.kind == InterleavingKind::strong ? verify_strong(c) : verify_weak(c);
}

// ---------------------------------------------------------------------------

namespace {

// Certificate between M and a module L with L(x) = M(x + shift) as
// coordinate spaces.
InterleavingCertificate shift_certificate(const TameModule& m, const TameModule& shifted, const Rational& shift)
{
    const Rational two = shift + shift;
    ModuleMap f = ModuleMap::tabulate(m, shifted, shift, [&](const Rational& x) {
        return bridge(m, x, x + two, dim_at(shifted, x + shift), dim_at(m, x));
    });
    ModuleMap g = ModuleMap::tabulate(shifted, m, shift, [&](const Rational& x) {
        return Matrix::identity(dim_at(m, x + shift), m.modulus());
    });
    return make_strong(std::move(f), std::move(g));
}

} // namespace

InterleavingCertificate canonical_shift_interleaving(const TameModule& m, const Rational& step)
{
    if (step.sign() < 0)
        throw ParameterError("epsilon must be non-negative, got " + step.str());
    return shift_certificate(m, translate(m, step), step);
}

InterleavingCertificate canonical_pixel_interleaving(const TameModule& m, const Rational& x0, const Rational& step)
{
    if (!is_lower_stable(m, x0))
        throw StabilityError("module is not lower stable at " + x0.str());
    const TameModule pix = pixelize(m, x0, step);
    const auto lattice_floor = [&](const Rational& y) { return x0 + Rational(floor_div(y - x0, step)) * step; };
    ModuleMap f = ModuleMap::tabulate(m, pix, step, [&](const Rational& x) {
        return bridge(m, x, lattice_floor(x + step), dim_at(pix, x + step), dim_at(m, x));
    });
    ModuleMap g = ModuleMap::tabulate(pix, m, step, [&](const Rational& x) {
        return bridge(m, lattice_floor(x), x + step, dim_at(m, x + step), dim_at(pix, x));
    });
    return make_weak(std::move(f), std::move(g), x0);
}

InterleavingCertificate promote_weak_to_strong(const InterleavingCertificate& c)
{
    require_kind(c, InterleavingKind::weak);
    if (const Verdict v = verify_weak(c); !v)
        throw PreconditionError("certificate is not a weak interleaving (" + v.witness->condition + " fails at " +
                                v.witness->point.str() + ")");
    const Rational& eps = c.epsilon();
    const Rational& x0 = c.basepoint;
    const Rational two = eps + eps;
    const auto lattice_ceil = [&](const Rational& x) { return x0 + Rational(ceil_div(x - x0, eps)) * eps; };

    // M(x) → M(c) → N(c+ε) → N(x+2ε), c the lattice point at or above x.
    const auto sandwich = [&](const ModuleMap& h) {
        const TameModule& src = h.source();
        const TameModule& tgt = h.target();
        return ModuleMap::tabulate(src, tgt, two, [&](const Rational& x) {
            const Rational up = lattice_ceil(x);
            return structure_map(tgt, up + eps, x + two) * map_at(h, up) * structure_map(src, x, up);
        });
    };
    return make_strong(sandwich(c.f), sandwich(c.g));
}

InterleavingCertificate canonical_gf_interleaving(const TameModule& m, const Rational& step)
{
    const TameModule gf = compose_gf(m, step);
    const Rational two = step + step;
    // 𝒢ℱM(y) = M((⌊y/ε⌋+2)ε) where ⌊y/ε⌋+1 ≥ 0, and zero below.
    const auto sample = [&](const Rational& y) -> std::optional<Rational> {
        const Integer k = floor_div(y, step);
        if (k + 1 < 0)
            return std::nullopt;
        return Rational(k + 2) * step;
    };
    ModuleMap f = ModuleMap::tabulate(m, gf, two, [&](const Rational& x) {
        const std::size_t rows = dim_at(gf, x + two);
        const std::size_t cols = dim_at(m, x);
        const auto at = sample(x + two);
        return at ? bridge(m, x, *at, rows, cols) : Matrix::zero(rows, cols, m.modulus());
    });
    ModuleMap g = ModuleMap::tabulate(gf, m, two, [&](const Rational& x) {
        const std::size_t rows = dim_at(m, x + two);
        const std::size_t cols = dim_at(gf, x);
        const auto at = sample(x);
        return at ? bridge(m, *at, x + two, rows, cols) : Matrix::zero(rows, cols, m.modulus());
    });
    return make_weak(std::move(f), std::move(g), Rational(0));
}

InterleavingCertificate canonical_fg_interleaving(const TameModule& n, const Rational& step)
{
    return shift_certificate(n, compose_fg(n, step), Rational(2));
}

// ---------------------------------------------------------------------------

namespace {

struct Interval {
    Rational birth;
    ExtRational death;
};

std::vector<Interval> expand(const Barcode& bc)
{
    std::vector<Interval> out;
    for (const auto& b : bc.bars())
        for (std::size_t k = 0; k < b.multiplicity; ++k)
            out.push_back({b.birth, b.death});
    return out;
}

Rational abs_diff(const Rational& a, const Rational& b)
{
    return a < b ? b - a : a - b;
}

ExtRational pair_cost(const Interval& a, const Interval& b)
{
    if (a.death.is_infinite() != b.death.is_infinite())
        return ExtRational::infinity();
    Rational c = abs_diff(a.birth, b.birth);
    if (a.death.is_finite())
        c = std::max(c, abs_diff(a.death.value(), b.death.value()));
    return c;
}

ExtRational half_length(const Interval& a)
{
    if (a.death.is_infinite())
        return ExtRational::infinity();
    return (a.death.value() - a.birth) / 2;
}

// Kuhn's augmenting paths on a dense bipartite graph.
class Matching {
public:
    explicit Matching(std::size_t n) : n_(n), adj_(n * n, false) {}

    void allow(std::size_t l, std::size_t r) { adj_[l * n_ + r] = true; }

    bool perfect()
    {
        match_.assign(n_, npos);
        for (std::size_t l = 0; l < n_; ++l) {
            seen_.assign(n_, false);
            if (!augment(l))
                return false;
        }
        return true;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool augment(std::size_t l)
    {
        for (std::size_t r = 0; r < n_; ++r) {
            if (!adj_[l * n_ + r] || seen_[r])
                continue;
            seen_[r] = true;
            if (match_[r] == npos || augment(match_[r])) {
                match_[r] = l;
                return true;
            }
        }
        return false;
    }

    std::size_t n_;
    std::vector<bool> adj_;
    std::vector<std::size_t> match_;
    std::vector<bool> seen_;
};

bool matchable_within(const std::vector<Interval>& a, const std::vector<Interval>& b, const Rational& delta)
{
    // Left: a-bars then one diagonal slot per b-bar. Right: b-bars then one
    // diagonal slot per a-bar.
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const ExtRational bound(delta);
    Matching m(na + nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j)
            if (pair_cost(a[i], b[j]) <= bound)
                m.allow(i, j);
        if (half_length(a[i]) <= bound)
            m.allow(i, nb + i);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        if (half_length(b[j]) <= bound)
            m.allow(na + j, j);
        for (std::size_t i = 0; i < na; ++i)
            m.allow(na + j, nb + i);
    }
    return m.perfect();
}

} // namespace

ExtRational bottleneck_distance(const Barcode& a, const Barcode& b)
{
    if (a.kind() != b.kind())
        throw UsageError("bottleneck distance between barcodes of different index kinds");
    const auto xs = expand(a);
    const auto ys = expand(b);
    const auto infinite = [](const std::vector<Interval>& v) {
        return std::count_if(v.begin(), v.end(), [](const Interval& i) { return i.death.is_infinite(); });
    };
    if (infinite(xs) != infinite(ys))
        return ExtRational::infinity();

    std::set<Rational> candidates{Rational(0)};
    for (const auto& x : xs) {
        if (const auto h = half_length(x); h.is_finite())
            candidates.insert(h.value());
        for (const auto& y : ys)
            if (const auto c = pair_cost(x, y); c.is_finite())
                candidates.insert(c.value());
    }
    for (const auto& y : ys)
        if (const auto h = half_length(y); h.is_finite())
            candidates.insert(h.value());

    const std::vector<Rational> sorted(candidates.begin(), candidates.end());
    std::size_t lo = 0;
    std::size_t hi = sorted.size() - 1;
    // The largest candidate is always feasible: every bar can be matched
    // within it (finite to diagonal, infinite ones by birth).
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (matchable_within(xs, ys, sorted[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return sorted[lo];
}

// ---------------------------------------------------------------------------

namespace {

class Budget {
public:
    explicit Budget(std::uint64_t limit) : limit_(limit) {}

    void spend(std::uint64_t n)
    {
        if (n > limit_ - used_)
            throw ResourceError("search budget of " + std::to_string(limit_) + " candidates exceeded");
        used_ += n;
    }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

// All natural maps source → T_shift target over 𝔽₂, as block lists on the
// admissible cell grid.
std::vector<ModuleMap> enumerate_natural_maps(const TameModule& source, const TameModule& target,
                                              const Rational& shift, Budget& budget)
{
    const std::vector<Rational> grid = admissible_cell_grid(source, target, shift);
    const std::size_t cells = grid.size();
    std::vector<std::size_t> rows(cells), cols(cells);
    std::vector<Matrix> src_step(cells), tgt_step(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        rows[k] = dim_at(target, grid[k] + shift);
        cols[k] = dim_at(source, grid[k]);
        if (rows[k] * cols[k] >= 40)
            throw ResourceError("block of " + std::to_string(rows[k] * cols[k]) + " entries is beyond exhaustive search");
        if (k > 0) {
            src_step[k] = structure_map(source, grid[k - 1], grid[k]);
            tgt_step[k] = structure_map(target, grid[k - 1] + shift, grid[k] + shift);
        }
    }

    std::vector<ModuleMap> out;
    std::vector<Matrix> blocks(cells);
    const std::function<void(std::size_t)> extend = [&](std::size_t k) {
        if (k == cells) {
            out.emplace_back(source, target, shift, grid, blocks);
            return;
        }
        const std::size_t entries = rows[k] * cols[k];
        const std::uint64_t count = std::uint64_t(1) << entries;
        budget.spend(count);
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            Matrix b(rows[k], cols[k], 2);
            for (std::size_t e = 0; e < entries; ++e)
                if ((bits >> e) & 1u)
                    b.set(e / cols[k], e % cols[k], 1);
            if (k > 0 && tgt_step[k] * blocks[k - 1] != b * src_step[k])
                continue;
            blocks[k] = std::move(b);
            extend(k + 1);
        }
    };
    extend(0);
    return out;
}

} // namespace

bool brute_force_interleaving_exists(const TameModule& m, const TameModule& n, const Rational& step,
                                     std::uint64_t budget)
{
    if (m.modulus() != 2 || n.modulus() != 2)
        throw ParameterError("exhaustive interleaving search runs over F_2 only");
    if (m.kind() != n.kind())
        throw UsageError("modules have different index kinds");
    if (step.sign() < 0)
        throw ParameterError("epsilon must be non-negative");

    Budget spent(budget);
    const auto fs = enumerate_natural_maps(m, n, step, spent);
    const auto gs = enumerate_natural_maps(n, m, step, spent);
    spent.spend(std::uint64_t(fs.size()) * gs.size());
    if (fs.empty() || gs.empty())
        return false;

    // Everything but the candidate blocks is fixed: tabulate it once.
    const std::vector<Rational> points = strong_check_points(fs.front(), gs.front());
    const Rational two = step + step;
    std::vector<Matrix> ref_m, ref_n;
    for (const auto& x : points) {
        ref_m.push_back(structure_map(m, x, x + two));
        ref_n.push_back(structure_map(n, x, x + two));
    }
    const auto sample = [&](const ModuleMap& h) {
        std::vector<Matrix> at, at_shifted;
        for (const auto& x : points) {
            at.push_back(map_at(h, x));
            at_shifted.push_back(map_at(h, x + step));
        }
        return std::pair{std::move(at), std::move(at_shifted)};
    };
    std::vector<std::pair<std::vector<Matrix>, std::vector<Matrix>>> fv, gv;
    for (const auto& f : fs)
        fv.push_back(sample(f));
    for (const auto& g : gs)
        gv.push_back(sample(g));

    for (const auto& [f_at, f_next] : fv)
        for (const auto& [g_at, g_next] : gv) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < points.size(); ++i)
                ok = g_next[i] * f_at[i] == ref_m[i] && f_next[i] * g_at[i] == ref_n[i];
            if (ok)
                return true;
        }
    return false;
}

// ---------------------------------------------------------------------------

bool EquivalenceReport::all_accepted() const
{
    return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) {
        return e.informational || (e.verdict && e.verdict->accepted);
    });
}

namespace {

void add_natural_side(EquivalenceReport& report, const TameModule& n, const Rational& step)
{
    const InterleavingCertificate fg = canonical_fg_interleaving(n, step);
    report.entries.push_back({"fg strong 2", verify_strong(fg), "F G N against N", false});
    const InterleavingCertificate fg4 = promote_weak_to_strong(as_weak(fg, Rational(0)));
    report.entries.push_back({"fg strong 4", verify_strong(fg4), "promoted from weak 2 at basepoint 0", false});
    report.diagnostics.push_back(
        {"bottleneck(N, FGN)", bottleneck_distance(decompose(n), decompose(fg.second())), Rational(2)});
}

void add_real_side(EquivalenceReport& report, const TameModule& m, const Rational& step, bool informational)
{
    const Rational two = step + step;
    const InterleavingCertificate gf = canonical_gf_interleaving(m, step);
    report.entries.push_back({"gf weak 2eps", verify_weak(gf), "G F M against M, basepoint 0", informational});
    report.entries.push_back(
        {"gf strong 2eps", verify_strong(as_strong(gf)), "pointwise strong check, not claimed", true});
    const InterleavingCertificate gf4 = promote_weak_to_strong(gf);
    report.entries.push_back({"gf strong 4eps", verify_strong(gf4), "promoted from weak 2eps", informational});
    report.diagnostics.push_back(
        {"bottleneck(M, GFM)", bottleneck_distance(decompose(m), decompose(gf.second())), two});
}

} // namespace

EquivalenceReport equivalence_report(const TameModule& module, const Rational& step)
{
    if (step.sign() <= 0)
        throw ParameterError("epsilon must be positive, got " + step.str());
    EquivalenceReport report;
    report.input_kind = module.kind();
    report.epsilon = step;
    if (module.kind() == IndexKind::real) {
        add_real_side(report, module, step, false);
        add_natural_side(report, discretize(module, step), step);
        return report;
    }
    add_natural_side(report, module, step);
    const TameModule g = realify(module, step);
    if (is_lower_stable(g, 0)) {
        add_real_side(report, g, step, true);
    } else {
        report.entries.push_back({"gf weak 2eps", std::nullopt, "skipped: G N is not lower stable at 0", true});
        report.entries.push_back({"gf strong 4eps", std::nullopt, "skipped: G N is not lower stable at 0", true});
    }
    return report;
}

} // namespace pmod
