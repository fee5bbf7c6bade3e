#include "pmod/module.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "pmod/error.hpp"

namespace pmod {

std::string_view to_string(IndexKind kind)
{
    return kind == IndexKind::real ? "real" : "nat";
}

IndexKind parse_index_kind(std::string_view text)
{
    if (text == "real")
        return IndexKind::real;
    if (text == "nat")
        return IndexKind::nat;
    throw ValidationError("unknown index kind '" + std::string(text) + "'");
}

TameModule::TameModule(IndexKind kind, Residue modulus, std::vector<Rational> grid,
                       std::vector<std::size_t> dims, std::vector<Matrix> maps)
    : kind_(kind), modulus_(modulus), grid_(std::move(grid)), dims_(std::move(dims)), maps_(std::move(maps))
{
    require_prime_modulus(modulus_);
    if (dims_.size() != grid_.size())
        throw ValidationError("grid has " + std::to_string(grid_.size()) + " points but dims has " +
                              std::to_string(dims_.size()) + " entries");
    const std::size_t expected_maps = grid_.empty() ? 0 : grid_.size() - 1;
    if (maps_.size() != expected_maps)
        throw ValidationError("expected " + std::to_string(expected_maps) + " maps, got " +
                              std::to_string(maps_.size()));
    for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
        if (!(grid_[i] < grid_[i + 1]))
            throw ValidationError("grid not strictly ascending at index " + std::to_string(i + 1));
    if (kind_ == IndexKind::nat)
        for (const auto& t : grid_)
            if (!t.is_integer() || t.sign() < 0)
                throw ValidationError("natural module grid point " + t.str() + " is not a non-negative integer");
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        const Matrix& a = maps_[i];
        if (a.modulus() != modulus_)
            throw ValidationError("map " + std::to_string(i) + " is over a different field");
        if (a.rows() != dims_[i + 1] || a.cols() != dims_[i])
            throw ValidationError("map " + std::to_string(i) + " has shape " + std::to_string(a.rows()) + "x" +
                                  std::to_string(a.cols()) + " but dims require " + std::to_string(dims_[i + 1]) +
                                  "x" + std::to_string(dims_[i]));
    }
}

TameModule TameModule::zero(IndexKind kind, Residue modulus)
{
    return TameModule(kind, modulus, {}, {}, {});
}

bool TameModule::is_zero() const
{
    return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; });
}

Evaluation eval(const TameModule& m, const Rational& x)
{
    if (m.kind() == IndexKind::nat && !x.is_integer())
        throw ParameterError("natural module evaluated at non-integer " + x.str());
    const auto& grid = m.grid();
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::ptrdiff_t cell = (it - grid.begin()) - 1;
    return {cell < 0 ? 0 : m.dims()[static_cast<std::size_t>(cell)], cell};
}

Matrix cell_map(const TameModule& m, std::ptrdiff_t from, std::ptrdiff_t to)
{
    if (from > to)
        throw OrderError("cell map requested backwards");
    const auto dim = [&](std::ptrdiff_t c) { return c < 0 ? std::size_t{0} : m.dims()[static_cast<std::size_t>(c)]; };
    if (from < 0)
        return Matrix::zero(dim(to), 0, m.modulus());
    Matrix out = Matrix::identity(dim(from), m.modulus());
    for (std::ptrdiff_t i = from; i < to; ++i)
        out = m.maps()[static_cast<std::size_t>(i)] * out;
    return out;
}

Matrix structure_map(const TameModule& m, const Rational& x, const Rational& y)
{
    if (y < x)
        throw OrderError("structure map needs x <= y, got " + x.str() + " > " + y.str());
    return cell_map(m, eval(m, x).cell, eval(m, y).cell);
}

TameModule pullback(const TameModule& m, IndexKind kind, const std::vector<Rational>& points,
                    const std::function<Rational(const Rational&)>& phi)
{
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
    std::vector<std::ptrdiff_t> cells;
    for (const auto& y : points) {
        const Evaluation e = eval(m, phi(y));
        dims.push_back(e.dim);
        cells.push_back(e.cell);
    }
    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
        maps.push_back(cell_map(m, cells[i], cells[i + 1]));
    return TameModule(kind, m.modulus(), points, std::move(dims), std::move(maps));
}

TameModule translate(const TameModule& m, const Rational& p)
{
    if (m.kind() == IndexKind::real) {
        std::vector<Rational> grid;
        for (const auto& t : m.grid())
            grid.push_back(t - p);
        return TameModule(IndexKind::real, m.modulus(), std::move(grid), m.dims(), m.maps());
    }
    if (!p.is_integer() || p.sign() < 0)
        throw ParameterError("natural modules translate by non-negative integers only, got " + p.str());
    const std::ptrdiff_t c = eval(m, p).cell;
    if (c < 0) {
        std::vector<Rational> grid;
        for (const auto& t : m.grid())
            grid.push_back(t - p);
        return TameModule(IndexKind::nat, m.modulus(), std::move(grid), m.dims(), m.maps());
    }
    // Everything at or below p collapses onto degree 0.
    const auto first = static_cast<std::size_t>(c);
    std::vector<Rational> grid{Rational(0)};
    std::vector<std::size_t> dims{m.dims()[first]};
    for (std::size_t i = first + 1; i < m.size(); ++i) {
        grid.push_back(m.grid()[i] - p);
        dims.push_back(m.dims()[i]);
    }
    std::vector<Matrix> maps(m.maps().begin() + static_cast<std::ptrdiff_t>(first), m.maps().end());
    return TameModule(IndexKind::nat, m.modulus(), std::move(grid), std::move(dims), std::move(maps));
}

TameModule pixelize(const TameModule& m, const Rational& x0, const Rational& step)
{
    if (step.sign() <= 0)
        throw ParameterError("pixel width must be positive, got " + step.str());
    if (m.kind() != IndexKind::real)
        throw UsageError("pixelize applies to real modules");
    std::set<Rational> lattice;
    for (const auto& t : m.grid())
        lattice.insert(x0 + Rational(ceil_div(t - x0, step)) * step);
    const auto floor_point = [&](const Rational& y) { return x0 + Rational(floor_div(y - x0, step)) * step; };
    return canonicalize(pullback(m, IndexKind::real, {lattice.begin(), lattice.end()}, floor_point));
}

bool is_lower_stable(const TameModule& m, const Rational& x0)
{
    for (std::size_t i = 0; i < m.size() && m.grid()[i] < x0; ++i)
        if (m.dims()[i] != 0)
            return false;
    return true;
}

TameModule canonicalize(const TameModule& m)
{
    std::vector<Rational> grid;
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::size_t d = m.dims()[i];
        const bool redundant = i == 0 ? d == 0 : (m.dims()[i - 1] == d && m.maps()[i - 1].is_identity());
        if (redundant)
            continue;
        // Skipped points carry identities, so the incoming map is unchanged.
        if (!grid.empty())
            maps.push_back(m.maps()[i - 1]);
        grid.push_back(m.grid()[i]);
        dims.push_back(d);
    }
    return TameModule(m.kind(), m.modulus(), std::move(grid), std::move(dims), std::move(maps));
}

// ---------------------------------------------------------------------------

Barcode::Barcode(IndexKind kind, std::vector<Bar> bars) : kind_(kind)
{
    for (const auto& b : bars) {
        if (b.multiplicity == 0)
            throw ValidationError("bar multiplicity must be positive");
        if (!(ExtRational(b.birth) < b.death))
            throw ValidationError("bar [" + b.birth.str() + ", " + b.death.str() + ") is empty");
        if (kind_ == IndexKind::nat) {
            const bool ok = b.birth.is_integer() && b.birth.sign() >= 0 &&
                            (b.death.is_infinite() || b.death.value().is_integer());
            if (!ok)
                throw ValidationError("natural bar [" + b.birth.str() + ", " + b.death.str() +
                                      ") needs non-negative integer endpoints");
        }
    }
    std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
        if (a.birth != b.birth)
            return a.birth < b.birth;
        return a.death < b.death;
    });
    for (auto& b : bars) {
        if (!bars_.empty() && bars_.back().birth == b.birth && bars_.back().death == b.death)
            bars_.back().multiplicity += b.multiplicity;
        else
            bars_.push_back(std::move(b));
    }
}

std::size_t Barcode::total_multiplicity() const
{
    std::size_t n = 0;
    for (const auto& b : bars_)
        n += b.multiplicity;
    return n;
}

std::size_t Barcode::count_at(const Rational& x) const
{
    std::size_t n = 0;
    for (const auto& b : bars_)
        if (b.contains(x))
            n += b.multiplicity;
    return n;
}

TameModule from_barcode(const Barcode& bc, Residue modulus)
{
    std::set<Rational> endpoints;
    std::vector<const Bar*> expanded;
    for (const auto& b : bc.bars()) {
        endpoints.insert(b.birth);
        if (b.death.is_finite())
            endpoints.insert(b.death.value());
        for (std::size_t k = 0; k < b.multiplicity; ++k)
            expanded.push_back(&b);
    }
    std::vector<Rational> grid(endpoints.begin(), endpoints.end());

    // live[i] lists the expanded bar indices alive on cell i, in barcode order.
    std::vector<std::vector<std::size_t>> live(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t k = 0; k < expanded.size(); ++k)
            if (expanded[k]->contains(grid[i]))
                live[i].push_back(k);

    std::vector<std::size_t> dims;
    for (const auto& l : live)
        dims.push_back(l.size());
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Matrix a(live[i + 1].size(), live[i].size(), modulus);
        for (std::size_t c = 0; c < live[i].size(); ++c) {
            const auto r = std::find(live[i + 1].begin(), live[i + 1].end(), live[i][c]);
            if (r != live[i + 1].end())
                a.set(static_cast<std::size_t>(r - live[i + 1].begin()), c, 1);
        }
        maps.push_back(std::move(a));
    }
    return TameModule(bc.kind(), modulus, std::move(grid), std::move(dims), std::move(maps));
}

Barcode decompose(const TameModule& m)
{
    const Residue p = m.modulus();
    std::vector<Bar> bars;

    // Basis of the current cell, oldest first, with the grid index of birth.
    std::vector<std::vector<Residue>> basis;
    std::vector<std::size_t> births;

    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::size_t d = m.dims()[i];
        std::vector<std::vector<Residue>> next_basis;
        std::vector<std::size_t> next_births;
        RowEchelon echelon(d, p);

        if (i > 0) {
            const Matrix& a = m.maps()[i - 1];
            for (std::size_t k = 0; k < basis.size(); ++k) {
                std::vector<Residue> image(d, 0);
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < a.cols(); ++c)
                        image[r] = add_mod(image[r], mul_mod(a(r, c), basis[k][c], p), p);
                // Dependent on older images: the younger class dies here.
                if (echelon.insert(image)) {
                    next_basis.push_back(std::move(image));
                    next_births.push_back(births[k]);
                } else {
                    bars.push_back({m.grid()[births[k]], m.grid()[i], 1});
                }
            }
        }
        for (std::size_t r = 0; r < d; ++r) {
            std::vector<Residue> e(d, 0);
            e[r] = 1;
            if (echelon.insert(e)) {
                next_basis.push_back(std::move(e));
                next_births.push_back(i);
            }
        }
        basis = std::move(next_basis);
        births = std::move(next_births);
    }
    for (const std::size_t b : births)
        bars.push_back({m.grid()[b], ExtRational::infinity(), 1});
    return Barcode(m.kind(), std::move(bars));
}

RankTable rank_table(const TameModule& m)
{
    RankTable table(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Matrix composite = Matrix::identity(m.dims()[i], m.modulus());
        table.set(i, i, m.dims()[i]);
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            composite = m.maps()[j - 1] * composite;
            table.set(i, j, rank(composite));
        }
    }
    return table;
}

RankTable rank_table_on(const TameModule& m, const std::vector<Rational>& points)
{
    RankTable table(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i; j < points.size(); ++j)
            table.set(i, j, rank(structure_map(m, points[i], points[j])));
    return table;
}

bool isomorphic(const TameModule& a, const TameModule& b)
{
    std::set<Rational> all(a.grid().begin(), a.grid().end());
    all.insert(b.grid().begin(), b.grid().end());
    const std::vector<Rational> points(all.begin(), all.end());
    return rank_table_on(a, points) == rank_table_on(b, points);
}

} // namespace pmod
