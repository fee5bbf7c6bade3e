#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "pmod/matrix.hpp"
#include "pmod/rational.hpp"

namespace pmod {

enum class IndexKind { real, nat };

std::string_view to_string(IndexKind kind);
IndexKind parse_index_kind(std::string_view text);

/// A tame persistence module over (ℝ,≤) or (ℕ,≤).
///
/// The module is described by a finite critical grid t₀ < … < t_{m−1}, a
/// dimension per cell and the transition matrices A_i : M(t_i) → M(t_{i+1}).
/// M(x) is the zero space for x < t₀, equals cell i on [t_i, t_{i+1}), and is
/// constant (identity maps) from t_{m−1} on. Natural modules have
/// non-negative integer grids.
class TameModule {
public:
    TameModule(IndexKind kind, Residue modulus, std::vector<Rational> grid,
               std::vector<std::size_t> dims, std::vector<Matrix> maps);

    static TameModule zero(IndexKind kind, Residue modulus);

    IndexKind kind() const { return kind_; }
    Residue modulus() const { return modulus_; }
    const std::vector<Rational>& grid() const { return grid_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<Matrix>& maps() const { return maps_; }
    std::size_t size() const { return grid_.size(); }
    bool is_zero() const;

    friend bool operator==(const TameModule&, const TameModule&) = default;

private:
    IndexKind kind_;
    Residue modulus_;
    std::vector<Rational> grid_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> maps_;
};

/// Cell index −1 means "below the grid" (the zero space).
struct Evaluation {
    std::size_t dim;
    std::ptrdiff_t cell;
};

Evaluation eval(const TameModule& m, const Rational& x);
inline std::size_t dim_at(const TameModule& m, const Rational& x) { return eval(m, x).dim; }

/// M(x ≤ y). Throws OrderError if x > y.
Matrix structure_map(const TameModule& m, const Rational& x, const Rational& y);

/// Composite A_{j−1}⋯A_i between cells i ≤ j; i = −1 is the zero space.
Matrix cell_map(const TameModule& m, std::ptrdiff_t from, std::ptrdiff_t to);

/// T_pM, i.e. q ↦ M(p+q).
TameModule translate(const TameModule& m, const Rational& p);

/// P_{x0,ε}M : x ↦ M(x0 + ⌊(x−x0)/ε⌋·ε), in canonical form.
TameModule pixelize(const TameModule& m, const Rational& x0, const Rational& step);

/// True iff every M(x ≤ y) with x < y < x0 is an isomorphism. Since the
/// module is zero below its grid, that means every cell starting below x0 is
/// zero-dimensional.
bool is_lower_stable(const TameModule& m, const Rational& x0);

/// Drops grid points whose incoming map is a square identity. The first
/// point counts as entered from the zero space, so leading zero cells go too.
TameModule canonicalize(const TameModule& m);

/// The module y ↦ M(φ(y)) for a non-decreasing φ, with structure maps
/// M(φ(y) ≤ φ(y')). `points` must be ascending, include every y where M(φ(y))
/// can change, and M(φ(y)) must be zero below points.front(). Not canonicalized.
TameModule pullback(const TameModule& m, IndexKind kind, const std::vector<Rational>& points,
                    const std::function<Rational(const Rational&)>& phi);

// ---------------------------------------------------------------------------

struct Bar {
    Rational birth;
    ExtRational death;
    std::size_t multiplicity = 1;

    bool contains(const Rational& x) const { return birth <= x && ExtRational(x) < death; }
    friend bool operator==(const Bar&, const Bar&) = default;
};

/// Multiset of half-open intervals [birth, death), kept sorted by
/// (birth, death) with equal bars merged.
class Barcode {
public:
    explicit Barcode(IndexKind kind, std::vector<Bar> bars = {});

    IndexKind kind() const { return kind_; }
    const std::vector<Bar>& bars() const { return bars_; }
    bool empty() const { return bars_.empty(); }
    std::size_t total_multiplicity() const;

    /// Number of bars (with multiplicity) containing x.
    std::size_t count_at(const Rational& x) const;

    friend bool operator==(const Barcode&, const Barcode&) = default;

private:
    IndexKind kind_;
    std::vector<Bar> bars_;
};

/// Direct sum of interval modules. Each cell's basis is the list of live
/// bars in barcode order (multiplicities expanded).
TameModule from_barcode(const Barcode& bc, Residue modulus = 2);

/// Interval decomposition by left-to-right column reduction.
Barcode decompose(const TameModule& m);

/// rank M(t_i ≤ t_j) for all grid indices i ≤ j.
class RankTable {
public:
    explicit RankTable(std::size_t size) : size_(size), ranks_(size * size, 0) {}

    std::size_t size() const { return size_; }
    std::size_t operator()(std::size_t i, std::size_t j) const { return ranks_[i * size_ + j]; }
    void set(std::size_t i, std::size_t j, std::size_t r) { ranks_[i * size_ + j] = r; }

    friend bool operator==(const RankTable&, const RankTable&) = default;

private:
    std::size_t size_;
    std::vector<std::size_t> ranks_;
};

RankTable rank_table(const TameModule& m);

/// Rank table of M evaluated on an arbitrary ascending list of points.
/// Used to compare modules with different grids.
RankTable rank_table_on(const TameModule& m, const std::vector<Rational>& points);

/// Same dims and rank table on the union of both grids.
bool isomorphic(const TameModule& a, const TameModule& b);

} // namespace pmod
