#pragma once

// Test-side oracles and the shared random corpus. Nothing here calls the
// library's linear algebra or decomposition code; oracles recompute their
// answers by brute force on small inputs.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pmod/bridge.hpp"
#include "pmod/gen.hpp"
#include "pmod/interleave.hpp"
#include "pmod/module.hpp"

namespace pmod::testing {

inline Rational q(const char* text)
{
    return Rational::parse(text);
}

inline TameModule interval(const char* birth, const char* death, IndexKind kind = IndexKind::real)
{
    return from_barcode(Barcode(kind, {{q(birth), ExtRational::parse(death), 1}}));
}

inline TameModule nat_interval(long birth, long death)
{
    return from_barcode(Barcode(IndexKind::nat, {{Rational(birth), ExtRational(death), 1}}));
}

/// Floor of a/b for b > 0 by plain integer arithmetic.
inline std::int64_t floor_oracle(std::int64_t a, std::int64_t b)
{
    std::int64_t d = a / b;
    if ((a % b != 0) && (a < 0))
        --d;
    return d;
}

using Dense = std::vector<std::vector<std::uint64_t>>;

inline Dense to_dense(const Matrix& m)
{
    Dense d(m.rows(), std::vector<std::uint64_t>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            d[r][c] = m(r, c);
    return d;
}

/// Schoolbook product mod p; rows × inner × cols with explicit dims so
/// empty shapes are handled.
inline Dense dense_mul(const Dense& a, const Dense& b, std::size_t rows, std::size_t inner, std::size_t cols,
                       std::uint64_t p)
{
    Dense out(rows, std::vector<std::uint64_t>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < cols; ++j)
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % p;
    return out;
}

/// Rank as log_p of the image size, found by enumerating all p^cols inputs.
/// Only usable for tiny matrices.
inline std::size_t rank_oracle(const Dense& a, std::size_t rows, std::size_t cols, std::uint64_t p)
{
    std::set<std::vector<std::uint64_t>> image;
    std::vector<std::uint64_t> x(cols, 0);
    while (true) {
        std::vector<std::uint64_t> y(rows, 0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                y[i] = (y[i] + a[i][j] * x[j]) % p;
        image.insert(y);
        std::size_t j = 0;
        while (j < cols && ++x[j] == p)
            x[j++] = 0;
        if (j == cols)
            break;
    }
    std::size_t r = 0;
    for (std::size_t size = 1; size < image.size(); size *= p)
        ++r;
    return r;
}

/// Structure map between grid cells i ≤ j by multiplying the stored
/// transition matrices in test code.
inline Dense oracle_cell_map(const TameModule& m, std::size_t i, std::size_t j)
{
    const auto& dims = m.dims();
    Dense acc(dims[i], std::vector<std::uint64_t>(dims[i], 0));
    for (std::size_t k = 0; k < dims[i]; ++k)
        acc[k][k] = 1;
    for (std::size_t k = i; k < j; ++k)
        acc = dense_mul(to_dense(m.maps()[k]), acc, dims[k + 1], dims[k], dims[i], m.modulus());
    return acc;
}

/// rank M(t_i ≤ t_j) for i ≤ j on the module's own grid.
inline std::vector<std::vector<std::size_t>> oracle_rank_table(const TameModule& m)
{
    const std::size_t n = m.size();
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            t[i][j] = rank_oracle(oracle_cell_map(m, i, j), m.dims()[j], m.dims()[i], m.modulus());
    return t;
}

/// Number of bars (with multiplicity) containing both x and y.
inline std::size_t bars_spanning(const Barcode& bc, const Rational& x, const Rational& y)
{
    std::size_t count = 0;
    for (const Bar& b : bc.bars())
        if (b.birth <= x && ExtRational(y) < b.death)
            count += b.multiplicity;
    return count;
}

/// Barcode recovered from a rank table by inclusion and exclusion: the
/// multiplicity of [t_i, t_j) is r(i,j−1) − r(i−1,j−1) − r(i,j) + r(i−1,j),
/// with out-of-range entries zero and t_n = ∞.
inline Barcode barcode_from_ranks(const TameModule& m)
{
    const auto t = oracle_rank_table(m);
    const std::size_t n = m.size();
    const auto r = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> long {
        if (i < 0 || j >= static_cast<std::ptrdiff_t>(n) || i > j)
            return 0;
        return static_cast<long>(t[i][j]);
    };
    std::vector<Bar> bars;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        for (std::ptrdiff_t j = i + 1; j <= static_cast<std::ptrdiff_t>(n); ++j) {
            const long mult = r(i, j - 1) - r(i - 1, j - 1) - r(i, j) + r(i - 1, j);
            if (mult > 0) {
                const ExtRational death = j == static_cast<std::ptrdiff_t>(n) ? ExtRational::infinity()
                                                                              : ExtRational(m.grid()[j]);
                bars.push_back({m.grid()[i], death, static_cast<std::size_t>(mult)});
            }
        }
    return Barcode(m.kind(), bars);
}

/// 𝒢ℱM(y) read directly off M: M((⌊y/ε⌋+2)ε) for ⌊y/ε⌋ ≥ −1, else zero.
inline std::size_t gf_dim_oracle(const TameModule& m, const Rational& step, const Rational& y)
{
    const Integer k = floor_div(y, step);
    if (k < -1)
        return 0;
    return dim_at(m, Rational(k + 2) * step);
}

// ---------------------------------------------------------------------------
// Certificate oracle

/// Largest i with grid[i] ≤ x, or −1.
inline std::ptrdiff_t oracle_cell(const std::vector<Rational>& grid, const Rational& x)
{
    std::ptrdiff_t cell = -1;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] <= x)
            cell = static_cast<std::ptrdiff_t>(i);
    return cell;
}

inline std::size_t oracle_dim(const TameModule& m, const Rational& x)
{
    const std::ptrdiff_t c = oracle_cell(m.grid(), x);
    return c < 0 ? 0 : m.dims()[c];
}

/// M(x ≤ y) as a dense matrix.
inline Dense oracle_structure(const TameModule& m, const Rational& x, const Rational& y)
{
    const std::ptrdiff_t cx = oracle_cell(m.grid(), x);
    const std::ptrdiff_t cy = oracle_cell(m.grid(), y);
    if (cx < 0)
        return Dense(oracle_dim(m, y), std::vector<std::uint64_t>());
    return oracle_cell_map(m, static_cast<std::size_t>(cx), static_cast<std::size_t>(cy));
}

/// f_x as a dense matrix of shape dim N(x+ε) × dim M(x).
inline Dense oracle_component(const ModuleMap& f, const Rational& x)
{
    const std::size_t rows = oracle_dim(f.target(), x + f.shift());
    const std::size_t cols = oracle_dim(f.source(), x);
    const std::ptrdiff_t c = oracle_cell(f.cell_grid(), x);
    if (c < 0)
        return Dense(rows, std::vector<std::uint64_t>(cols, 0));
    return to_dense(f.blocks()[c]);
}

/// Every point where any piece of the certificate can change, shifted by
/// 0, −ε and −2ε, plus midpoints and points beyond both ends.
inline std::vector<Rational> oracle_samples(const InterleavingCertificate& c)
{
    const Rational e = c.epsilon();
    std::set<Rational> breaks;
    for (const auto* grid : {&c.first().grid(), &c.second().grid(), &c.f.cell_grid(), &c.g.cell_grid()})
        for (const Rational& t : *grid)
            for (const Rational& s : {Rational(0), e, e + e})
                breaks.insert(t - s);
    if (breaks.empty())
        breaks.insert(0);
    std::vector<Rational> sorted(breaks.begin(), breaks.end());
    std::vector<Rational> out{sorted.front() - 1};
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        out.push_back(sorted[i]);
        if (i + 1 < sorted.size())
            out.push_back((sorted[i] + sorted[i + 1]) / 2);
    }
    out.push_back(sorted.back() + 1);
    return out;
}

inline bool oracle_natural(const ModuleMap& f, const std::vector<Rational>& samples)
{
    const std::uint64_t p = f.source().modulus();
    const Rational& e = f.shift();
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const Rational& x = samples[i];
        const Rational& y = samples[i + 1];
        if (f.source().kind() == IndexKind::nat && x.sign() < 0)
            continue;
        const std::size_t mx = oracle_dim(f.source(), x), my = oracle_dim(f.source(), y);
        const std::size_t nx = oracle_dim(f.target(), x + e), ny = oracle_dim(f.target(), y + e);
        const Dense lhs = dense_mul(oracle_structure(f.target(), x + e, y + e), oracle_component(f, x), ny, nx, mx, p);
        const Dense rhs = dense_mul(oracle_component(f, y), oracle_structure(f.source(), x, y), ny, my, mx, p);
        if (lhs != rhs)
            return false;
    }
    return true;
}

/// One composite condition h_{x+ε}k_x = A(x ≤ x+2ε) at x.
inline bool oracle_composite(const ModuleMap& k, const ModuleMap& h, const Rational& x)
{
    const std::uint64_t p = k.source().modulus();
    const Rational& e = k.shift();
    const TameModule& a = k.source();
    const std::size_t d0 = oracle_dim(a, x), d1 = oracle_dim(k.target(), x + e), d2 = oracle_dim(a, x + e + e);
    const Dense lhs = dense_mul(oracle_component(h, x + e), oracle_component(k, x), d2, d1, d0, p);
    Dense rhs = oracle_structure(a, x, x + e + e);
    if (d0 == 0)
        rhs.assign(d2, std::vector<std::uint64_t>());
    return lhs == rhs;
}

/// Decides a certificate by sampling, independently of the verifier.
inline bool oracle_certificate_valid(const InterleavingCertificate& c)
{
    const auto samples = oracle_samples(c);
    if (!oracle_natural(c.f, samples) || !oracle_natural(c.g, samples))
        return false;
    const bool nat = c.first().kind() == IndexKind::nat;
    std::vector<Rational> points;
    if (c.kind == InterleavingKind::strong) {
        points = samples;
    } else {
        for (Rational x = c.basepoint; x <= samples.back() + c.epsilon(); x += c.epsilon())
            points.push_back(x);
    }
    for (const Rational& x : points) {
        if (nat && x.sign() < 0)
            continue;
        if (!oracle_composite(c.f, c.g, x) || !oracle_composite(c.g, c.f, x))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Acceptance corpus

struct CorpusEntry {
    TameModule module;
    std::string origin;
};

/// 200 seeded real modules over 𝔽₂: alternately raw modules with random
/// matrices and interval sums, on grids with denominators 1, 2, 3 or 6.
/// Every fifth module starts below zero.
inline std::vector<CorpusEntry> real_corpus(std::size_t count = 200)
{
    std::vector<CorpusEntry> out;
    const std::uint64_t denominators[] = {1, 2, 3, 6};
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t seed = 1000 + i;
        const std::uint64_t den = denominators[i % 4];
        const bool negative = i % 5 == 4;
        if (i % 2 == 0) {
            gen::RawShape shape;
            shape.max_grid = 5;
            shape.max_dim = 3;
            shape.denominator = den;
            shape.min_point = negative ? -2 : 0;
            shape.max_point = 6;
            out.push_back({gen::random_raw_module(seed, shape), "raw seed " + std::to_string(seed)});
        } else {
            gen::BarcodeShape shape;
            shape.bars = 1 + i % 5;
            shape.max_endpoint = 6;
            shape.denominator = den;
            shape.offset = negative ? Rational(-1) : Rational(0);
            shape.allow_infinite = true;
            out.push_back({from_barcode(gen::random_barcode(seed, shape)), "bars seed " + std::to_string(seed)});
        }
    }
    return out;
}

inline std::vector<Rational> corpus_steps()
{
    return {q("1/3"), q("1/2"), q("1"), q("2")};
}

/// Smallest grid point with a nonzero cell, if any.
inline std::optional<Rational> first_support(const TameModule& m)
{
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.dims()[i] > 0)
            return m.grid()[i];
    return std::nullopt;
}

} // namespace pmod::testing
