#pragma once

#include <cstdint>
#include <random>

#include "pmod/module.hpp"

namespace pmod::gen {

/// Deterministic source of random test instances. Draws go through
/// std::mt19937_64 (fully specified by the standard) and our own bounded
/// sampling, so the same seed yields the same output on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n). n > 0.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    bool coin(std::uint64_t one_in) { return below(one_in) == 0; }

private:
    std::mt19937_64 engine_;
};

struct BarcodeShape {
    std::size_t bars = 4;
    std::uint64_t max_endpoint = 10;   ///< endpoints lie in [offset, offset + max_endpoint]
    std::uint64_t denominator = 1;     ///< endpoints are multiples of 1/denominator
    Rational offset = 0;
    IndexKind kind = IndexKind::real;
    bool allow_infinite = false;       ///< one bar in four never dies
};

struct RawShape {
    std::size_t max_grid = 5;
    std::size_t max_dim = 3;
    Residue modulus = 2;
    IndexKind kind = IndexKind::real;
    std::int64_t min_point = 0;        ///< grid points are k/denominator with k/denominator in [min, max]
    std::int64_t max_point = 8;
    std::uint64_t denominator = 1;
};

Barcode random_barcode(Rng& rng, const BarcodeShape& shape);
Barcode random_barcode(std::uint64_t seed, const BarcodeShape& shape);

/// Random dims and uniformly random matrices over 𝔽_p on a random grid of
/// 1..max_grid points.
TameModule random_raw_module(Rng& rng, const RawShape& shape);
TameModule random_raw_module(std::uint64_t seed, const RawShape& shape);

} // namespace pmod::gen
