#include "pmod/gen.hpp"

#include <set>

#include "pmod/error.hpp"

namespace pmod::gen {

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0)
        throw ParameterError("empty sampling range");
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = 0;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo)
        throw ParameterError("empty sampling range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Barcode random_barcode(Rng& rng, const BarcodeShape& shape)
{
    if (shape.denominator == 0)
        throw ParameterError("denominator must be positive");
    if (shape.kind == IndexKind::nat && (shape.denominator != 1 || !shape.offset.is_integer() || shape.offset.sign() < 0))
        throw ParameterError("natural barcodes need integer endpoints");
    const auto steps = static_cast<std::int64_t>(shape.max_endpoint * shape.denominator);
    if (shape.bars > 0 && steps < 1)
        throw ParameterError("max endpoint leaves no room for a bar");
    const auto at = [&](std::int64_t k) {
        return shape.offset + Rational(Integer(static_cast<long>(k)), Integer(static_cast<unsigned long>(shape.denominator)));
    };
    std::vector<Bar> bars;
    for (std::size_t i = 0; i < shape.bars; ++i) {
        const std::int64_t b = rng.between(0, steps - 1);
        const std::int64_t d = rng.between(b + 1, steps);
        const bool forever = shape.allow_infinite && rng.coin(4);
        bars.push_back({at(b), forever ? ExtRational::infinity() : ExtRational(at(d)), 1});
    }
    return Barcode(shape.kind, std::move(bars));
}

Barcode random_barcode(std::uint64_t seed, const BarcodeShape& shape)
{
    Rng rng(seed);
    return random_barcode(rng, shape);
}

TameModule random_raw_module(Rng& rng, const RawShape& shape)
{
    if (shape.max_grid == 0 || shape.denominator == 0 || shape.max_point < shape.min_point)
        throw ParameterError("degenerate raw module shape");
    require_prime_modulus(shape.modulus);
    const std::int64_t lo = shape.kind == IndexKind::nat ? std::max<std::int64_t>(0, shape.min_point) : shape.min_point;
    const std::uint64_t den = shape.kind == IndexKind::nat ? 1 : shape.denominator;
    const std::int64_t klo = lo * static_cast<std::int64_t>(den);
    const std::int64_t khi = shape.max_point * static_cast<std::int64_t>(den);
    const std::size_t available = static_cast<std::size_t>(khi - klo + 1);
    const std::size_t m = 1 + rng.below(std::min(shape.max_grid, available));

    std::set<std::int64_t> ks;
    while (ks.size() < m)
        ks.insert(rng.between(klo, khi));
    std::vector<Rational> grid;
    for (const auto k : ks)
        grid.emplace_back(Integer(static_cast<long>(k)), Integer(static_cast<unsigned long>(den)));

    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < m; ++i)
        dims.push_back(rng.below(shape.max_dim + 1));
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        Matrix a(dims[i + 1], dims[i], shape.modulus);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                a.set(r, c, static_cast<Residue>(rng.below(shape.modulus)));
        maps.push_back(std::move(a));
    }
    return TameModule(shape.kind, shape.modulus, std::move(grid), std::move(dims), std::move(maps));
}

TameModule random_raw_module(std::uint64_t seed, const RawShape& shape)
{
    Rng rng(seed);
    return random_raw_module(rng, shape);
}

} // namespace pmod::gen
