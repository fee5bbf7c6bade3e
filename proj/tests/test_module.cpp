#include <doctest.h>

#include "pmod/error.hpp"
#include "pmod/gen.hpp"
#include "pmod/module.hpp"
#include "support.hpp"

using namespace pmod;
using namespace pmod::testing;

namespace {

/// grid {0,1,2,3}, dims [1,2,1,0], A₀ = [1;0], A₁ = [0 1], A₂ = 0×1.
TameModule two_bar_module()
{
    return TameModule(IndexKind::real, 2, {0, 1, 2, 3}, {1, 2, 1, 0},
                      {Matrix::from_rows(2, {{1}, {0}}), Matrix::from_rows(2, {{0, 1}}), Matrix(0, 1, 2)});
}

} // namespace

TEST_CASE("module validation")
{
    CHECK_THROWS_AS(TameModule(IndexKind::real, 4, {0}, {1}, {}), ValidationError);
    CHECK_THROWS_AS(TameModule(IndexKind::real, 2, {1, 0}, {1, 1}, {Matrix::identity(1, 2)}), ValidationError);
    CHECK_THROWS_AS(TameModule(IndexKind::real, 2, {0, 1}, {1, 2}, {Matrix::identity(1, 2)}), ValidationError);
    CHECK_THROWS_AS(TameModule(IndexKind::real, 2, {0, 1}, {1}, {}), ValidationError);
    CHECK_THROWS_AS(TameModule(IndexKind::nat, 2, {q("1/2")}, {1}, {}), ValidationError);
    CHECK_THROWS_AS(TameModule(IndexKind::nat, 2, {-1}, {1}, {}), ValidationError);
    CHECK_NOTHROW(two_bar_module());
}

TEST_CASE("evaluation of an interval module")
{
    const TameModule m = interval("1/2", "5/2");
    CHECK(dim_at(m, 1) == 1);
    CHECK(dim_at(m, -3) == 0);
    CHECK(dim_at(m, q("5/2")) == 0);
    CHECK(dim_at(m, q("1/2")) == 1);
    CHECK(eval(m, -3).cell == -1);
    CHECK_THROWS_AS(eval(nat_interval(0, 2), q("1/2")), ParameterError);
}

TEST_CASE("structure maps")
{
    const TameModule m = two_bar_module();
    for (const char* x : {"-1", "0", "3/2", "7"})
        CHECK(structure_map(m, q(x), q(x)).is_identity());
    const Matrix out = structure_map(interval("0", "2"), 0, 3);
    CHECK(out.rows() == 0);
    CHECK(out.cols() == 1);
    CHECK(structure_map(m, 0, 2) == Matrix::from_rows(2, {{0}}));
    CHECK(structure_map(m, 0, 1) == Matrix::from_rows(2, {{1}, {0}}));
    CHECK_THROWS_AS(structure_map(m, 2, 1), OrderError);
}

TEST_CASE("structure maps compose")
{
    gen::Rng rng(5);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        gen::RawShape shape;
        shape.denominator = 2;
        const TameModule m = gen::random_raw_module(seed, shape);
        for (int i = 0; i < 10; ++i) {
            Rational a(rng.between(-2, 18), 2), b(rng.between(-2, 18), 2), c(rng.between(-2, 18), 2);
            if (b < a)
                std::swap(a, b);
            if (c < b)
                std::swap(b, c);
            if (b < a)
                std::swap(a, b);
            CHECK(structure_map(m, a, c) == structure_map(m, b, c) * structure_map(m, a, b));
        }
    }
}

TEST_CASE("translation")
{
    const TameModule m = interval("1/2", "5/2");
    CHECK(translate(m, 0) == m);
    CHECK(translate(m, 1) == interval("-1/2", "3/2"));
    gen::Rng rng(17);
    const TameModule raw = gen::random_raw_module(4, gen::RawShape{});
    for (int i = 0; i < 100; ++i) {
        const Rational p(rng.between(-20, 20), 3), x(rng.between(-30, 30), 4);
        CHECK(dim_at(translate(raw, p), x) == dim_at(raw, p + x));
        CHECK(structure_map(translate(raw, p), x, x + 1) == structure_map(raw, p + x, p + x + 1));
    }
    CHECK(translate(nat_interval(3, 6), 2) == canonicalize(nat_interval(1, 4)));
    CHECK_THROWS_AS(translate(nat_interval(3, 6), q("1/2")), ParameterError);
    CHECK_THROWS_AS(translate(nat_interval(3, 6), -1), ParameterError);
}

TEST_CASE("pixelization")
{
    CHECK(pixelize(interval("1/2", "5/2"), 0, 1) == interval("1", "3"));
    gen::Rng rng(23);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        gen::RawShape shape;
        shape.denominator = 3;
        const TameModule m = gen::random_raw_module(seed, shape);
        const Rational x0(rng.between(-3, 3), 2), step(rng.between(1, 4), 2);
        const TameModule p = pixelize(m, x0, step);
        CHECK(pixelize(p, x0, step) == p);
        for (int i = 0; i < 10; ++i) {
            const Rational x(rng.between(-12, 60), 6);
            const Rational cell = x0 + Rational(floor_div(x - x0, step)) * step;
            CHECK(dim_at(p, x) == dim_at(m, cell));
        }
    }
    const TameModule lattice = interval("1", "3");
    CHECK(pixelize(lattice, 0, 1) == lattice);
    CHECK_THROWS_AS(pixelize(lattice, 0, 0), ParameterError);
    CHECK_THROWS_AS(pixelize(nat_interval(0, 2), 0, 1), UsageError);
}

TEST_CASE("barcode to module")
{
    CHECK(from_barcode(Barcode(IndexKind::real)).is_zero());
    const TameModule single = interval("0", "2");
    CHECK(single.grid() == std::vector<Rational>{0, 2});
    CHECK(single.dims() == std::vector<std::size_t>{1, 0});
    const TameModule two = from_barcode(Barcode(IndexKind::real, {{0, ExtRational(2), 1}, {1, ExtRational(3), 1}}));
    CHECK(two == two_bar_module());
}

TEST_CASE("decomposition examples")
{
    CHECK(decompose(TameModule::zero(IndexKind::real, 2)).empty());
    CHECK(decompose(two_bar_module()) == Barcode(IndexKind::real, {{0, ExtRational(2), 1}, {1, ExtRational(3), 1}}));
    CHECK(decompose(two_bar_module()) == barcode_from_ranks(two_bar_module()));
}

TEST_CASE("barcode roundtrip through modules")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        gen::BarcodeShape shape;
        shape.bars = seed % 7;
        shape.denominator = 1 + seed % 3;
        shape.offset = seed % 2 == 0 ? Rational(0) : q("-3/2");
        shape.allow_infinite = true;
        const Barcode bc = gen::random_barcode(seed, shape);
        const TameModule m = from_barcode(bc);
        CHECK(decompose(m) == bc);
        CHECK(canonicalize(m) == m);
    }
}

TEST_CASE("decomposition over larger fields matches the rank table oracle")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        gen::RawShape shape;
        shape.modulus = seed % 2 == 0 ? 3 : 5;
        shape.max_dim = 2;
        const TameModule m = gen::random_raw_module(seed, shape);
        CHECK(decompose(m) == barcode_from_ranks(m));
    }
}

TEST_CASE("rank tables")
{
    const RankTable t = rank_table(interval("0", "2"));
    CHECK(t(0, 1) == 0);
    CHECK(t(0, 0) == 1);
    const TameModule constant(IndexKind::real, 3, {0, 1, 2}, {2, 2, 2}, {Matrix::identity(2, 3), Matrix::identity(2, 3)});
    const RankTable c = rank_table(constant);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j)
            CHECK(c(i, j) == 2);
    CHECK(rank_table(two_bar_module())(0, 2) == 0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const TameModule m = gen::random_raw_module(seed, gen::RawShape{});
        const auto oracle = oracle_rank_table(m);
        const RankTable r = rank_table(m);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i; j < m.size(); ++j)
                CHECK(r(i, j) == oracle[i][j]);
    }
}

TEST_CASE("lower stability")
{
    CHECK(is_lower_stable(interval("0", "3"), 0));
    CHECK(is_lower_stable(interval("1/2", "3"), 0));
    CHECK_FALSE(is_lower_stable(interval("-1", "5"), 0));
    CHECK(is_lower_stable(interval("-1", "5"), -1));
    CHECK(is_lower_stable(TameModule::zero(IndexKind::real, 2), 17));
}

TEST_CASE("canonical form")
{
    const TameModule m = two_bar_module();
    CHECK(canonicalize(m) == m);
    const TameModule padded(IndexKind::real, 2, {0, 1, 2}, {2, 2, 0},
                            {Matrix::identity(2, 2), Matrix(0, 2, 2)});
    const TameModule expected(IndexKind::real, 2, {0, 2}, {2, 0}, {Matrix(0, 2, 2)});
    CHECK(canonicalize(padded) == expected);
    const TameModule leading(IndexKind::real, 2, {-1, 0, 2}, {0, 1, 0}, {Matrix(1, 0, 2), Matrix(0, 1, 2)});
    CHECK(canonicalize(leading) == interval("0", "2"));
    CHECK(isomorphic(padded, expected));
    CHECK_FALSE(isomorphic(padded, m));
}

TEST_CASE("isomorphism ignores the choice of basis")
{
    const TameModule a(IndexKind::real, 2, {0, 1}, {2, 1}, {Matrix::from_rows(2, {{1, 0}})});
    const TameModule b(IndexKind::real, 2, {0, 1}, {2, 1}, {Matrix::from_rows(2, {{1, 1}})});
    CHECK(a != b);
    CHECK(isomorphic(a, b));
}

TEST_CASE("barcode validation and merging")
{
    const Barcode bc(IndexKind::real, {{1, ExtRational(2), 1}, {0, ExtRational(3), 1}, {1, ExtRational(2), 2}});
    REQUIRE(bc.bars().size() == 2);
    CHECK(bc.bars()[0].birth == 0);
    CHECK(bc.bars()[1].multiplicity == 3);
    CHECK(bc.total_multiplicity() == 4);
    CHECK(bc.count_at(q("3/2")) == 4);
    CHECK_THROWS_AS(Barcode(IndexKind::real, {{2, ExtRational(2), 1}}), ValidationError);
    CHECK_THROWS_AS(Barcode(IndexKind::nat, {{q("1/2"), ExtRational(2), 1}}), ValidationError);
}
