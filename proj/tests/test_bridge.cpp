#include <doctest.h>

#include "pmod/bridge.hpp"
#include "pmod/error.hpp"
#include "pmod/gen.hpp"
#include "support.hpp"

using namespace pmod;
using namespace pmod::testing;

TEST_CASE("discretize examples")
{
    CHECK(discretize(interval("1/2", "5/2"), 1) == nat_interval(0, 2));
    CHECK(discretize(interval("1/2", "5/2"), q("1/2")) == nat_interval(0, 4));
    CHECK(discretize(TameModule::zero(IndexKind::real, 2), 1).is_zero());
    CHECK_THROWS_AS(discretize(interval("-1", "5"), 1), StabilityError);
    CHECK_THROWS_AS(discretize(interval("0", "5"), 0), ParameterError);
    CHECK_THROWS_AS(discretize(nat_interval(0, 5), 1), UsageError);
}

TEST_CASE("discretize samples at (n+1) eps")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        gen::RawShape shape;
        shape.denominator = 3;
        const TameModule m = gen::random_raw_module(seed, shape);
        for (const Rational& step : corpus_steps()) {
            const TameModule n = discretize(m, step);
            for (long k = 0; k < 30; ++k) {
                CHECK(dim_at(n, k) == dim_at(m, Rational(k + 1) * step));
                CHECK(rank(structure_map(n, k, k + 1)) == rank(structure_map(m, Rational(k + 1) * step, Rational(k + 2) * step)));
            }
        }
    }
}

TEST_CASE("realify examples")
{
    CHECK(realify(nat_interval(0, 2), 1) == interval("-1", "1"));
    CHECK(realify(nat_interval(0, 2), q("1/2")) == interval("-1/2", "1/2"));
    CHECK(realify(TameModule::zero(IndexKind::nat, 2), 1).is_zero());
    CHECK_THROWS_AS(realify(interval("0", "1"), 1), UsageError);
    CHECK(is_lower_stable(realify(nat_interval(0, 2), 1), -1));
}

TEST_CASE("composite gf")
{
    CHECK(compose_gf(interval("1/2", "5/2"), 1) == interval("-1", "1"));
    CHECK(compose_gf(TameModule::zero(IndexKind::real, 2), 1).is_zero());
    gen::Rng rng(31);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        gen::RawShape shape;
        shape.denominator = 2;
        const TameModule m = gen::random_raw_module(seed, shape);
        for (const Rational& step : corpus_steps()) {
            const TameModule gf = compose_gf(m, step);
            for (int i = 0; i < 10; ++i) {
                const long n = static_cast<long>(rng.between(0, 20));
                CHECK(dim_at(gf, Rational(n) * step) == dim_at(m, Rational(n + 2) * step));
                // The direct formula covers every y with ⌊y/ε⌋ ≥ −1.
                const Rational y = Rational(rng.between(-6, 60), 6);
                if (floor_div(y, step) >= -1)
                    CHECK(dim_at(gf, y) == gf_dim_oracle(m, step, y));
            }
        }
    }
}

TEST_CASE("composite fg is the 2-shift")
{
    CHECK(compose_fg(nat_interval(3, 6), 1) == nat_interval(1, 4));
    CHECK(compose_fg(nat_interval(0, 2), 1).is_zero());
    gen::Rng rng(2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        gen::RawShape shape;
        shape.kind = IndexKind::nat;
        shape.max_point = 10;
        const TameModule n = gen::random_raw_module(seed, shape);
        const Rational step(rng.between(1, 9), rng.between(1, 4));
        CHECK(compose_fg(n, step) == compose_fg(n, 1));
        CHECK(compose_fg(n, step) == canonicalize(translate(n, 2)));
    }
}

TEST_CASE("natural module to graded presentation")
{
    const GradedPresentation p = nat_to_graded(nat_interval(2, 5));
    CHECK(p.generator_degrees() == std::vector<Degree>{2});
    REQUIRE(p.relations().size() == 1);
    CHECK(p.relations()[0].degree == 5);
    CHECK(p.relations()[0].coefficients == std::vector<Residue>{1});
    const std::size_t expected[] = {0, 0, 1, 1, 1, 0, 0};
    for (Degree n = 0; n <= 6; ++n)
        CHECK(degree_dimension(p, n) == expected[n]);

    const GradedPresentation free = nat_to_graded(from_barcode(Barcode(IndexKind::nat, {{0, ExtRational::infinity(), 1}})));
    CHECK(free.generator_degrees() == std::vector<Degree>{0});
    CHECK(free.relations().empty());

    const GradedPresentation empty = nat_to_graded(TameModule::zero(IndexKind::nat, 2));
    CHECK(empty.generator_degrees().empty());
    CHECK(empty.relations().empty());
    CHECK_THROWS_AS(nat_to_graded(interval("0", "1")), UsageError);
}

TEST_CASE("graded presentation to natural module")
{
    const GradedPresentation p(2, {2}, {{5, {1}}});
    CHECK(graded_to_nat(p) == nat_interval(2, 5));
    CHECK(graded_to_nat(GradedPresentation(2, {}, {})).is_zero());
    CHECK_THROWS_AS(graded_to_nat(p, 3), ParameterError);
    CHECK(canonicalize(graded_to_nat(p, 9)) == nat_interval(2, 5));
}

TEST_CASE("presentation validation")
{
    CHECK_THROWS_AS(GradedPresentation(2, {2}, {{1, {1}}}), ValidationError);
    CHECK_THROWS_AS(GradedPresentation(2, {2}, {{3, {1, 0}}}), ValidationError);
    CHECK_THROWS_AS(GradedPresentation(3, {2}, {{3, {3}}}), ValidationError);
}

TEST_CASE("graded roundtrip for interval sums")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        gen::BarcodeShape shape;
        shape.kind = IndexKind::nat;
        shape.bars = 1 + seed % 8;
        shape.max_endpoint = 20;
        shape.allow_infinite = true;
        const TameModule n = from_barcode(gen::random_barcode(seed, shape));
        CHECK(canonicalize(graded_to_nat(nat_to_graded(n))) == canonicalize(n));
    }
}

TEST_CASE("graded roundtrip for raw natural modules up to isomorphism")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        gen::RawShape shape;
        shape.kind = IndexKind::nat;
        shape.modulus = seed % 2 == 0 ? 2 : 3;
        shape.max_point = 12;
        const TameModule n = gen::random_raw_module(seed, shape);
        CHECK(isomorphic(graded_to_nat(nat_to_graded(n)), n));
    }
}

TEST_CASE("t-action ranks match the module structure maps")
{
    gen::Rng rng(13);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<Degree> gens(1 + rng.below(4));
        for (auto& e : gens)
            e = rng.below(6);
        std::vector<Relation> rels(rng.below(4));
        for (auto& rel : rels) {
            rel.degree = rng.below(9);
            rel.coefficients.assign(gens.size(), 0);
            for (std::size_t g = 0; g < gens.size(); ++g)
                if (gens[g] <= rel.degree)
                    rel.coefficients[g] = static_cast<Residue>(rng.below(3));
        }
        const GradedPresentation pres(3, gens, rels);
        const TameModule n = graded_to_nat(pres);
        for (Degree d = 0; d <= pres.max_degree() + 2; ++d) {
            const Rational x(static_cast<long>(d));
            CHECK(degree_dimension(pres, d) == dim_at(n, x));
            CHECK(t_action_rank(pres, d) == rank(structure_map(n, x, x + 1)));
        }
    }
}
