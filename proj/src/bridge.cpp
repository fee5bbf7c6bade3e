#include "pmod/bridge.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "pmod/error.hpp"

namespace pmod {

GradedPresentation::GradedPresentation(Residue modulus, std::vector<Degree> generator_degrees,
                                       std::vector<Relation> relations)
    : modulus_(modulus), generator_degrees_(std::move(generator_degrees)), relations_(std::move(relations))
{
    require_prime_modulus(modulus_);
    for (std::size_t j = 0; j < relations_.size(); ++j) {
        const Relation& rel = relations_[j];
        if (rel.coefficients.size() != generator_degrees_.size())
            throw ValidationError("relation " + std::to_string(j) + " has " + std::to_string(rel.coefficients.size()) +
                                  " coefficients for " + std::to_string(generator_degrees_.size()) + " generators");
        for (std::size_t i = 0; i < rel.coefficients.size(); ++i) {
            if (rel.coefficients[i] >= modulus_)
                throw ValidationError("relation " + std::to_string(j) + " coefficient out of range");
            if (rel.coefficients[i] != 0 && generator_degrees_[i] > rel.degree)
                throw ValidationError("relation " + std::to_string(j) + " of degree " + std::to_string(rel.degree) +
                                      " is not homogeneous: generator " + std::to_string(i) + " has degree " +
                                      std::to_string(generator_degrees_[i]));
        }
    }
}

Degree GradedPresentation::max_degree() const
{
    Degree d = 0;
    for (const Degree e : generator_degrees_)
        d = std::max(d, e);
    for (const auto& r : relations_)
        d = std::max(d, r.degree);
    return d;
}

namespace {

void require_step(const Rational& step)
{
    if (step.sign() <= 0)
        throw ParameterError("epsilon must be positive, got " + step.str());
}

// ℱ without the lower-stability gate; ℱ only reads M at (n+1)ε ≥ ε.
TameModule discretize_unchecked(const TameModule& m, const Rational& step)
{
    std::set<Rational> points;
    for (const auto& t : m.grid())
        points.insert(Rational(std::max(Integer(0), Integer(ceil_div(t, step) - 1))));
    const auto sample = [&](const Rational& n) { return (n + 1) * step; };
    return canonicalize(pullback(m, IndexKind::nat, {points.begin(), points.end()}, sample));
}

// Relations of degree ≤ n, reduced, in generator coordinates.
RowEchelon relations_up_to(const GradedPresentation& pres, Degree n)
{
    RowEchelon echelon(pres.generator_degrees().size(), pres.modulus());
    for (const auto& rel : pres.relations())
        if (rel.degree <= n)
            echelon.insert(rel.coefficients);
    return echelon;
}

} // namespace

TameModule discretize(const TameModule& m, const Rational& step)
{
    require_step(step);
    if (m.kind() != IndexKind::real)
        throw UsageError("discretize applies to real modules");
    if (!is_lower_stable(m, 0))
        throw StabilityError("module is not lower stable at 0");
    return discretize_unchecked(m, step);
}

TameModule realify(const TameModule& n, const Rational& step)
{
    require_step(step);
    if (n.kind() != IndexKind::nat)
        throw UsageError("realify applies to natural modules");
    std::vector<Rational> points;
    for (const auto& t : n.grid())
        points.push_back((t - 1) * step);
    const auto index = [&](const Rational& x) { return Rational(floor_div(x, step) + 1); };
    return canonicalize(pullback(n, IndexKind::real, points, index));
}

TameModule compose_gf(const TameModule& m, const Rational& step)
{
    return realify(discretize(m, step), step);
}

TameModule compose_fg(const TameModule& n, const Rational& step)
{
    return discretize_unchecked(realify(n, step), step);
}

GradedPresentation nat_to_graded(const TameModule& n)
{
    if (n.kind() != IndexKind::nat)
        throw UsageError("graded presentations exist for natural modules only");
    const Barcode bc = decompose(n);
    std::vector<Degree> gens;
    std::vector<const Bar*> owner;
    for (const auto& bar : bc.bars())
        for (std::size_t k = 0; k < bar.multiplicity; ++k) {
            gens.push_back(to_index(bar.birth));
            owner.push_back(&bar);
        }
    std::vector<Relation> rels;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (owner[i]->death.is_infinite())
            continue;
        Relation rel{to_index(owner[i]->death.value()), std::vector<Residue>(gens.size(), 0)};
        rel.coefficients[i] = 1;
        rels.push_back(std::move(rel));
    }
    return GradedPresentation(n.modulus(), std::move(gens), std::move(rels));
}

TameModule graded_to_nat(const GradedPresentation& pres, std::optional<Degree> horizon)
{
    const Degree top = pres.max_degree();
    const Degree h = horizon.value_or(top + 1);
    if (h < top)
        throw ParameterError("horizon " + std::to_string(h) + " is below the maximal degree " + std::to_string(top));

    const Residue p = pres.modulus();
    const auto& gens = pres.generator_degrees();

    // Degree-n basis: generators present at degree n that are not pivots of
    // the relation echelon. Coordinates are read after reducing mod R_n.
    const auto basis_at = [&](Degree n, const RowEchelon& rel) {
        std::vector<std::size_t> basis;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i] <= n && !rel.is_pivot(i))
                basis.push_back(i);
        return basis;
    };

    std::vector<Rational> grid;
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
    RowEchelon rel = relations_up_to(pres, 0);
    std::vector<std::size_t> basis = basis_at(0, rel);
    for (Degree n = 0; n <= h; ++n) {
        grid.emplace_back(static_cast<long>(n));
        dims.push_back(basis.size());
        if (n == h)
            break;
        RowEchelon next_rel = relations_up_to(pres, n + 1);
        std::vector<std::size_t> next_basis = basis_at(n + 1, next_rel);
        Matrix t(next_basis.size(), basis.size(), p);
        for (std::size_t c = 0; c < basis.size(); ++c) {
            std::vector<Residue> v(gens.size(), 0);
            v[basis[c]] = 1;
            next_rel.reduce(v);
            for (std::size_t r = 0; r < next_basis.size(); ++r)
                t.set(r, c, v[next_basis[r]]);
        }
        maps.push_back(std::move(t));
        rel = std::move(next_rel);
        basis = std::move(next_basis);
    }
    return canonicalize(TameModule(IndexKind::nat, p, std::move(grid), std::move(dims), std::move(maps)));
}

std::size_t degree_dimension(const GradedPresentation& pres, Degree n)
{
    const auto present = static_cast<std::size_t>(
        std::count_if(pres.generator_degrees().begin(), pres.generator_degrees().end(), [&](Degree e) { return e <= n; }));
    return present - relations_up_to(pres, n).size();
}

std::size_t t_action_rank(const GradedPresentation& pres, Degree n)
{
    // dim(F_n + R_{n+1}) − dim R_{n+1}, with F_n sitting inside F_{n+1}.
    RowEchelon both = relations_up_to(pres, n + 1);
    const std::size_t relations = both.size();
    const auto& gens = pres.generator_degrees();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i] <= n) {
            std::vector<Residue> e(gens.size(), 0);
            e[i] = 1;
            both.insert(std::move(e));
        }
    return both.size() - relations;
}

} // namespace pmod
