#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmod/module.hpp"

namespace pmod {

// Functors between real modules, natural modules and graded k[t]-modules.
//
//   discretize  ℱM(n) = M((n+1)ε)           real → nat
//   realify     𝒢N(x) = N(⌊x/ε⌋+1)          nat → real, N(k) = 0 for k < 0
//   compose_gf  𝒢ℱ,  compose_fg  ℱ𝒢 (= N(n+2))
//   nat_to_graded / graded_to_nat           nat ⇄ graded presentation

using Degree = std::uint64_t;

/// Σ_i c_i · t^{degree − e_i} g_i = 0.
struct Relation {
    Degree degree = 0;
    std::vector<Residue> coefficients;

    friend bool operator==(const Relation&, const Relation&) = default;
};

/// Homogeneous presentation of a graded 𝔽_p[t]-module: the cokernel of the
/// relation map into the free module on the generators.
class GradedPresentation {
public:
    GradedPresentation(Residue modulus, std::vector<Degree> generator_degrees, std::vector<Relation> relations);

    Residue modulus() const { return modulus_; }
    const std::vector<Degree>& generator_degrees() const { return generator_degrees_; }
    const std::vector<Relation>& relations() const { return relations_; }

    /// Largest generator or relation degree; 0 for the empty presentation.
    Degree max_degree() const;

    friend bool operator==(const GradedPresentation&, const GradedPresentation&) = default;

private:
    Residue modulus_;
    std::vector<Degree> generator_degrees_;
    std::vector<Relation> relations_;
};

/// ℱM. Requires step > 0 and M lower stable at 0 (StabilityError otherwise).
TameModule discretize(const TameModule& m, const Rational& step);

/// 𝒢N. The result is lower stable at −step.
TameModule realify(const TameModule& n, const Rational& step);

/// realify(discretize(M, ε), ε).
TameModule compose_gf(const TameModule& m, const Rational& step);

/// discretize(realify(N, ε), ε); canonically the 2-shift of N.
TameModule compose_fg(const TameModule& n, const Rational& step);

/// Minimal presentation read off the barcode: one generator of degree b per
/// bar [b, d) and, for finite d, the relation t^{d−b}·g = 0.
GradedPresentation nat_to_graded(const TameModule& n);

/// Degree-wise cokernels up to `horizon` (default max_degree() + 1); the
/// module is constant beyond it. ParameterError if horizon < max_degree().
TameModule graded_to_nat(const GradedPresentation& pres, std::optional<Degree> horizon = std::nullopt);

/// dim of the degree-n component: #{generators of degree ≤ n} − rank of the
/// relations of degree ≤ n, computed without building a module.
std::size_t degree_dimension(const GradedPresentation& pres, Degree n);

/// rank of t· : degree n → degree n+1.
std::size_t t_action_rank(const GradedPresentation& pres, Degree n);

} // namespace pmod
