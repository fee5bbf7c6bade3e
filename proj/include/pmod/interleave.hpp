#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmod/module.hpp"

namespace pmod {

/// An ε-shifted morphism f : M → T_εN, stored as one block per cell.
///
/// Component convention: f_x : M(x) → N(x+ε). The map is piecewise constant
/// on [s_k, s_{k+1}); below s₀ the source is zero and f_x is the map out of
/// the zero space. The cell grid must refine both the source grid and the
/// target grid shifted by −ε.
class ModuleMap {
public:
    ModuleMap(TameModule source, TameModule target, Rational shift, std::vector<Rational> cell_grid,
              std::vector<Matrix> blocks);

    /// Samples `component` at the left end of every cell of the coarsest
    /// admissible grid. The result is only meaningful when `component` is
    /// natural; check_natural decides that.
    static ModuleMap tabulate(TameModule source, TameModule target, Rational shift,
                              const std::function<Matrix(const Rational&)>& component);

    /// All-zero map on the coarsest admissible grid.
    static ModuleMap zero(TameModule source, TameModule target, Rational shift);

    const TameModule& source() const { return source_; }
    const TameModule& target() const { return target_; }
    const Rational& shift() const { return shift_; }
    const std::vector<Rational>& cell_grid() const { return cell_grid_; }
    const std::vector<Matrix>& blocks() const { return blocks_; }

    /// Copy with block k replaced (shape must match).
    ModuleMap with_block(std::size_t k, Matrix block) const;

    friend bool operator==(const ModuleMap&, const ModuleMap&) = default;

private:
    TameModule source_;
    TameModule target_;
    Rational shift_;
    std::vector<Rational> cell_grid_;
    std::vector<Matrix> blocks_;
};

/// The coarsest cell grid for a map source → T_shift target.
std::vector<Rational> admissible_cell_grid(const TameModule& source, const TameModule& target, const Rational& shift);

/// f_x.
Matrix map_at(const ModuleMap& f, const Rational& x);

/// g ∘ f : x ↦ g_{x+ε₁} f_x, a (ε₁+ε₂)-shifted map.
ModuleMap compose_maps(const ModuleMap& f, const ModuleMap& g);

enum class InterleavingKind { strong, weak };

struct InterleavingCertificate {
    ModuleMap f; ///< M → T_ε N
    ModuleMap g; ///< N → T_ε M
    InterleavingKind kind = InterleavingKind::strong;
    Rational basepoint; ///< x0, weak certificates only

    /// Throws ValidationError unless f and g share ε and connect the same pair.
    void validate() const;

    const Rational& epsilon() const { return f.shift(); }
    const TameModule& first() const { return f.source(); }
    const TameModule& second() const { return f.target(); }
};

InterleavingCertificate make_strong(ModuleMap f, ModuleMap g);
InterleavingCertificate make_weak(ModuleMap f, ModuleMap g, Rational basepoint);

/// (N, g) ↔ (M, f).
InterleavingCertificate swapped(const InterleavingCertificate& c);

/// Same maps, relabelled as weak with the given basepoint.
InterleavingCertificate as_weak(const InterleavingCertificate& c, const Rational& basepoint);

/// Same maps, relabelled as strong.
InterleavingCertificate as_strong(const InterleavingCertificate& c);

/// Composite certificate for (M, L) from (M, N) at ε₁ and (N, L) at ε₂.
InterleavingCertificate compose_certificates(const InterleavingCertificate& mn, const InterleavingCertificate& nl);

struct Witness {
    std::string condition; ///< e.g. "naturality f", "gf", "fg"
    Rational point;
    Matrix lhs;
    Matrix rhs;
};

struct Verdict {
    bool accepted = true;
    std::optional<Witness> witness;

    static Verdict accept() { return {}; }
    static Verdict reject(Witness w) { return {false, std::move(w)}; }
    explicit operator bool() const { return accepted; }
};

/// Every consecutive-cell naturality square commutes.
Verdict check_natural(const ModuleMap& f);

/// g_{x+ε}f_x = M(x ≤ x+2ε) and f_{x+ε}g_x = N(x ≤ x+2ε) for all x.
/// UsageError on a weak certificate.
Verdict verify_strong(const InterleavingCertificate& c);

/// Natural everywhere, composite conditions at x0 + kε for k ∈ ℕ.
/// UsageError on a strong certificate, ParameterError if ε = 0.
Verdict verify_weak(const InterleavingCertificate& c);

/// Dispatches on c.kind.
Verdict verify(const InterleavingCertificate& c);

/// M against T_εM: f_x = M(x ≤ x+2ε), g_x = identity on M(x+ε).
InterleavingCertificate canonical_shift_interleaving(const TameModule& m, const Rational& step);

/// M against P_{x0,ε}M, weak with basepoint x0. StabilityError unless M is
/// lower stable at x0.
InterleavingCertificate canonical_pixel_interleaving(const TameModule& m, const Rational& x0, const Rational& step);

/// Weak ε with basepoint x0 → strong 2ε through the lattice point
/// x0 + ⌈(x−x0)/ε⌉ε. PreconditionError if the input is not weak-accepted.
InterleavingCertificate promote_weak_to_strong(const InterleavingCertificate& c);

/// M against 𝒢ℱM at shift 2ε, weak with basepoint 0.
InterleavingCertificate canonical_gf_interleaving(const TameModule& m, const Rational& step);

/// N against ℱ𝒢N at shift 2 (ℕ units, independent of ε), strong.
InterleavingCertificate canonical_fg_interleaving(const TameModule& n, const Rational& step);

/// Exact bottleneck distance; +∞ when the infinite bars cannot be paired.
ExtRational bottleneck_distance(const Barcode& a, const Barcode& b);

inline constexpr std::uint64_t default_search_budget = std::uint64_t(1) << 24;

/// Exhaustive search for a strong ε-interleaving over 𝔽₂. Natural maps are
/// enumerated cell by cell (each block over all 2^(rows·cols) matrices,
/// pruned by the naturality square with the previous cell); every pair of
/// natural maps is then checked. ResourceError once the number of block
/// candidates plus map pairs examined exceeds `budget`.
bool brute_force_interleaving_exists(const TameModule& m, const TameModule& n, const Rational& step,
                                     std::uint64_t budget = default_search_budget);

struct ReportEntry {
    std::string name;
    std::optional<Verdict> verdict; ///< empty when skipped
    std::string note;
    bool informational = false;
};

struct ReportDiagnostic {
    std::string name;
    ExtRational value;
    Rational bound;
    bool within() const { return value <= ExtRational(bound); }
};

struct EquivalenceReport {
    IndexKind input_kind = IndexKind::real;
    Rational epsilon;
    std::vector<ReportEntry> entries;
    std::vector<ReportDiagnostic> diagnostics;

    /// Every non-informational verdict that ran was accepted and no
    /// required verdict was skipped.
    bool all_accepted() const;
};

/// Runs the 𝒢ℱ and ℱ𝒢 constructions, verifies them, promotes both to
/// strong interleavings and collects bottleneck diagnostics.
EquivalenceReport equivalence_report(const TameModule& module, const Rational& step);

} // namespace pmod
