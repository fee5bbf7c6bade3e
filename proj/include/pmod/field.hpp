#pragma once

#include <cstdint>
#include <ostream>

namespace pmod {

using Residue = std::uint32_t;

/// Largest modulus accepted anywhere. Products of two residues fit in 64 bits.
inline constexpr Residue max_modulus = 2147483647u;

bool is_prime(std::uint64_t n);

/// Throws ValidationError unless p is a prime ≤ max_modulus.
void require_prime_modulus(std::uint64_t p);

inline Residue add_mod(Residue a, Residue b, Residue p)
{
    const std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Residue>(s >= p ? s - p : s);
}

inline Residue sub_mod(Residue a, Residue b, Residue p)
{
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t(a) + p - b);
}

inline Residue mul_mod(Residue a, Residue b, Residue p)
{
    return static_cast<Residue>(std::uint64_t(a) * b % p);
}

inline Residue neg_mod(Residue a, Residue p)
{
    return a == 0 ? 0 : p - a;
}

/// Inverse of a nonzero residue modulo the prime p (extended Euclid).
Residue inv_mod(Residue a, Residue p);

/// Reduces an arbitrary signed integer into [0, p).
Residue reduce_mod(std::int64_t value, Residue p);

/// An element of the prime field 𝔽_p.
class FieldElement {
public:
    FieldElement(std::int64_t value, Residue modulus);

    Residue residue() const { return residue_; }
    Residue modulus() const { return modulus_; }
    bool is_zero() const { return residue_ == 0; }

    FieldElement inverse() const;

    friend FieldElement operator+(FieldElement a, FieldElement b);
    friend FieldElement operator-(FieldElement a, FieldElement b);
    friend FieldElement operator*(FieldElement a, FieldElement b);
    friend FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inverse(); }
    FieldElement operator-() const { return {neg_mod(residue_, modulus_), modulus_, raw_tag{}}; }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
    friend std::ostream& operator<<(std::ostream& os, const FieldElement& e)
    {
        return os << e.residue_ << " (mod " << e.modulus_ << ")";
    }

private:
    struct raw_tag {};
    FieldElement(Residue r, Residue p, raw_tag) : residue_(r), modulus_(p) {}

    Residue residue_;
    Residue modulus_;
};

} // namespace pmod
