#include "pmod/field.hpp"

#include <string>

#include "pmod/error.hpp"

namespace pmod {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

void require_prime_modulus(std::uint64_t p)
{
    if (p > max_modulus || !is_prime(p))
        throw ValidationError("field modulus must be a prime <= 2^31-1, got " + std::to_string(p));
}

Residue inv_mod(Residue a, Residue p)
{
    if (a % p == 0)
        throw ParameterError("zero has no inverse");
    std::int64_t r0 = p, r1 = a % p;
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    return reduce_mod(s0, p);
}

Residue reduce_mod(std::int64_t value, Residue p)
{
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0)
        r += p;
    return static_cast<Residue>(r);
}

FieldElement::FieldElement(std::int64_t value, Residue modulus)
    : residue_(0), modulus_(modulus)
{
    require_prime_modulus(modulus);
    residue_ = reduce_mod(value, modulus);
}

FieldElement FieldElement::inverse() const
{
    return {inv_mod(residue_, modulus_), modulus_, raw_tag{}};
}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b)
{
    if (a.modulus() != b.modulus())
        throw ValidationError("mixed field moduli");
}

} // namespace

FieldElement operator+(FieldElement a, FieldElement b)
{
    require_same_field(a, b);
    return {add_mod(a.residue_, b.residue_, a.modulus_), a.modulus_, FieldElement::raw_tag{}};
}

FieldElement operator-(FieldElement a, FieldElement b)
{
    require_same_field(a, b);
    return {sub_mod(a.residue_, b.residue_, a.modulus_), a.modulus_, FieldElement::raw_tag{}};
}

FieldElement operator*(FieldElement a, FieldElement b)
{
    require_same_field(a, b);
    return {mul_mod(a.residue_, b.residue_, a.modulus_), a.modulus_, FieldElement::raw_tag{}};
}

} // namespace pmod
