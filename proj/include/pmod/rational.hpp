#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pmod {

using Integer = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// All parameter values (grid points, steps, basepoints) live here. Nothing
/// in the library ever converts them to floating point.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(const Integer& value) : value_(value) {}
    Rational(const Integer& numerator, const Integer& denominator);

    /// Parses `a` or `a/b` with optional leading minus. Throws ParameterError.
    static Rational parse(std::string_view text);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }

    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    /// Canonical text form: `a` for integers, `a/b` otherwise.
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs)
    {
        return lhs.value_ == rhs.value_;
    }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
    {
        const int c = cmp(lhs.value_, rhs.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_;
};

/// ⌊x/step⌋, exact. Throws ParameterError unless step > 0.
Integer floor_div(const Rational& x, const Rational& step);

/// ⌈x/step⌉, exact. Throws ParameterError unless step > 0.
Integer ceil_div(const Rational& x, const Rational& step);

/// Narrowing to a machine integer; throws ParameterError when out of range.
std::int64_t to_int64(const Integer& value);

/// Integral, non-negative rational as an index. Throws ParameterError otherwise.
std::uint64_t to_index(const Rational& value);

/// A rational or +∞. Used for bar deaths and for distances.
class ExtRational {
public:
    ExtRational() : value_(Rational{}) {}
    ExtRational(const Rational& value) : value_(value) {}
    ExtRational(long value) : value_(Rational(value)) {}

    static ExtRational infinity() { return ExtRational(std::nullopt); }
    static ExtRational parse(std::string_view text);

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    /// Precondition: is_finite().
    const Rational& value() const { return *value_; }

    std::string str() const { return value_ ? value_->str() : std::string("inf"); }

    friend bool operator==(const ExtRational& lhs, const ExtRational& rhs) = default;
    friend std::strong_ordering operator<=>(const ExtRational& lhs, const ExtRational& rhs)
    {
        if (lhs.is_infinite() || rhs.is_infinite())
            return lhs.is_infinite() <=> rhs.is_infinite();
        return *lhs.value_ <=> *rhs.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

private:
    explicit ExtRational(std::optional<Rational> value) : value_(std::move(value)) {}
    std::optional<Rational> value_;
};

} // namespace pmod
