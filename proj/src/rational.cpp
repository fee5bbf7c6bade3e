#include "pmod/rational.hpp"

#include <cctype>

#include "pmod/error.hpp"

namespace pmod {

namespace {

bool is_integer_literal(std::string_view text)
{
    if (!text.empty() && text.front() == '-')
        text.remove_prefix(1);
    if (text.empty())
        return false;
    for (const char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

void require_positive_step(const Rational& step)
{
    if (step.sign() <= 0)
        throw ParameterError("step must be positive, got " + step.str());
}

} // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator)
{
    if (denominator == 0)
        throw ParameterError("zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                 : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-')
        throw ParameterError("malformed rational '" + std::string(text) + "'");
    return Rational(Integer(std::string(num)), Integer(std::string(den)));
}

std::string Rational::str() const
{
    return value_.get_str();
}

Rational Rational::operator-() const
{
    Rational out;
    out.value_ = -value_;
    return out;
}

Rational& Rational::operator+=(const Rational& rhs)
{
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.sign() == 0)
        throw ParameterError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Integer floor_div(const Rational& x, const Rational& step)
{
    require_positive_step(step);
    const Rational q = x / step;
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
    return out;
}

Integer ceil_div(const Rational& x, const Rational& step)
{
    require_positive_step(step);
    const Rational q = x / step;
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
    return out;
}

std::int64_t to_int64(const Integer& value)
{
    if (!value.fits_slong_p())
        throw ParameterError("integer out of range: " + value.get_str());
    return value.get_si();
}

std::uint64_t to_index(const Rational& value)
{
    if (!value.is_integer() || value.sign() < 0)
        throw ParameterError("expected a non-negative integer, got " + value.str());
    return static_cast<std::uint64_t>(to_int64(value.numerator()));
}

ExtRational ExtRational::parse(std::string_view text)
{
    if (text == "inf")
        return infinity();
    return ExtRational(Rational::parse(text));
}

} // namespace pmod
