#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <mpfr.h>

#include <qrec/big_rational.hpp>

namespace qrec {

enum class Rounding { toward_zero, nearest_even };

// Arbitrary-precision real carrying a working precision of P decimal digits.
// Every operation rounds to nearest with relative error below 10^(1-P).
// Binary operations between values of different precision produce a result at
// the lower of the two precisions; comparisons likewise round to the lower
// precision first.
class PrecReal {
public:
    explicit PrecReal(int digits = 30);
    PrecReal(long value, int digits);
    PrecReal(const BigRational &value, int digits);
    // Decimal literal such as "3.535987572272308" or "-1e-5".
    PrecReal(std::string_view decimal, int digits);

    PrecReal(const PrecReal &other);
    PrecReal(PrecReal &&other) noexcept;
    PrecReal &operator=(const PrecReal &other);
    PrecReal &operator=(PrecReal &&other) noexcept;
    ~PrecReal();

    int digits() const noexcept { return m_digits; }
    PrecReal with_digits(int digits) const;

    static int bits_for(int digits);

    mpfr_srcptr raw() const noexcept { return m_value; }
    mpfr_ptr raw() noexcept { return m_value; }

    int sign() const { return mpfr_sgn(m_value); }
    bool is_zero() const { return mpfr_zero_p(m_value) != 0; }
    double to_double() const { return mpfr_get_d(m_value, MPFR_RNDN); }

    // Fixed-point rendering with `decimals` digits after the point.
    std::string to_fixed(int decimals, Rounding mode = Rounding::toward_zero) const;
    // Scientific rendering with `significant` digits, e.g. "1.25e-17".
    std::string to_sci(int significant = 3) const;

    PrecReal operator-() const;

    PrecReal &operator+=(const PrecReal &o);
    PrecReal &operator-=(const PrecReal &o);
    PrecReal &operator*=(const PrecReal &o);
    PrecReal &operator/=(const PrecReal &o);
    PrecReal &operator+=(long o);
    PrecReal &operator-=(long o);
    PrecReal &operator*=(long o);
    PrecReal &operator/=(long o);
    PrecReal &operator*=(const BigRational &o);
    PrecReal &operator+=(const BigRational &o);

    friend PrecReal operator+(const PrecReal &a, const PrecReal &b);
    friend PrecReal operator-(const PrecReal &a, const PrecReal &b);
    friend PrecReal operator*(const PrecReal &a, const PrecReal &b);
    friend PrecReal operator/(const PrecReal &a, const PrecReal &b);

    friend PrecReal operator+(PrecReal a, long b) { return a += b; }
    friend PrecReal operator-(PrecReal a, long b) { return a -= b; }
    friend PrecReal operator*(PrecReal a, long b) { return a *= b; }
    friend PrecReal operator/(PrecReal a, long b) { return a /= b; }
    friend PrecReal operator+(long a, PrecReal b) { return b += a; }
    friend PrecReal operator-(long a, const PrecReal &b) { return -b + a; }
    friend PrecReal operator*(long a, PrecReal b) { return b *= a; }
    friend PrecReal operator*(PrecReal a, const BigRational &b) { return a *= b; }
    friend PrecReal operator*(const BigRational &a, PrecReal b) { return b *= a; }

    friend bool operator==(const PrecReal &a, const PrecReal &b);
    friend std::partial_ordering operator<=>(const PrecReal &a, const PrecReal &b);
    friend bool operator==(const PrecReal &a, long b) { return mpfr_cmp_si(a.m_value, b) == 0; }
    friend std::partial_ordering operator<=>(const PrecReal &a, long b);

    friend std::ostream &operator<<(std::ostream &os, const PrecReal &x);

private:
    int m_digits;
    mpfr_t m_value;
};

PrecReal abs(const PrecReal &x);
PrecReal log(const PrecReal &x);
PrecReal exp(const PrecReal &x);
PrecReal pow(const PrecReal &x, long exponent);
PrecReal sqrt(const PrecReal &x);

// 10^e at the given precision.
PrecReal pow10(long e, int digits);

// Base-10 logarithm as a double, for digit bookkeeping. Returns -inf for zero.
double log10_abs(const PrecReal &x);

} // namespace qrec
