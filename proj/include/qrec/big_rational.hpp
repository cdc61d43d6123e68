#pragma once

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qrec {

// Exact rational number, always held in canonical form (positive
// denominator, numerator and denominator coprime).
class BigRational {
public:
    BigRational() = default;
    BigRational(long n) : m_value(n) {}
    BigRational(long num, long den);
    BigRational(const mpz_class &num, const mpz_class &den);
    explicit BigRational(mpq_class v);

    // Accepts "a", "-a" or "a/b" with decimal integers.
    static BigRational parse(std::string_view text);

    const mpq_class &get() const noexcept { return m_value; }
    mpz_class numerator() const { return m_value.get_num(); }
    mpz_class denominator() const { return m_value.get_den(); }

    int sign() const noexcept { return sgn(m_value); }
    bool is_zero() const noexcept { return sign() == 0; }
    bool is_integer() const { return m_value.get_den() == 1; }

    // Bits needed for numerator plus denominator; a size measure for exact orbits.
    std::size_t bit_size() const;

    std::string to_string() const;
    double to_double() const { return m_value.get_d(); }

    BigRational operator-() const { return BigRational(mpq_class(-m_value)); }
    BigRational &operator+=(const BigRational &o);
    BigRational &operator-=(const BigRational &o);
    BigRational &operator*=(const BigRational &o);
    BigRational &operator/=(const BigRational &o);

    friend BigRational operator+(BigRational a, const BigRational &b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational &b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational &b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational &b) { return a /= b; }

    friend bool operator==(const BigRational &a, const BigRational &b) { return a.m_value == b.m_value; }
    friend std::strong_ordering operator<=>(const BigRational &a, const BigRational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream &operator<<(std::ostream &os, const BigRational &q) { return os << q.to_string(); }

private:
    mpq_class m_value;
};

BigRational pow(const BigRational &base, unsigned exponent);
BigRational abs(const BigRational &q);

// Binomial coefficient n choose k for small nonnegative arguments.
BigRational binomial(long n, long k);

} // namespace qrec
