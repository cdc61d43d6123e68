#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <qrec/big_rational.hpp>
#include <qrec/prec_real.hpp>

namespace qrec {

// Polynomial in the formal symbol C with exact rational coefficients.
// coeffs()[d] multiplies C^d; the leading coefficient is never zero and the
// zero polynomial has no coefficients.
class CPoly {
public:
    CPoly() = default;
    CPoly(const BigRational &constant);
    CPoly(long constant) : CPoly(BigRational(constant)) {}
    explicit CPoly(std::vector<BigRational> coeffs);

    // The polynomial C itself.
    static CPoly symbol();

    const std::vector<BigRational> &coeffs() const noexcept { return m_coeffs; }
    bool is_zero() const noexcept { return m_coeffs.empty(); }
    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(m_coeffs.size()) - 1; }
    bool is_constant() const noexcept { return m_coeffs.size() <= 1; }
    BigRational coeff(std::size_t d) const { return d < m_coeffs.size() ? m_coeffs[d] : BigRational(0); }
    BigRational constant_term() const { return coeff(0); }

    CPoly derivative() const;
    BigRational eval(const BigRational &cval) const;
    PrecReal eval(const PrecReal &cval) const;

    // Plain text, highest power first: "1/4*C^3 - 5/4*C^2 + 5/2*C - 5/3".
    std::string to_string() const;
    // LaTeX-style rendering: "\frac{1}{4}C^{3} - \frac{5}{4}C^{2} + ...".
    std::string to_latex() const;

    CPoly operator-() const;
    CPoly &operator+=(const CPoly &o);
    CPoly &operator-=(const CPoly &o);
    CPoly &operator*=(const CPoly &o);
    CPoly &operator*=(const BigRational &s);

    friend CPoly operator+(CPoly a, const CPoly &b) { return a += b; }
    friend CPoly operator-(CPoly a, const CPoly &b) { return a -= b; }
    friend CPoly operator*(const CPoly &a, const CPoly &b);
    friend CPoly operator*(CPoly a, const BigRational &s) { return a *= s; }
    friend CPoly operator*(const BigRational &s, CPoly a) { return a *= s; }

    friend bool operator==(const CPoly &a, const CPoly &b) = default;

    friend std::ostream &operator<<(std::ostream &os, const CPoly &p) { return os << p.to_string(); }

private:
    void trim();

    std::vector<BigRational> m_coeffs;
};

} // namespace qrec
