#include <qrec/cpoly.hpp>

#include <algorithm>
#include <string>
#include <utility>

namespace qrec {

CPoly::CPoly(const BigRational &constant)
{
    if (!constant.is_zero()) {
        m_coeffs.push_back(constant);
    }
}

CPoly::CPoly(std::vector<BigRational> coeffs) : m_coeffs(std::move(coeffs))
{
    trim();
}

CPoly CPoly::symbol()
{
    return CPoly(std::vector<BigRational>{BigRational(0), BigRational(1)});
}

void CPoly::trim()
{
    while (!m_coeffs.empty() && m_coeffs.back().is_zero()) {
        m_coeffs.pop_back();
    }
}

CPoly CPoly::derivative() const
{
    std::vector<BigRational> out;
    for (std::size_t d = 1; d < m_coeffs.size(); ++d) {
        out.push_back(m_coeffs[d] * BigRational(static_cast<long>(d)));
    }
    return CPoly(std::move(out));
}

BigRational CPoly::eval(const BigRational &cval) const
{
    BigRational acc(0);
    for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
        acc = acc * cval + *it;
    }
    return acc;
}

PrecReal CPoly::eval(const PrecReal &cval) const
{
    PrecReal acc(0, cval.digits());
    for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
        acc *= cval;
        acc += *it;
    }
    return acc;
}

namespace {

template <typename Term>
std::string render(const std::vector<BigRational> &coeffs, Term term)
{
    if (coeffs.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const BigRational &c = coeffs[k];
        if (c.is_zero()) {
            continue;
        }
        const bool negative = c.sign() < 0;
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += term(abs(c), k);
    }
    return out;
}

} // namespace

std::string CPoly::to_string() const
{
    return render(m_coeffs, [](const BigRational &mag, std::size_t d) {
        std::string power = d == 0 ? "" : d == 1 ? "C" : "C^" + std::to_string(d);
        if (d == 0) {
            return mag.to_string();
        }
        return mag == BigRational(1) ? power : mag.to_string() + "*" + power;
    });
}

std::string CPoly::to_latex() const
{
    return render(m_coeffs, [](const BigRational &mag, std::size_t d) {
        std::string num = mag.is_integer() ? mag.to_string()
                                           : "\\frac{" + mag.numerator().get_str() + "}{" + mag.denominator().get_str() + "}";
        if (d == 0) {
            return num;
        }
        std::string power = d == 1 ? "C" : "C^{" + std::to_string(d) + "}";
        return mag == BigRational(1) ? power : num + power;
    });
}

CPoly CPoly::operator-() const
{
    CPoly out(*this);
    for (auto &c : out.m_coeffs) {
        c = -c;
    }
    return out;
}

CPoly &CPoly::operator+=(const CPoly &o)
{
    if (o.m_coeffs.size() > m_coeffs.size()) {
        m_coeffs.resize(o.m_coeffs.size());
    }
    for (std::size_t d = 0; d < o.m_coeffs.size(); ++d) {
        m_coeffs[d] += o.m_coeffs[d];
    }
    trim();
    return *this;
}

CPoly &CPoly::operator-=(const CPoly &o)
{
    if (o.m_coeffs.size() > m_coeffs.size()) {
        m_coeffs.resize(o.m_coeffs.size());
    }
    for (std::size_t d = 0; d < o.m_coeffs.size(); ++d) {
        m_coeffs[d] -= o.m_coeffs[d];
    }
    trim();
    return *this;
}

CPoly operator*(const CPoly &a, const CPoly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return CPoly();
    }
    std::vector<BigRational> out(a.m_coeffs.size() + b.m_coeffs.size() - 1);
    for (std::size_t x = 0; x < a.m_coeffs.size(); ++x) {
        for (std::size_t y = 0; y < b.m_coeffs.size(); ++y) {
            out[x + y] += a.m_coeffs[x] * b.m_coeffs[y];
        }
    }
    return CPoly(std::move(out));
}

CPoly &CPoly::operator*=(const CPoly &o)
{
    *this = *this * o;
    return *this;
}

CPoly &CPoly::operator*=(const BigRational &s)
{
    if (s.is_zero()) {
        m_coeffs.clear();
        return *this;
    }
    for (auto &c : m_coeffs) {
        c *= s;
    }
    return *this;
}

} // namespace qrec
