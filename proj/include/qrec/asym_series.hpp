#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <qrec/cpoly.hpp>
#include <qrec/prec_real.hpp>

namespace qrec::series {

// Basis element ln(k)^j / k^i.
struct Term {
    int i;
    int j;
    friend auto operator<=>(const Term &, const Term &) = default;
};

// Truncated expansion sum_{(i,j)} c_{i,j} ln(k)^j / k^i with exact CPoly
// coefficients. Truncation is by total power of 1/k: every stored i is at
// most order(). Absent terms are zero. The log power is unrestricted here;
// series produced by the recurrence ansatz additionally satisfy j < i (see
// is_ansatz_shaped).
class AsymSeries {
public:
    explicit AsymSeries(int order);
    static AsymSeries constant(const CPoly &value, int order);
    static AsymSeries monomial(int i, int j, const CPoly &value, int order);

    int order() const noexcept { return m_order; }
    const std::map<Term, CPoly> &terms() const noexcept { return m_terms; }
    CPoly coeff(int i, int j) const;
    bool is_zero() const noexcept { return m_terms.empty(); }
    bool is_ansatz_shaped() const;
    int max_log_power() const;

    // Terms beyond order() are dropped; zero coefficients erase the term.
    void set(int i, int j, CPoly value);
    void add(int i, int j, const CPoly &value);

    AsymSeries truncated(int order) const;

    // Sum of c_{i,j}(cval) ln(k)^j / k^i at `digits` working precision.
    PrecReal eval(const PrecReal &k, const PrecReal &cval, int digits) const;

    std::string to_string() const;

    AsymSeries operator-() const;
    AsymSeries &operator+=(const AsymSeries &o);
    AsymSeries &operator-=(const AsymSeries &o);
    AsymSeries &operator*=(const CPoly &s);

    friend AsymSeries operator+(AsymSeries a, const AsymSeries &b) { return a += b; }
    friend AsymSeries operator-(AsymSeries a, const AsymSeries &b) { return a -= b; }
    // Product truncated at the smaller of the two orders.
    friend AsymSeries operator*(const AsymSeries &a, const AsymSeries &b);
    friend AsymSeries operator*(AsymSeries a, const CPoly &s) { return a *= s; }

    friend bool operator==(const AsymSeries &a, const AsymSeries &b) { return a.m_terms == b.m_terms; }

private:
    int m_order;
    std::map<Term, CPoly> m_terms;
};

// ln(k+1)^j / (k+1)^i expanded in the (ln k, 1/k) basis through 1/k^order,
// with exact rational coefficients.
AsymSeries expand_log_power(int j, int i, int order);

// Substitutes k -> k+1 term by term, truncated at the series' order.
AsymSeries shift(const AsymSeries &s);

// (1 + s^2) / 2, the critical recurrence map.
AsymSeries apply_map(const AsymSeries &s);

// d/dk, exact. The result's order is one higher than the input's.
AsymSeries derivative(const AsymSeries &s);

// Integral from k to infinity, exact. Every term needs i >= 2; the result's
// order is one lower than the input's.
AsymSeries tail_integral(const AsymSeries &s);

// Coefficients c_{i,j} of a_k ~ 1 + sum c_{i,j} ln(k)^j / k^i, as polynomials
// in the free constant C.
struct CoefficientTable {
    int max_order = 0;
    std::map<Term, CPoly> entries;

    CPoly at(int i, int j) const;
};

inline constexpr int default_max_order = 10;

// Seed c_{1,0} = -2, c_{2,1} = 2, c_{2,0} = C, then order by order matches the
// (i+1, j) coefficients of shift(ansatz) and apply_map(ansatz) to solve for
// c_{i,j}, j = i-1 down to 0. Throws qrec::derivation_error if an equation is
// degenerate, non-linear in the unknown, or left inconsistent.
CoefficientTable solve_coefficients(int max_order);

// 1 + sum_{i <= order} c_{i,j} ln^j/k^i, carried with declared order
// `series_order` (>= the table's terms kept).
AsymSeries ansatz(const CoefficientTable &table, int order, int series_order);

// shift(A) - apply_map(A) for the ansatz A through max_order, computed at
// order max_order + 1. Zero for a correctly solved table.
AsymSeries fixed_point_residual(const CoefficientTable &table);

// 1 + sum_{i <= order} c_{i,j}(cval) ln(k)^j / k^i. order < 0 means the whole table.
PrecReal eval_series(const CoefficientTable &table, long k, const PrecReal &cval, int digits, int order = -1);

// The same sum with cval left symbolic: entry d multiplies cval^d (the leading 1
// is not included).
std::vector<PrecReal> collapse_in_C(const CoefficientTable &table, long k, int digits, int order = -1);

} // namespace qrec::series
