#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>

#include <qrec/asym_series.hpp>
#include <qrec/errors.hpp>
#include <qrec/recurrence.hpp>

using namespace qrec;
using namespace qrec::series;

namespace {

CPoly poly(std::vector<BigRational> c) { return CPoly(std::move(c)); }

const CPoly C = CPoly::symbol();

void check_low_order_forms(const CoefficientTable &t)
{
    CHECK(t.at(1, 0) == CPoly(-2));
    CHECK(t.at(2, 1) == CPoly(2));
    CHECK(t.at(2, 0) == C);
    CHECK(t.at(3, 2) == CPoly(-2));
    CHECK(t.at(3, 1) == poly({2, -2}));
    CHECK(t.at(3, 0) == poly({-1, 1, BigRational(-1, 2)}));
}

void check_order4_forms(const CoefficientTable &t)
{
    CHECK(t.at(4, 3) == CPoly(2));
    CHECK(t.at(4, 2) == poly({-5, 3}));
    CHECK(t.at(4, 1) == poly({5, -5, BigRational(3, 2)}));
    CHECK(t.at(4, 0) == poly({BigRational(-5, 3), BigRational(5, 2), BigRational(-5, 4), BigRational(1, 4)}));
}

} // namespace

TEST_CASE("expand_log_power examples")
{
    const AsymSeries inv = expand_log_power(0, 1, 5);
    for (int i = 1; i <= 5; ++i) {
        CHECK(inv.coeff(i, 0) == CPoly(i % 2 ? 1 : -1));
    }
    CHECK(inv.terms().size() == 5);

    const AsymSeries l2 = expand_log_power(1, 2, 5);
    CHECK(l2.coeff(2, 1) == CPoly(1));
    CHECK(l2.coeff(3, 1) == CPoly(-2));
    CHECK(l2.coeff(4, 1) == CPoly(3));
    CHECK(l2.coeff(5, 1) == CPoly(-4));
    CHECK(l2.coeff(3, 0) == CPoly(1));
    CHECK(l2.coeff(4, 0) == CPoly(BigRational(-5, 2)));
    CHECK(l2.coeff(5, 0) == CPoly(BigRational(13, 3)));
    CHECK(l2.coeff(2, 0).is_zero());

    const AsymSeries l3 = expand_log_power(2, 3, 5);
    CHECK(l3.coeff(3, 2) == CPoly(1));
    CHECK(l3.coeff(4, 2) == CPoly(-3));
    CHECK(l3.coeff(5, 2) == CPoly(6));
    CHECK(l3.coeff(4, 1) == CPoly(2));
    CHECK(l3.coeff(5, 1) == CPoly(-7));
    CHECK(l3.coeff(5, 0) == CPoly(1));
    CHECK(l3.terms().size() == 6);
}

TEST_CASE("property: expand_log_power binomial exactness")
{
    for (int i = 1; i <= 5; ++i) {
        const AsymSeries s = expand_log_power(0, i, i + 10);
        for (int m = 0; m <= 10; ++m) {
            const BigRational expected = binomial(i + m - 1, m) * BigRational(m % 2 ? -1 : 1);
            CHECK(s.coeff(i + m, 0) == CPoly(expected));
        }
    }
}

TEST_CASE("shift examples")
{
    CHECK(shift(AsymSeries::constant(CPoly(1), 6)) == AsymSeries::constant(CPoly(1), 6));

    const AsymSeries s = shift(AsymSeries::monomial(1, 0, CPoly(-2), 4));
    CHECK(s.coeff(1, 0) == CPoly(-2));
    CHECK(s.coeff(2, 0) == CPoly(2));
    CHECK(s.coeff(3, 0) == CPoly(-2));
    CHECK(s.coeff(4, 0) == CPoly(2));

    AsymSeries second(4);
    second.set(2, 1, CPoly(2));
    second.set(2, 0, C);
    const AsymSeries sh = shift(second);
    CHECK(sh.coeff(3, 0) == poly({2, -2}));
    CHECK(sh.coeff(3, 1) == CPoly(-4));
    CHECK(sh.coeff(2, 1) == CPoly(2));
    CHECK(sh.coeff(2, 0) == C);
}

TEST_CASE("apply_map examples")
{
    CHECK(apply_map(AsymSeries::constant(CPoly(1), 5)) == AsymSeries::constant(CPoly(1), 5));

    AsymSeries s = AsymSeries::constant(CPoly(1), 2);
    s.set(1, 0, CPoly(-2));
    AsymSeries expected = s;
    expected.set(2, 0, CPoly(2));
    CHECK(apply_map(s) == expected);

    // Order-3 ansatz carried at order 4: the ln^2/k^4 coefficient is 2 - 2 c[3][2].
    const CoefficientTable t = solve_coefficients(3);
    const AsymSeries mapped = apply_map(ansatz(t, 3, 4));
    CHECK(mapped.coeff(4, 2) == CPoly(2) - BigRational(2) * t.at(3, 2));
    CHECK(mapped.coeff(4, 2) == CPoly(6));
}

TEST_CASE("series arithmetic")
{
    AsymSeries a(4);
    a.set(1, 0, CPoly(1));
    AsymSeries b(3);
    b.set(2, 1, C);
    const AsymSeries prod = a * b;
    CHECK(prod.order() == 3);
    CHECK(prod.coeff(3, 1) == C);
    CHECK((a - a).is_zero());
    CHECK((a * C).coeff(1, 0) == C);
    CHECK(a.truncated(0).is_zero());
    CHECK(AsymSeries::monomial(5, 0, CPoly(1), 4).is_zero());
}

TEST_CASE("derivative and tail integral are inverse on ansatz-shaped terms")
{
    const CoefficientTable t = solve_coefficients(5);
    const AsymSeries tail = ansatz(t, 5, 6) - AsymSeries::constant(CPoly(1), 6) - AsymSeries::monomial(1, 0, CPoly(-2), 6);
    // d/dk of the integral from k to infinity of f is -f.
    const AsymSeries roundtrip = derivative(tail_integral(tail));
    CHECK(roundtrip.truncated(6) == (-tail).truncated(6));
    CHECK_THROWS(tail_integral(AsymSeries::monomial(1, 0, CPoly(1), 4)));
}

TEST_CASE("solve_coefficients through order 4")
{
    const CoefficientTable t3 = solve_coefficients(3);
    check_low_order_forms(t3);
    CHECK(t3.max_order == 3);

    const auto start = std::chrono::steady_clock::now();
    const CoefficientTable t4 = solve_coefficients(4);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    check_low_order_forms(t4);
    check_order4_forms(t4);
    CHECK(took.count() < 1.0);
    CHECK_THROWS_AS(solve_coefficients(1), domain_error);
}

TEST_CASE("degree pattern of c[i][0]")
{
    const CoefficientTable t = solve_coefficients(4);
    for (int i = 2; i <= 4; ++i) {
        CHECK(t.at(i, 0).degree() == i - 1);
    }
}

TEST_CASE("solve_coefficients to order 20")
{
    const auto start = std::chrono::steady_clock::now();
    const CoefficientTable t = solve_coefficients(20);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    CHECK(took.count() < 60.0);
    CHECK(t.at(20, 19).is_constant());
    CHECK(t.at(20, 19) == CPoly(2));
    for (int i = 2; i <= 20; ++i) {
        CHECK(t.at(i, i - 1) == CPoly(i % 2 ? -2 : 2));
    }
    MESSAGE("deg c[20][0] = " << t.at(20, 0).degree());
    check_order4_forms(t);
}

TEST_CASE("property: fixed-point residual vanishes identically")
{
    for (int I = 3; I <= 10; ++I) {
        const CoefficientTable t = solve_coefficients(I);
        const AsymSeries res = fixed_point_residual(t);
        CHECK(res.order() == I + 1);
        CHECK(res.is_zero());
        CHECK(ansatz(t, I, I).is_ansatz_shaped());
    }
}

TEST_CASE("a wrong coefficient leaves a nonzero residual")
{
    CoefficientTable t = solve_coefficients(4);
    t.entries[{4, 2}] = t.at(4, 2) + CPoly(1);
    const AsymSeries res = fixed_point_residual(t);
    CHECK_FALSE(res.is_zero());
    CHECK(res.coeff(5, 2) != CPoly());
}

TEST_CASE("eval_series examples")
{
    const CoefficientTable t = solve_coefficients(6);
    const PrecReal cval("3.535987572272308", 40);
    CHECK(eval_series(t, 10, cval, 40, 1) == PrecReal(BigRational(4, 5), 40));

    const PrecReal two = eval_series(t, 100, cval, 40, 2);
    const PrecReal hand = PrecReal(BigRational(98, 100), 40) + (2 * log(PrecReal(100, 40)) + cval) / 10000;
    CHECK(abs(two - hand) < PrecReal("1e-35", 40));
    CHECK(two.to_fixed(6) == "0.981274");

    const PrecReal four = eval_series(t, 10'000, cval, 40, 4);
    const PrecReal orbit = iterate_real(classify(BigRational(1, 2)), 10'000, 40).last.a;
    const double lnk = std::log(1e4);
    CHECK(std::abs((four - orbit).to_double()) < 10 * std::pow(lnk, 4) / 1e20);
}

TEST_CASE("oracle: hand-written four-term series")
{
    const CoefficientTable t = solve_coefficients(4);
    for (long k : {50L, 1000L, 123456L}) {
        for (const char *cs : {"2", "3.535987572272308", "-1.25"}) {
            const PrecReal c(cs, 50);
            const PrecReal L = log(PrecReal(k, 50));
            const PrecReal x = PrecReal(1, 50) / PrecReal(k, 50);
            const PrecReal c2 = c * c;
            const PrecReal c3 = c2 * c;
            PrecReal s(1, 50);
            s += -2 * x;
            s += (2 * L + c) * pow(x, 2);
            s += (-2 * L * L + (2 - 2 * c) * L + (-1 + c - c2 / 2)) * pow(x, 3);
            s += (2 * L * L * L + (3 * c - 5) * L * L + (c2 * BigRational(3, 2) - 5 * c + 5) * L
                  + (c3 / 4 - c2 * BigRational(5, 4) + c * BigRational(5, 2) - PrecReal(BigRational(5, 3), 50)))
                 * pow(x, 4);
            CHECK(abs(eval_series(t, k, c, 50) - s) < PrecReal("1e-45", 50));
        }
    }
}

TEST_CASE("collapse_in_C matches direct evaluation")
{
    const CoefficientTable t = solve_coefficients(6);
    const auto coeffs = collapse_in_C(t, 5000, 40);
    const PrecReal c("3.5", 40);
    PrecReal horner(0, 40);
    // The leading 1 of the series is not part of the collapsed coefficients.
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        horner = horner * c + *it;
    }
    CHECK(abs(horner + 1 - eval_series(t, 5000, c, 40)) < PrecReal("1e-36", 40));
}
