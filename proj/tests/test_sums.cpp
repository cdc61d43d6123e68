#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include <qrec/constants.hpp>
#include <qrec/critical.hpp>
#include <qrec/errors.hpp>
#include <qrec/sums.hpp>

using namespace qrec;
using namespace qrec::sums;

namespace {

const TailConfig &config()
{
    static const TailConfig cfg = default_tail_config();
    return cfg;
}

const std::map<int, std::string> table_ref = {
    {3, "0.159488853036112"}, {4, "0.068977706072225"}, {5, "0.032622409767106"},
    {6, "0.015934111084642"}, {7, "0.007884618832013"}, {8, "0.003923447888623"},
};

// Plain long double summation far past the point where the tail matters at 1e-12.
long double brute_power_sum(int m, long n)
{
    long double a = 0.5L;
    long double s = 0;
    for (long k = 0; k <= n; ++k) {
        s += std::pow(a, m);
        a = a * (1 - a);
    }
    return s;
}

} // namespace

TEST_CASE("s2 identity examples")
{
    const S2Witness w0 = s2_identity_check(0);
    CHECK(w0.holds);
    CHECK(w0.lhs == BigRational(1, 4));
    CHECK(w0.rhs == BigRational(1, 4));

    const S2Witness w2 = s2_identity_check(2);
    CHECK(w2.holds);
    CHECK(w2.lhs == BigRational(89, 256));
    CHECK(w2.rhs == BigRational(1, 2) - BigRational(39, 256));

    for (int n = 0; n <= 20; ++n) {
        const S2Witness w = s2_identity_check(n);
        CHECK(w.holds);
        CHECK(w.lhs == w.rhs);
    }
    CHECK_THROWS_AS(s2_identity_check(default_exact_cap + 1), cap_exceeded);
}

TEST_CASE("power sum examples")
{
    CHECK(power_sum(2, 15, config()).value.to_fixed(15) == "0.500000000000000");
    CHECK(power_sum(3, 12, config()).value.to_fixed(12) == "0.159488853036");
    CHECK(power_sum(8, 12, config()).value.to_fixed(12) == "0.003923447888");
    CHECK_THROWS_AS(power_sum(1, 10, config()), domain_error);
    CHECK_THROWS_AS(power_sum(3, max_power_sum_digits + 1, config()), refusal);
}

TEST_CASE("power sums against reference values")
{
    for (const auto &[m, ref] : table_ref) {
        const SumResult s = power_sum(m, 15, config());
        INFO("m = " << m);
        CHECK(s.value.to_fixed(15) == ref);
        CHECK(s.error_estimate < pow10(-17, 30));
        CHECK(s.m == m);
    }
}

TEST_CASE("oracle: brute-force summation")
{
    for (int m = 3; m <= 8; ++m) {
        const long double brute = brute_power_sum(m, 2'000'000);
        const double lib = power_sum(m, 14, config()).value.to_double();
        INFO("m = " << m);
        CHECK(std::abs(double(brute) - lib) < 1e-12);
    }
    // Regularized sum: brute partial sum misses a tail of about (ln N + 1 + c)/N.
    long double a = 0.5L;
    long double s = 0.5L;
    const long n = 2'000'000;
    for (long k = 1; k <= n; ++k) {
        a = a * (1 - a);
        s += a - 1.0L / k;
    }
    const double tail = -(std::log(double(n)) + 1 + 1.768) / n;
    CHECK(std::abs(double(s) + tail - regularized_s1(10, config()).value.to_double()) < 1e-8);
}

TEST_CASE("property: power sum bounds and ratio decay")
{
    PrecReal prev(0, 30);
    for (int m = 2; m <= 12; ++m) {
        const PrecReal v = power_sum(m, 15, config()).value;
        CHECK(v > PrecReal(0, 30));
        CHECK(v < pow(PrecReal(2, 30), 2 - m));
        if (m > 2) {
            const double ratio = (v / prev).to_double();
            CHECK(ratio < 0.5 + 1.0 / m);
            CHECK(ratio > 0.25);
        }
        prev = v;
    }
    const double reference = 0.003923447888623 / 0.007884618832013;
    const double ours = (power_sum(8, 15, config()).value / power_sum(7, 15, config()).value).to_double();
    CHECK(std::abs(reference - 0.49761) < 1e-5);
    CHECK(std::abs(ours - reference) < 1e-3);
}

TEST_CASE("property: doubling the direct depth stays within the error estimate")
{
    TailConfig twice = config();
    twice.initial_terms = 2 * config().initial_terms;
    for (int m = 2; m <= 8; ++m) {
        const SumResult a = power_sum(m, 18, config());
        const SumResult b = power_sum(m, 18, twice);
        CHECK(b.terms_summed > a.terms_summed);
        CHECK(abs(a.value - b.value) < a.error_estimate + b.error_estimate);
    }
    const SumResult a = regularized_s1(12, config());
    const SumResult b = regularized_s1(12, twice);
    CHECK(abs(a.value - b.value) < a.error_estimate + b.error_estimate);
}

TEST_CASE("regularized s1")
{
    const SumResult s = regularized_s1(8, config());
    CHECK(s.value.to_fixed(8) == "-1.60196478");
    CHECK(s.m == 1);
    CHECK_THROWS_AS(regularized_s1(max_s1_digits + 1, config()), refusal);

    // Partial sum with a single term and no tail: 1/2 + (1/4 - 1).
    const auto alpha = logistic_iterate_exact(1);
    CHECK(alpha[0] + (alpha[1] - BigRational(1)) == BigRational(-1, 4));

    TailConfig deep5 = config();
    deep5.initial_terms = 100'000;
    TailConfig deep6 = config();
    deep6.initial_terms = 1'000'000;
    const SumResult r5 = regularized_s1(6, deep5);
    const SumResult r6 = regularized_s1(6, deep6);
    CHECK(r5.terms_summed == 100'001);
    CHECK(r6.terms_summed == 1'000'001);
    CHECK(abs(r5.value - r6.value) < PrecReal("1e-6", 30));
}

TEST_CASE("bootstrap identity")
{
    for (int D : {4, 6, 10}) {
        const BootstrapResult b = bootstrap_check(D, config());
        INFO("D = " << D);
        CHECK(abs(b.residual) < pow10(-D, 30));
        CHECK(abs(b.residual) <= b.error_budget);
    }
    const BootstrapResult b = bootstrap_check(6, config());
    CHECK(b.assembled.to_fixed(9) == "1.767993786");
    CHECK(b.gamma == euler_gamma(30));
    CHECK(b.s1.value.to_fixed(8) == "-1.60196478");
    CHECK_THROWS_AS(bootstrap_check(0, config()), refusal);
}

TEST_CASE("cross-module: bootstrap c against the critical constant")
{
    const BootstrapResult b = bootstrap_check(10, config());
    const PrecReal C = critical::estimate_C(1'000'000, 6, 60).C;
    CHECK(abs(2 * b.assembled - C) < 2 * b.error_budget + PrecReal("1e-12", 30));
    CHECK(abs(config().C - C) < PrecReal("1e-15", 30));
}

TEST_CASE("harmonic divergence diagnostic")
{
    const PrecReal s1 = regularized_s1(12, config()).value;
    const DivergenceDiagnostic d4 = harmonic_divergence_diagnostic(10'000, 40, s1);
    CHECK(abs(d4.partial - d4.predicted) < PrecReal("1e-2", 30));
    const DivergenceDiagnostic d6 = harmonic_divergence_diagnostic(1'000'000, 40, s1);
    CHECK(abs(d6.partial - d6.predicted) < PrecReal("1e-4", 30));
    CHECK(abs(d6.partial - d6.predicted) < abs(d4.partial - d4.predicted));

    const DivergenceDiagnostic d2 = harmonic_divergence_diagnostic(100, 40, s1);
    CHECK(d2.predicted.to_fixed(2) == "3.58");
    CHECK(abs(d2.partial - d2.predicted) < PrecReal("0.1", 30));
    CHECK_THROWS_AS(harmonic_divergence_diagnostic(99, 40, s1), domain_error);
}

TEST_CASE("tail sum of a pure power matches the zeta tail")
{
    // f = 1/k^2: sum_{k>N} 1/k^2 = pi^2/6 - H_N^(2).
    series::AsymSeries f = series::AsymSeries::monomial(2, 0, CPoly(1), 6);
    const long N = 200;
    const PrecReal tail = detail::tail_sum(f, N, PrecReal(0, 40), 40);
    PrecReal partial(0, 40);
    for (long k = 1; k <= N; ++k) {
        partial += PrecReal(1, 40) / PrecReal(k * k, 40);
    }
    const PrecReal pi2_6("1.6449340668482264364724151666460251892189499012068", 40);
    CHECK(abs(tail - (pi2_6 - partial)) < PrecReal("1e-24", 30));
}
