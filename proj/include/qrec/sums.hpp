#pragma once

#include <qrec/asym_series.hpp>
#include <qrec/big_rational.hpp>
#include <qrec/prec_real.hpp>
#include <qrec/recurrence.hpp>

namespace qrec::sums {

// Sums over the logistic orbit alpha_0 = 1/2, alpha_k = alpha_{k-1}(1 - alpha_{k-1}).

struct SumResult {
    // Power m; m = 1 denotes the regularized sum s_1 = alpha_0 + sum_{k>=1} (alpha_k - 1/k)
    // and m = 0 the resummed sum_k alpha_k^2 / (1 - alpha_k).
    int m;
    PrecReal value;
    // Orbit terms summed directly (k = 0..terms_summed-1).
    long terms_summed;
    // Euler-Maclaurin estimate of everything beyond the direct part.
    PrecReal tail_correction;
    PrecReal error_estimate;
    int digits;
};

// Tail corrections need the critical constant C and an asymptotic series order.
struct TailConfig {
    PrecReal C;
    int series_order = 8;
    long initial_terms = 1000;
    long max_terms = 10'000'000;
};

// Uses a quick critical-constant estimate (N = 10^5, order 8, 50 digits).
TailConfig default_tail_config();

inline constexpr int max_power_sum_digits = 30;
inline constexpr int max_s1_digits = 14;

struct S2Witness {
    int n;
    // sum_{k<=n} alpha_k^2 and 1/2 - alpha_{n+1}.
    BigRational lhs;
    BigRational rhs;
    bool holds;
};

// Exact check of sum_{k=0}^n alpha_k^2 = 1/2 - alpha_{n+1}.
S2Witness s2_identity_check(int n, int cap = default_exact_cap);

// s_m = sum_k alpha_k^m for m >= 2, to `digits` decimal places.
SumResult power_sum(int m, int digits, const TailConfig &config);

// s_1 to `digits` decimal places; refuses beyond max_s1_digits.
SumResult regularized_s1(int digits, const TailConfig &config);

// sum_{m>=2} s_m computed as the single sum sum_k alpha_k^2/(1 - alpha_k).
SumResult resummed_power_sums(int digits, const TailConfig &config);

struct BootstrapResult {
    PrecReal c;
    PrecReal gamma;
    SumResult s1;
    SumResult higher; // sum_{m>=2} s_m
    // 2 + gamma + s_1 + sum_{m>=2} s_m
    PrecReal assembled;
    // c - assembled
    PrecReal residual;
    // Combined error estimate of the assembled side.
    PrecReal error_budget;
    int digits;
};

// Checks c = C/2 = 2 + gamma + sum_m s_m at `digits` decimal places (1..12).
BootstrapResult bootstrap_check(int digits, const TailConfig &config);

struct DivergenceDiagnostic {
    long N;
    // sum_{k=0}^N alpha_k
    PrecReal partial;
    // ln N + gamma + s_1
    PrecReal predicted;
};

DivergenceDiagnostic harmonic_divergence_diagnostic(long N, int precision, const PrecReal &s1);

// Building blocks, exposed for testing.
namespace detail {

// alpha_k ~ sum d_{i,j} ln^j/k^i with d = -c/2 from the critical table, terms through `order`,
// declared order `series_order`.
series::AsymSeries alpha_series(const series::CoefficientTable &table, int order, int series_order);

// Euler-Maclaurin estimate of sum_{k > N} f(k) for a series f with no 1/k or constant
// terms: the integral, -f(N)/2 and `bernoulli_terms` derivative corrections.
PrecReal tail_sum(const series::AsymSeries &f, long N, const PrecReal &C, int digits, int bernoulli_terms = 4);

// Magnitude of the first Bernoulli correction beyond `bernoulli_terms`.
PrecReal tail_remainder_estimate(const series::AsymSeries &f, long N, const PrecReal &C, int digits,
                                 int bernoulli_terms = 4);

} // namespace detail

} // namespace qrec::sums
