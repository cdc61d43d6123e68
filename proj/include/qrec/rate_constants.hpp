#pragma once

#include <utility>
#include <vector>

#include <qrec/big_rational.hpp>
#include <qrec/prec_real.hpp>
#include <qrec/recurrence.hpp>

namespace qrec::rate {

// Exponential-convergence constant C(p) = lim (r - a_k) / q^k for p != 1/2,
// evaluated through the product r * prod_j (r + a_j) / (2r).

struct RateConstantResult {
    BigRational p;
    PrecReal C;
    long factors_used;
    // Upper bound on |sum_{j >= K} ln((r + a_j)/(2r))| = q^K / (1 - q).
    PrecReal tail_bound;
    // Decimal places confirmed by the guard-digit re-run.
    int digits;
};

// Refusal threshold on the rate base q = 2rp.
BigRational max_rate_base();

// Smallest K with q^K/(1-q) < 10^(-digits-2).
long factors_needed(const BigRational &q, int digits);

// r * prod_{j<K} (r + a_j)/(2r), accumulated in log space at `working_digits`.
PrecReal partial_product(const Params &params, long factors, int working_digits);

// Single evaluation at an explicit working precision, without the confirmation re-run.
RateConstantResult rate_constant_at(const BigRational &p, int digits, int working_digits);

// C(p) to `digits` decimal places. Works at digits+20 and confirms the first
// `digits` places with a re-run 20 digits higher. Throws qrec::refusal at
// p = 1/2 or when q exceeds max_rate_base().
RateConstantResult rate_constant(const BigRational &p, int digits);

// The eight parameters 1/5, 1/4, 1/3, 2/5, 3/5, 2/3, 3/4, 4/5.
std::vector<BigRational> table1_parameters();
std::vector<RateConstantResult> table1(int digits);

// (k, b_k / q^k) for k = 0..kmax; decreases strictly towards C(p).
std::vector<std::pair<long, PrecReal>> convergence_diagnostic(const BigRational &p, long kmax, int working_digits);

} // namespace qrec::rate
