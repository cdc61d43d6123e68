#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <qrec/big_rational.hpp>
#include <qrec/prec_real.hpp>

namespace qrec {

// The quadratic recurrence a_0 = 0, a_k = (1-p) + p*a_{k-1}^2.

enum class Regime { subcritical, critical, supercritical };

std::string_view to_string(Regime regime);

struct Params {
    BigRational p;
    Regime regime;
    // Limit of the orbit: 1 for p <= 1/2, (1-p)/p otherwise.
    BigRational r;
    // Rate base 2*r*p; below 1 away from p = 1/2.
    BigRational q;
};

// Throws qrec::domain_error unless 0 < p < 1.
Params classify(const BigRational &p);

template <typename T>
struct OrbitSample {
    long k;
    T a;
    // Residual r - a_k.
    T b;
};

using ExactSample = OrbitSample<BigRational>;
using RealSample = OrbitSample<PrecReal>;

// Exact iterates double their size every step, so exact work is capped.
inline constexpr int default_exact_cap = 30;

// a_0 ... a_n as exact rationals. Throws qrec::cap_exceeded when n > cap.
std::vector<ExactSample> iterate_exact(const Params &params, int n, int cap = default_exact_cap);

// Steps the residual b_k = p*b_{k-1}*(2r - b_{k-1}) at fixed working precision.
// Working on the residual avoids cancellation in r - a_k.
class ResidualStepper {
public:
    ResidualStepper(const Params &params, int digits);

    long k() const noexcept { return m_k; }
    const PrecReal &b() const noexcept { return m_b; }
    PrecReal a() const { return m_r - m_b; }
    const PrecReal &r() const noexcept { return m_r; }

    void advance();
    void advance_to(long n);

private:
    BigRational m_p;
    PrecReal m_r;
    PrecReal m_two_r;
    PrecReal m_b;
    PrecReal m_scratch;
    long m_k = 0;
};

struct RealOrbit {
    RealSample last;
    // Requested samples, in increasing k.
    std::vector<RealSample> samples;
};

// a_n at `digits` working precision with absolute error <= 3n*10^(2-digits).
// Only the k listed in `sample_at` are retained besides a_n.
RealOrbit iterate_real(const Params &params, long n, int digits, std::span<const long> sample_at = {});

// Logistic form of the critical orbit: alpha_0 = 1/2, alpha_k = alpha_{k-1}(1 - alpha_{k-1}),
// so that alpha_k = (1 - a_k)/2 at p = 1/2.
std::vector<BigRational> logistic_iterate_exact(int n, int cap = default_exact_cap);
std::vector<PrecReal> logistic_iterate_real(int n, int digits);

class LogisticStepper {
public:
    explicit LogisticStepper(int digits);

    long k() const noexcept { return m_k; }
    const PrecReal &alpha() const noexcept { return m_alpha; }

    void advance();

private:
    PrecReal m_alpha;
    PrecReal m_scratch;
    long m_k = 0;
};

} // namespace qrec
