#include <qrec/asym_series.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>

#include <qrec/errors.hpp>

namespace qrec::series {

AsymSeries::AsymSeries(int order) : m_order(order)
{
    if (order < 0) {
        throw domain_error("series order must be nonnegative");
    }
}

AsymSeries AsymSeries::constant(const CPoly &value, int order)
{
    return monomial(0, 0, value, order);
}

AsymSeries AsymSeries::monomial(int i, int j, const CPoly &value, int order)
{
    AsymSeries out(order);
    out.set(i, j, value);
    return out;
}

CPoly AsymSeries::coeff(int i, int j) const
{
    const auto it = m_terms.find({i, j});
    return it == m_terms.end() ? CPoly() : it->second;
}

bool AsymSeries::is_ansatz_shaped() const
{
    return std::all_of(m_terms.begin(), m_terms.end(), [](const auto &kv) {
        const Term &t = kv.first;
        return t.i == 0 ? t.j == 0 : t.j < t.i;
    });
}

int AsymSeries::max_log_power() const
{
    int out = 0;
    for (const auto &[t, c] : m_terms) {
        out = std::max(out, t.j);
    }
    return out;
}

void AsymSeries::set(int i, int j, CPoly value)
{
    if (i < 0 || j < 0) {
        throw domain_error("negative series index");
    }
    if (i > m_order) {
        return;
    }
    if (value.is_zero()) {
        m_terms.erase({i, j});
    } else {
        m_terms[{i, j}] = std::move(value);
    }
}

void AsymSeries::add(int i, int j, const CPoly &value)
{
    if (i > m_order || value.is_zero()) {
        return;
    }
    auto it = m_terms.find({i, j});
    if (it == m_terms.end()) {
        set(i, j, value);
        return;
    }
    it->second += value;
    if (it->second.is_zero()) {
        m_terms.erase(it);
    }
}

AsymSeries AsymSeries::truncated(int order) const
{
    AsymSeries out(order);
    for (const auto &[t, c] : m_terms) {
        out.set(t.i, t.j, c);
    }
    return out;
}

PrecReal AsymSeries::eval(const PrecReal &k, const PrecReal &cval, int digits) const
{
    const PrecReal kk = k.with_digits(digits);
    const PrecReal lnk = log(kk);
    const PrecReal c = cval.with_digits(digits);
    PrecReal sum(0, digits);
    for (const auto &[t, poly] : m_terms) {
        PrecReal term = poly.eval(c);
        if (t.j > 0) {
            term *= pow(lnk, t.j);
        }
        if (t.i > 0) {
            term /= pow(kk, t.i);
        }
        sum += term;
    }
    return sum;
}

std::string AsymSeries::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[t, c] : m_terms) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c.to_string() << ")";
        if (t.j > 0) {
            os << "*ln(k)^" << t.j;
        }
        if (t.i > 0) {
            os << "/k^" << t.i;
        }
    }
    return os.str();
}

AsymSeries AsymSeries::operator-() const
{
    AsymSeries out(*this);
    for (auto &[t, c] : out.m_terms) {
        c = -c;
    }
    return out;
}

AsymSeries &AsymSeries::operator+=(const AsymSeries &o)
{
    m_order = std::min(m_order, o.m_order);
    std::erase_if(m_terms, [this](const auto &kv) { return kv.first.i > m_order; });
    for (const auto &[t, c] : o.m_terms) {
        add(t.i, t.j, c);
    }
    return *this;
}

AsymSeries &AsymSeries::operator-=(const AsymSeries &o)
{
    return *this += -o;
}

AsymSeries &AsymSeries::operator*=(const CPoly &s)
{
    if (s.is_zero()) {
        m_terms.clear();
        return *this;
    }
    for (auto &[t, c] : m_terms) {
        c *= s;
    }
    std::erase_if(m_terms, [](const auto &kv) { return kv.second.is_zero(); });
    return *this;
}

AsymSeries operator*(const AsymSeries &a, const AsymSeries &b)
{
    AsymSeries out(std::min(a.m_order, b.m_order));
    for (const auto &[ta, ca] : a.m_terms) {
        for (const auto &[tb, cb] : b.m_terms) {
            if (ta.i + tb.i <= out.m_order) {
                out.add(ta.i + tb.i, ta.j + tb.j, ca * cb);
            }
        }
    }
    return out;
}

namespace {

// Dense rational power series in x = 1/k, index = power of x.
using XSeries = std::vector<BigRational>;

XSeries mul_trunc(const XSeries &a, const XSeries &b, int order)
{
    XSeries out(static_cast<std::size_t>(order) + 1);
    for (std::size_t x = 0; x < a.size(); ++x) {
        if (a[x].is_zero()) {
            continue;
        }
        for (std::size_t y = 0; y < b.size() && x + y <= static_cast<std::size_t>(order); ++y) {
            out[x + y] += a[x] * b[y];
        }
    }
    return out;
}

// ln(1 + x) = sum_{m>=1} (-1)^{m+1} x^m / m
XSeries log1p_series(int order)
{
    XSeries out(static_cast<std::size_t>(order) + 1);
    for (int m = 1; m <= order; ++m) {
        out[m] = BigRational(m % 2 == 1 ? 1 : -1, m);
    }
    return out;
}

// x^i (1 + x)^(-i) = sum_m binom(i+m-1, m) (-1)^m x^(i+m)
XSeries shifted_inverse_power(int i, int order)
{
    XSeries out(static_cast<std::size_t>(order) + 1);
    if (i == 0) {
        out[0] = BigRational(1);
        return out;
    }
    for (int m = 0; i + m <= order; ++m) {
        BigRational b = binomial(i + m - 1, m);
        out[i + m] = m % 2 == 0 ? b : -b;
    }
    return out;
}

} // namespace

AsymSeries expand_log_power(int j, int i, int order)
{
    if (j < 0 || i < 0) {
        throw domain_error("expand_log_power needs nonnegative powers");
    }
    AsymSeries out(order);
    if (i > order) {
        return out;
    }
    // ln(k+1) = ln k + L with L = ln(1 + 1/k), so
    // ln(k+1)^j = sum_l binom(j, l) ln(k)^(j-l) L^l.
    const XSeries lser = log1p_series(order);
    const XSeries base = shifted_inverse_power(i, order);
    XSeries lpow(static_cast<std::size_t>(order) + 1);
    lpow[0] = BigRational(1);
    for (int l = 0; l <= j; ++l) {
        if (l > 0) {
            lpow = mul_trunc(lpow, lser, order);
        }
        const XSeries piece = mul_trunc(lpow, base, order);
        const BigRational weight = binomial(j, l);
        for (int m = 0; m <= order; ++m) {
            if (!piece[m].is_zero()) {
                out.add(m, j - l, CPoly(piece[m] * weight));
            }
        }
    }
    return out;
}

namespace {

// Expansions of ln(k+1)^j/(k+1)^i at a fixed order, computed once each.
class ExpansionCache {
public:
    explicit ExpansionCache(int order) : m_order(order) {}

    const AsymSeries &get(int j, int i)
    {
        auto it = m_cache.find({i, j});
        if (it == m_cache.end()) {
            it = m_cache.emplace(Term{i, j}, expand_log_power(j, i, m_order)).first;
        }
        return it->second;
    }

private:
    int m_order;
    std::map<Term, AsymSeries> m_cache;
};

} // namespace

AsymSeries shift(const AsymSeries &s)
{
    ExpansionCache cache(s.order());
    AsymSeries out(s.order());
    for (const auto &[t, c] : s.terms()) {
        for (const auto &[e, rational] : cache.get(t.j, t.i).terms()) {
            out.add(e.i, e.j, c * rational.constant_term());
        }
    }
    return out;
}

AsymSeries apply_map(const AsymSeries &s)
{
    AsymSeries out = s * s + AsymSeries::constant(CPoly(1), s.order());
    out *= CPoly(BigRational(1, 2));
    return out;
}

AsymSeries derivative(const AsymSeries &s)
{
    AsymSeries out(s.order() + 1);
    for (const auto &[t, c] : s.terms()) {
        if (t.j > 0) {
            out.add(t.i + 1, t.j - 1, c * BigRational(t.j));
        }
        if (t.i > 0) {
            out.add(t.i + 1, t.j, c * BigRational(-t.i));
        }
    }
    return out;
}

AsymSeries tail_integral(const AsymSeries &s)
{
    AsymSeries out(std::max(s.order() - 1, 0));
    for (const auto &[t, c] : s.terms()) {
        if (t.i < 2) {
            throw domain_error("tail integral diverges: term ln(k)^" + std::to_string(t.j) + "/k^" + std::to_string(t.i));
        }
        // int_k^inf ln(x)^j x^(-i) dx = sum_l j!/(j-l)! ln(k)^(j-l) / ((i-1)^(l+1) k^(i-1))
        const BigRational base(t.i - 1);
        BigRational falling(1);
        BigRational denom = base;
        for (int l = 0; l <= t.j; ++l) {
            out.add(t.i - 1, t.j - l, c * (falling / denom));
            falling *= BigRational(t.j - l);
            denom *= base;
        }
    }
    return out;
}

CPoly CoefficientTable::at(int i, int j) const
{
    const auto it = entries.find({i, j});
    return it == entries.end() ? CPoly() : it->second;
}

namespace {

// Residual coefficient [shift(A) - apply_map(A)] at (n, j) for A = 1 + u,
// where u holds the entries of `known` (all with i >= 1).
class ResidualProbe {
public:
    explicit ResidualProbe(int order) : m_cache(order) {}

    CPoly at(const std::map<Term, CPoly> &known, int n, int j)
    {
        CPoly shifted;
        for (const auto &[t, c] : known) {
            if (t.i > n || t.j < j) {
                continue;
            }
            const CPoly e = m_cache.get(t.j, t.i).coeff(n, j);
            if (!e.is_zero()) {
                shifted += c * e.constant_term();
            }
        }
        // For n >= 1, (1 + A^2)/2 contributes u + u^2/2 at (n, j).
        CPoly mapped = lookup(known, n, j);
        CPoly square;
        for (const auto &[t, c] : known) {
            if (t.i >= n || t.j > j) {
                continue;
            }
            const auto other = known.find({n - t.i, j - t.j});
            if (other != known.end()) {
                square += c * other->second;
            }
        }
        mapped += square * BigRational(1, 2);
        return shifted - mapped;
    }

private:
    static CPoly lookup(const std::map<Term, CPoly> &m, int i, int j)
    {
        const auto it = m.find({i, j});
        return it == m.end() ? CPoly() : it->second;
    }

    ExpansionCache m_cache;
};

} // namespace

CoefficientTable solve_coefficients(int max_order)
{
    if (max_order < 2) {
        throw domain_error("solve_coefficients needs max_order >= 2");
    }
    CoefficientTable table;
    table.max_order = max_order;
    table.entries[{1, 0}] = CPoly(-2);
    table.entries[{2, 1}] = CPoly(2);
    table.entries[{2, 0}] = CPoly::symbol();
    if (max_order == 2) {
        return table;
    }

    ResidualProbe probe(max_order + 1);
    // The seed must satisfy the order-3 equations (c_{2,1} = 2 is forced there).
    for (int j = 0; j <= 2; ++j) {
        if (!probe.at(table.entries, 3, j).is_zero()) {
            throw derivation_error(2, j, "seed coefficients leave a nonzero residual at 1/k^3");
        }
    }

    for (int i = 3; i <= max_order; ++i) {
        for (int j = i - 1; j >= 0; --j) {
            const CPoly r0 = probe.at(table.entries, i + 1, j);
            table.entries[{i, j}] = CPoly(1);
            const CPoly lead = probe.at(table.entries, i + 1, j) - r0;
            table.entries.erase({i, j});
            if (lead.is_zero()) {
                throw derivation_error(i, j, "degenerate equation (unknown has zero coefficient)");
            }
            if (!lead.is_constant()) {
                throw derivation_error(i, j, "unknown's coefficient depends on C: " + lead.to_string());
            }
            CPoly solved = -r0 * (BigRational(1) / lead.constant_term());
            if (!solved.is_zero()) {
                table.entries[{i, j}] = std::move(solved);
            }
        }
        for (int j = 0; j <= i; ++j) {
            const CPoly left = probe.at(table.entries, i + 1, j);
            if (!left.is_zero()) {
                throw derivation_error(i, j, "inconsistent: residual " + left.to_string() + " remains at ln(k)^"
                                                 + std::to_string(j) + "/k^" + std::to_string(i + 1));
            }
        }
    }
    return table;
}

AsymSeries ansatz(const CoefficientTable &table, int order, int series_order)
{
    AsymSeries out = AsymSeries::constant(CPoly(1), series_order);
    for (const auto &[t, c] : table.entries) {
        if (t.i <= order) {
            out.set(t.i, t.j, c);
        }
    }
    return out;
}

AsymSeries fixed_point_residual(const CoefficientTable &table)
{
    const AsymSeries a = ansatz(table, table.max_order, table.max_order + 1);
    return shift(a) - apply_map(a);
}

std::vector<PrecReal> collapse_in_C(const CoefficientTable &table, long k, int digits, int order)
{
    if (k < 2) {
        throw domain_error("series evaluation needs k >= 2");
    }
    const int top = order < 0 ? table.max_order : order;
    const PrecReal kk(k, digits);
    const PrecReal lnk = log(kk);
    std::vector<PrecReal> out;
    for (const auto &[t, poly] : table.entries) {
        if (t.i > top) {
            continue;
        }
        const PrecReal scale = pow(lnk, t.j) / pow(kk, t.i);
        const auto &cs = poly.coeffs();
        while (out.size() < cs.size()) {
            out.emplace_back(0, digits);
        }
        for (std::size_t d = 0; d < cs.size(); ++d) {
            out[d] += scale * cs[d];
        }
    }
    return out;
}

PrecReal eval_series(const CoefficientTable &table, long k, const PrecReal &cval, int digits, int order)
{
    const std::vector<PrecReal> coeffs = collapse_in_C(table, k, digits, order);
    const PrecReal c = cval.with_digits(digits);
    PrecReal acc(0, digits);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc *= c;
        acc += *it;
    }
    return acc + 1;
}

} // namespace qrec::series
