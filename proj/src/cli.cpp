#include <qrec/cli.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qrec/asym_series.hpp>
#include <qrec/big_rational.hpp>
#include <qrec/critical.hpp>
#include <qrec/errors.hpp>
#include <qrec/rate_constants.hpp>
#include <qrec/recurrence.hpp>
#include <qrec/sums.hpp>

namespace qrec::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { json, csv, text, latex };

struct RunConfig {
    std::string command;
    std::string p;
    std::optional<int> digits;
    long steps = 10;
    long N = 0;
    std::optional<int> order;
    std::optional<int> precision;
    int m = 0;
    std::vector<long> ks;
    std::string format;
    bool exact = false;
    bool verbose = false;
};

using Value = std::variant<std::string, long>;
using Row = std::vector<std::pair<std::string, Value>>;

Format parse_format(const std::string &name, Format fallback)
{
    if (name.empty()) {
        return fallback;
    }
    if (name == "json") {
        return Format::json;
    }
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "text") {
        return Format::text;
    }
    if (name == "latex") {
        return Format::latex;
    }
    throw domain_error("unknown format '" + name + "' (expected json, csv, text or latex)");
}

std::string render(const Value &v)
{
    return std::visit([](const auto &x) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::string>) {
            return x;
        } else {
            return std::to_string(x);
        }
    }, v);
}

json to_json(const Row &row)
{
    json obj = json::object();
    for (const auto &[key, value] : row) {
        std::visit([&](const auto &x) { obj[key] = x; }, value);
    }
    return obj;
}

std::string csv_cell(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

// Emits rows as a JSON array (or a single object), CSV with header, or an
// aligned text table.
void emit(const std::vector<Row> &rows, bool single, Format format, std::ostream &out)
{
    if (format == Format::json) {
        if (single && rows.size() == 1) {
            out << to_json(rows.front()).dump(2) << "\n";
        } else {
            json arr = json::array();
            for (const auto &row : rows) {
                arr.push_back(to_json(row));
            }
            out << arr.dump(2) << "\n";
        }
        return;
    }
    if (rows.empty()) {
        return;
    }
    if (format == Format::csv) {
        for (std::size_t c = 0; c < rows.front().size(); ++c) {
            out << (c ? "," : "") << csv_cell(rows.front()[c].first);
        }
        out << "\n";
        for (const auto &row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << csv_cell(render(row[c].second));
            }
            out << "\n";
        }
        return;
    }
    if (single && rows.size() == 1) {
        std::size_t width = 0;
        for (const auto &[key, value] : rows.front()) {
            width = std::max(width, key.size());
        }
        for (const auto &[key, value] : rows.front()) {
            out << std::left << std::setw(static_cast<int>(width)) << key << "  " << render(value) << "\n";
        }
        return;
    }
    std::vector<std::size_t> widths;
    for (const auto &[key, value] : rows.front()) {
        widths.push_back(key.size());
    }
    for (const auto &row : rows) {
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
            widths[c] = std::max(widths[c], render(row[c].second).size());
        }
    }
    for (std::size_t c = 0; c < widths.size(); ++c) {
        out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(widths[c])) << rows.front()[c].first;
    }
    out << "\n";
    for (const auto &row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "  " : "") << std::right << std::setw(static_cast<int>(widths[c])) << render(row[c].second);
        }
        out << "\n";
    }
}

void require_text_like(Format f)
{
    if (f == Format::latex) {
        throw domain_error("latex output is only available for derive");
    }
}

int checked_digits(const RunConfig &cfg, int fallback)
{
    const int digits = cfg.digits.value_or(fallback);
    if (digits < 1) {
        throw domain_error("--digits must be at least 1");
    }
    if (cfg.precision && cfg.digits && *cfg.precision < digits + 20) {
        throw domain_error("--precision must be at least --digits + 20");
    }
    return digits;
}

BigRational checked_p(const RunConfig &cfg)
{
    if (cfg.p.empty()) {
        throw domain_error("--p is required");
    }
    const BigRational p = BigRational::parse(cfg.p);
    classify(p);
    return p;
}

int cmd_iterate(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::text);
    require_text_like(format);
    const Params params = classify(checked_p(cfg));
    if (cfg.steps < 0) {
        throw domain_error("--steps must be nonnegative");
    }
    std::vector<Row> rows;
    if (cfg.exact) {
        if (cfg.steps > default_exact_cap) {
            throw cap_exceeded("--exact supports at most " + std::to_string(default_exact_cap)
                               + " steps (iterate sizes double every step); drop --exact for decimal output");
        }
        for (const auto &s : iterate_exact(params, static_cast<int>(cfg.steps))) {
            rows.push_back({{"k", s.k}, {"a", s.a.to_string()}});
        }
    } else {
        const int digits = checked_digits(cfg, 30);
        ResidualStepper step(params, cfg.precision.value_or(digits + 20));
        for (;;) {
            rows.push_back({{"k", step.k()}, {"a", step.a().to_fixed(digits)}});
            if (step.k() >= cfg.steps) {
                break;
            }
            step.advance();
        }
    }
    emit(rows, false, format, out);
    return exit_ok;
}

Row rate_row(const rate::RateConstantResult &r)
{
    return {{"p", r.p.to_string()},
            {"C", r.C.to_fixed(r.digits)},
            {"factors_used", r.factors_used},
            {"tail_bound", r.tail_bound.to_sci()}};
}

int cmd_rate_constant(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::json);
    require_text_like(format);
    const BigRational p = checked_p(cfg);
    const int digits = checked_digits(cfg, 15);
    emit({rate_row(rate::rate_constant(p, digits))}, true, format, out);
    return exit_ok;
}

int cmd_table1(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::text);
    require_text_like(format);
    const int digits = checked_digits(cfg, 15);
    if (digits > 50) {
        throw domain_error("table1 supports at most 50 digits");
    }
    std::vector<Row> rows;
    for (const auto &r : rate::table1(digits)) {
        rows.push_back(rate_row(r));
    }
    emit(rows, false, format, out);
    return exit_ok;
}

int cmd_derive(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::text);
    const int order = cfg.order.value_or(series::default_max_order);
    if (order < 3) {
        throw domain_error("--order must be at least 3");
    }
    const series::CoefficientTable table = series::solve_coefficients(order);
    // Highest i first within the natural order matches the way the terms are read.
    std::vector<std::pair<series::Term, CPoly>> entries;
    for (int i = 1; i <= order; ++i) {
        for (int j = std::max(i - 1, 0); j >= 0; --j) {
            entries.emplace_back(series::Term{i, j}, table.at(i, j));
        }
    }
    switch (format) {
        case Format::text:
            for (const auto &[t, c] : entries) {
                out << "c[" << t.i << "][" << t.j << "] = " << c.to_string() << "\n";
            }
            break;
        case Format::latex:
            for (const auto &[t, c] : entries) {
                out << "c_{" << t.i << "," << t.j << "} = " << c.to_latex() << "\n";
            }
            break;
        case Format::csv: {
            std::vector<Row> rows;
            for (const auto &[t, c] : entries) {
                rows.push_back({{"i", static_cast<long>(t.i)}, {"j", static_cast<long>(t.j)}, {"polynomial", c.to_string()}});
            }
            emit(rows, false, format, out);
            break;
        }
        case Format::json: {
            json arr = json::array();
            for (const auto &[t, c] : entries) {
                json coeffs = json::array();
                for (const auto &q : c.coeffs()) {
                    coeffs.push_back(q.to_string());
                }
                arr.push_back(json{{"i", t.i}, {"j", t.j}, {"coeffs", coeffs}});
            }
            out << arr.dump(2) << "\n";
            break;
        }
    }
    return exit_ok;
}

int cmd_critical(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const Format format = parse_format(cfg.format, Format::json);
    require_text_like(format);
    const long N = cfg.N ? cfg.N : critical::default_depth;
    const int order = cfg.order.value_or(critical::default_order);
    const int precision = cfg.precision.value_or(critical::default_precision);
    if (cfg.digits) {
        checked_digits(cfg, *cfg.digits);
    }
    const auto start = std::chrono::steady_clock::now();
    const critical::CriticalEstimate est = critical::estimate_C(N, order, precision);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const int shown = std::min(est.reliable_digits, cfg.digits.value_or(est.reliable_digits));
    const critical::LittleC lc = critical::little_c(est.C);
    Row row{{"C", est.C.to_fixed(shown)},
            {"N", est.N},
            {"order", static_cast<long>(est.order)},
            {"precision", static_cast<long>(est.precision)},
            {"truncation_bound", est.truncation_bound.to_sci()},
            {"rounding_bound", est.rounding_bound.to_sci()},
            {"newton_residual", est.newton_residual.to_sci()},
            {"C_uncertainty", est.C_uncertainty.to_sci()},
            {"reliable_digits", static_cast<long>(est.reliable_digits)},
            {"c", lc.c.to_fixed(std::max(shown - 1, 0))},
            {"exp_c_minus_1", lc.exp_c_minus_1.to_fixed(std::max(shown - 1, 0))}};
    if (cfg.verbose) {
        std::ostringstream os;
        os << std::fixed << std::setprecision(3) << elapsed.count();
        row.emplace_back("elapsed", os.str());
        err << "critical-c: " << os.str() << " s\n";
    }
    emit({row}, true, format, out);
    return exit_ok;
}

int cmd_residual_check(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::text);
    require_text_like(format);
    const int order = cfg.order.value_or(4);
    const int precision = cfg.precision.value_or(60);
    if (order < 1) {
        throw domain_error("--order must be at least 1");
    }
    std::vector<long> ks = cfg.ks.empty() ? std::vector<long>{100, 1000, 10000, 100000} : cfg.ks;
    const PrecReal C = critical::estimate_C(100'000, 8, std::max(precision, 50)).C;
    const auto points = critical::residual_order_check(order, ks, precision, C);
    if (format == Format::json) {
        json pts = json::array();
        for (const auto &pt : points) {
            pts.push_back(json{{"k", pt.k}, {"residual", pt.residual.to_sci(6)}});
        }
        json obj{{"order", order}, {"points", pts}};
        if (points.size() >= 2) {
            std::ostringstream os;
            os << std::setprecision(4) << critical::residual_slope(points, order);
            obj["slope"] = os.str();
        }
        out << obj.dump(2) << "\n";
        return exit_ok;
    }
    std::vector<Row> rows;
    for (const auto &pt : points) {
        rows.push_back({{"k", pt.k}, {"residual", pt.residual.to_sci(6)}});
    }
    emit(rows, false, format, out);
    if (format == Format::text && points.size() >= 2) {
        out << "slope " << std::setprecision(4) << critical::residual_slope(points, order) << " (expected "
            << -(order + 1) << ")\n";
    }
    return exit_ok;
}

Row sum_row(const sums::SumResult &s)
{
    return {{"m", static_cast<long>(s.m)},
            {"value", s.value.to_fixed(s.digits)},
            {"terms_summed", s.terms_summed},
            {"tail_correction", s.tail_correction.to_sci(6)},
            {"error_estimate", s.error_estimate.to_sci()}};
}

int cmd_sums(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::json);
    require_text_like(format);
    if (cfg.m < 2) {
        throw domain_error("--m must be at least 2");
    }
    const int digits = checked_digits(cfg, 12);
    emit({sum_row(sums::power_sum(cfg.m, digits, sums::default_tail_config()))}, true, format, out);
    return exit_ok;
}

int cmd_s1(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::json);
    require_text_like(format);
    const int digits = checked_digits(cfg, 8);
    emit({sum_row(sums::regularized_s1(digits, sums::default_tail_config()))}, true, format, out);
    return exit_ok;
}

int cmd_bootstrap(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::json);
    require_text_like(format);
    const int digits = checked_digits(cfg, 6);
    const sums::TailConfig tail = sums::default_tail_config();
    const sums::BootstrapResult b = sums::bootstrap_check(digits, tail);
    const int shown = digits + 2;
    const critical::LittleC lc = critical::little_c(tail.C);
    emit({{{"digits", static_cast<long>(digits)},
           {"c", b.c.to_fixed(shown)},
           {"gamma", b.gamma.to_fixed(shown)},
           {"s1", b.s1.value.to_fixed(shown)},
           {"sum_m_ge_2", b.higher.value.to_fixed(shown)},
           {"assembled", b.assembled.to_fixed(shown)},
           {"residual", b.residual.to_sci()},
           {"error_budget", b.error_budget.to_sci()},
           {"exp_c_minus_1", lc.exp_c_minus_1.to_fixed(shown)}}},
         true, format, out);
    return exit_ok;
}

int cmd_diverge(const RunConfig &cfg, std::ostream &out)
{
    const Format format = parse_format(cfg.format, Format::json);
    require_text_like(format);
    const long N = cfg.N ? cfg.N : 10'000;
    const int precision = cfg.precision.value_or(40);
    const sums::SumResult s1 = sums::regularized_s1(12, sums::default_tail_config());
    const sums::DivergenceDiagnostic d = sums::harmonic_divergence_diagnostic(N, precision, s1.value);
    emit({{{"N", d.N},
           {"partial", d.partial.to_fixed(20)},
           {"predicted", d.predicted.to_fixed(20)},
           {"difference", (d.partial - d.predicted).to_sci()}}},
         true, format, out);
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Quadratic recurrence a_k = (1-p) + p a_{k-1}^2: rate constants, critical series, orbit sums", "qrec"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", cfg.format, "json, csv or text (derive also accepts latex)");
        sub->add_flag("--verbose", cfg.verbose, "Report timings on standard error");
    };
    auto add_digits = [&](CLI::App *sub) { sub->add_option("--digits", cfg.digits, "Decimal places to report"); };
    auto add_precision = [&](CLI::App *sub) { sub->add_option("--precision", cfg.precision, "Working precision in decimal digits"); };

    auto *iterate = app.add_subcommand("iterate", "List the orbit a_0 .. a_steps");
    iterate->add_option("--p", cfg.p, "Parameter as num/den")->required();
    iterate->add_option("--steps", cfg.steps, "Number of steps");
    iterate->add_flag("--exact", cfg.exact, "Exact rationals (at most 30 steps)");
    add_digits(iterate);
    add_precision(iterate);
    add_format(iterate);

    auto *rate_c = app.add_subcommand("rate-constant", "C(p) = lim (r - a_k)/(2rp)^k for p != 1/2");
    rate_c->add_option("--p", cfg.p, "Parameter as num/den")->required();
    add_digits(rate_c);
    add_format(rate_c);

    auto *table1 = app.add_subcommand("table1", "C(p) for p in {1/5, 1/4, 1/3, 2/5, 3/5, 2/3, 3/4, 4/5}");
    add_digits(table1);
    add_format(table1);

    auto *derive = app.add_subcommand("derive", "Solve the critical-series coefficients c[i][j] as polynomials in C");
    derive->add_option("--order", cfg.order, "Highest power of 1/k");
    add_format(derive);

    auto *crit = app.add_subcommand("critical-c", "Critical constant C from a deep iterate at p = 1/2");
    crit->add_option("--N", cfg.N, "Iteration depth");
    crit->add_option("--order", cfg.order, "Series order");
    add_precision(crit);
    add_digits(crit);
    add_format(crit);

    auto *resid = app.add_subcommand("residual-check", "|a_k - series(k)| at p = 1/2");
    resid->add_option("--order", cfg.order, "Series order");
    resid->add_option("--k", cfg.ks, "Sample points (>= 10)")->delimiter(',');
    add_precision(resid);
    add_format(resid);

    auto *sums_cmd = app.add_subcommand("sums", "Power sum s_m = sum_k alpha_k^m, m >= 2");
    sums_cmd->add_option("--m", cfg.m, "Power")->required();
    add_digits(sums_cmd);
    add_format(sums_cmd);

    auto *s1_cmd = app.add_subcommand("s1", "Regularized sum s_1 = alpha_0 + sum (alpha_k - 1/k)");
    add_digits(s1_cmd);
    add_format(s1_cmd);

    auto *boot = app.add_subcommand("bootstrap", "Check c = 2 + gamma + sum_m s_m");
    add_digits(boot);
    add_format(boot);

    auto *diverge = app.add_subcommand("diverge-check", "Compare sum_{k<=N} alpha_k with ln N + gamma + s_1");
    diverge->add_option("--N", cfg.N, "Number of terms");
    add_precision(diverge);
    add_format(diverge);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }

    try {
        if (*iterate) {
            return cmd_iterate(cfg, out);
        }
        if (*rate_c) {
            return cmd_rate_constant(cfg, out);
        }
        if (*table1) {
            return cmd_table1(cfg, out);
        }
        if (*derive) {
            return cmd_derive(cfg, out);
        }
        if (*crit) {
            return cmd_critical(cfg, out, err);
        }
        if (*resid) {
            return cmd_residual_check(cfg, out);
        }
        if (*sums_cmd) {
            return cmd_sums(cfg, out);
        }
        if (*s1_cmd) {
            return cmd_s1(cfg, out);
        }
        if (*boot) {
            return cmd_bootstrap(cfg, out);
        }
        if (*diverge) {
            return cmd_diverge(cfg, out);
        }
    } catch (const domain_error &e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const cap_exceeded &e) {
        err << "error: " << e.what() << "\n";
        return exit_cap;
    } catch (const refusal &e) {
        err << "refused: " << e.what() << "\n";
        return exit_refusal;
    } catch (const derivation_error &e) {
        err << "refused: " << e.what() << "\n";
        return exit_refusal;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_failure;
}

} // namespace qrec::cli
