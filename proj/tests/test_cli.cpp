#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <qrec/cli.hpp>

using qrec::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string &hay, const std::string &needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("iterate")
{
    const Outcome ex = invoke({"iterate", "--p", "1/2", "--steps", "3", "--exact", "--format", "json"});
    REQUIRE(ex.code == 0);
    const auto rows = nlohmann::json::parse(ex.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0]["a"] == "0");
    CHECK(rows[1]["a"] == "1/2");
    CHECK(rows[2]["a"] == "5/8");
    CHECK(rows[3]["a"] == "89/128");
    CHECK(rows[3]["k"] == 3);

    const Outcome zero = invoke({"iterate", "--p", "1/2", "--steps", "0", "--format", "csv"});
    CHECK(zero.code == 0);
    CHECK(zero.out == "k,a\n0,0.000000000000000000000000000000\n");

    const Outcome real = invoke({"iterate", "--p", "1/2", "--steps", "3", "--digits", "7", "--format", "csv"});
    CHECK(contains(real.out, "3,0.6953125\n"));
}

TEST_CASE("iterate errors")
{
    CHECK(invoke({"iterate", "--p", "3/2", "--steps", "3"}).code == 2);
    CHECK(invoke({"iterate", "--p", "0", "--steps", "3"}).code == 2);
    CHECK(invoke({"iterate", "--p", "half", "--steps", "3"}).code == 2);
    CHECK(invoke({"iterate", "--steps", "3"}).code == 2);
    const Outcome cap = invoke({"iterate", "--p", "1/2", "--steps", "31", "--exact"});
    CHECK(cap.code == 3);
    CHECK_FALSE(cap.err.empty());
    CHECK(invoke({"iterate", "--p", "1/2", "--digits", "30", "--precision", "40"}).code == 2);
    CHECK(invoke({"iterate", "--p", "1/2", "--digits", "0"}).code == 2);
}

TEST_CASE("table1")
{
    const Outcome t = invoke({"table1", "--digits", "15", "--format", "csv"});
    REQUIRE(t.code == 0);
    CHECK(contains(t.out, "p,C,factors_used,tail_bound\n"));
    CHECK(contains(t.out, "4/5,0.105973634467432,"));
    CHECK(contains(t.out, "1/4,0.392906852755779,"));
    CHECK(contains(t.out, "3/5,0.158431105979816,"));
    CHECK(invoke({"table1", "--digits", "51"}).code == 2);
}

TEST_CASE("rate-constant")
{
    const Outcome r = invoke({"rate-constant", "--p", "3/4"});
    REQUIRE(r.code == 0);
    const auto obj = nlohmann::json::parse(r.out);
    CHECK(obj["C"] == "0.130968950918593");
    CHECK(obj["p"] == "3/4");
    CHECK(obj["tail_bound"].is_string());
    const Outcome crit = invoke({"rate-constant", "--p", "1/2"});
    CHECK(crit.code == 4);
    CHECK(contains(crit.err, "critical"));
}

TEST_CASE("derive")
{
    const Outcome d4 = invoke({"derive", "--order", "4", "--format", "text"});
    REQUIRE(d4.code == 0);
    CHECK(contains(d4.out, "c[4][2] = 3*C - 5\n"));
    CHECK(contains(d4.out, "c[4][3] = 2\n"));
    CHECK(contains(d4.out, "c[4][0] = 1/4*C^3 - 5/4*C^2 + 5/2*C - 5/3\n"));
    CHECK(contains(invoke({"derive", "--order", "3"}).out, "c[3][2] = -2\n"));

    const auto js = nlohmann::json::parse(invoke({"derive", "--order", "4", "--format", "json"}).out);
    bool found = false;
    for (const auto &e : js) {
        if (e["i"] == 4 && e["j"] == 0) {
            found = true;
            CHECK(e["coeffs"] == nlohmann::json::array({"-5/3", "5/2", "-5/4", "1/4"}));
        }
    }
    CHECK(found);
    CHECK(contains(invoke({"derive", "--order", "3", "--format", "latex"}).out, "c_{3,0} = -\\frac{1}{2}C^{2} + C - 1"));
    CHECK(invoke({"derive", "--order", "2"}).code == 2);
}

TEST_CASE("critical-c")
{
    const Outcome c = invoke({"critical-c", "--N", "1000000", "--order", "6", "--precision", "60"});
    REQUIRE(c.code == 0);
    const auto obj = nlohmann::json::parse(c.out);
    CHECK(obj["C"].get<std::string>().rfind("3.535987572272308", 0) == 0);
    CHECK(obj["c"].get<std::string>().rfind("1.767993786136154", 0) == 0);
    CHECK_FALSE(obj.contains("elapsed"));
    CHECK(c.err.empty());
    for (const char *key : {"C", "truncation_bound", "rounding_bound", "newton_residual", "C_uncertainty", "c", "exp_c_minus_1"}) {
        CHECK(obj[key].is_string());
    }

    const Outcome v = invoke({"critical-c", "--N", "10000", "--verbose"});
    CHECK(nlohmann::json::parse(v.out).contains("elapsed"));
    CHECK(contains(v.err, "critical-c"));

    const Outcome refused = invoke({"critical-c", "--N", "1000000", "--precision", "20"});
    CHECK(refused.code == 4);
    CHECK_FALSE(refused.err.empty());
}

TEST_CASE("sums, s1 and bootstrap")
{
    const auto s3 = nlohmann::json::parse(invoke({"sums", "--m", "3", "--digits", "12"}).out);
    CHECK(s3["value"] == "0.159488853036");
    CHECK(s3["m"] == 3);
    CHECK(invoke({"sums", "--m", "1"}).code == 2);
    CHECK(invoke({"sums", "--m", "3", "--digits", "31"}).code == 4);

    const auto s1 = nlohmann::json::parse(invoke({"s1"}).out);
    CHECK(s1["value"] == "-1.60196478");

    const Outcome b = invoke({"bootstrap", "--digits", "4"});
    REQUIRE(b.code == 0);
    const auto obj = nlohmann::json::parse(b.out);
    CHECK(std::abs(std::stod(obj["residual"].get<std::string>())) < 1e-4);
}

TEST_CASE("residual-check and diverge-check")
{
    const auto r = nlohmann::json::parse(invoke({"residual-check", "--order", "3", "--k", "100,1000,10000", "--format", "json"}).out);
    CHECK(r["points"].size() == 3);
    CHECK(std::abs(std::stod(r["slope"].get<std::string>()) + 4) < 0.15);
    CHECK(invoke({"residual-check", "--k", "5,100"}).code == 2);

    const auto d = nlohmann::json::parse(invoke({"diverge-check", "--N", "10000"}).out);
    CHECK(std::abs(std::stod(d["difference"].get<std::string>())) < 1e-2);
    CHECK(invoke({"diverge-check", "--N", "50"}).code == 2);
}

TEST_CASE("output is deterministic")
{
    const std::vector<std::vector<std::string>> configs = {
        {"table1", "--digits", "20", "--format", "json"},
        {"critical-c", "--N", "100000"},
        {"derive", "--order", "6", "--format", "json"},
        {"sums", "--m", "5", "--digits", "14", "--format", "csv"},
    };
    for (const auto &cfg : configs) {
        const Outcome a = invoke(cfg);
        const Outcome b = invoke(cfg);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("usage errors")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"table1", "--format", "yaml"}).code == 2);
    CHECK(invoke({"table1", "--format", "latex"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}
