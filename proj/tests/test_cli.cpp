#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qhahn/cli.hpp"
#include "qhahn/config.hpp"
#include "qhahn/errors.hpp"
#include "qhahn/measures.hpp"

using namespace qhahn;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("eval agrees with the series form") {
    const auto r = run({"eval", "--q", "0.5", "--a", "2", "--b", "3", "--c", "5", "--n", "4", "--u", "0.3"});
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["command"] == "eval");
    CHECK(j["seed"] == 20240607);
    CHECK(j["params"]["q"] == 0.5);
    REQUIRE(j["rows"].size() == 1);
    const auto& row = j["rows"][0];
    CHECK(row[0] == 4);
    CHECK(row[5].get<double>() < 1e-10);
    CHECK(r.err.empty());  // no sampled points, no seed line
}

TEST_CASE("eval at degree zero and on sampled points") {
    const auto r = run({"eval", "--n", "0", "--u", "-1,0,2"});
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 3);
    for (const auto& row : j["rows"]) {
        CHECK(row[3] == 1.0);
        CHECK(row[4] == 1.0);
    }
    const auto s = run({"eval", "--points", "5", "--N", "3"});
    REQUIRE(s.code == kExitOk);
    CHECK(s.err.find("seed: 20240607") != std::string::npos);
    const auto js = json::parse(s.out);
    CHECK(js["rows"].size() == 5 * 4);
    for (const auto& row : js["rows"]) CHECK(row[5].get<double>() < 1e-10);
}

TEST_CASE("inadmissible parameters and usage errors exit 2") {
    auto r = run({"eval", "--q", "1.5"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("0<q<1") != std::string::npos);
    CHECK(r.out.empty());
    r = run({"eval", "--a", "-0.5", "--b", "1"});
    CHECK(r.code == kExitUsage);
    CHECK(run({"eval", "--bogus", "1"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"verify", "--suite", "nope"}).code == kExitUsage);
    CHECK(run({"classify", "--n-max", "10"}).code == kExitUsage);
    CHECK(run({"table", "--table", "moments", "--K", "40"}).code == kExitUsage);
    CHECK(run({"eval", "--precision-digits", "0"}).code == kExitUsage);
    const auto h = run({"--help"});
    CHECK(h.code == kExitOk);
    CHECK(h.out.find("--precision-digits") != std::string::npos);
}

TEST_CASE("verify reports and exit codes") {
    auto r = run({"verify", "--suite", "orth", "--N", "6"});
    REQUIRE(r.code == kExitOk);
    auto j = json::parse(r.out);
    CHECK(j["suite"] == "orth");
    CHECK(j["pass"] == true);
    CHECK(j["total_runtime_ms"].get<double>() >= 0.0);
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("tol"));
        CHECK(c["pass"] == true);
        CHECK(c.contains("runtime_ms"));
    }

    r = run({"verify", "--suite", "sl", "--n", "0", "--output", "csv"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("name,residual,tol,pass,runtime_ms\n", 0) == 0);
    CHECK(r.out.find("sturm-liouville n=0,0,0,true,") != std::string::npos);

    CHECK(run({"verify", "--suite", "limits"}).code == kExitOk);
    // an impossible tolerance makes checks fail
    r = run({"verify", "--suite", "lowering", "--tol", "1e-300"});
    CHECK(r.code == kExitCheckFailed);
    CHECK(json::parse(r.out)["pass"] == false);
}

TEST_CASE("classify") {
    auto r = run({"classify"});
    REQUIRE(r.code == kExitOk);
    auto j = json::parse(r.out);
    CHECK(j["verdict"] == "indeterminate");
    CHECK(std::abs(j["L_limit_formula"].get<double>() - 2.0 / 9.0) < 1e-15);
    CHECK(std::abs(j["L_estimate"].get<double>() - 2.0 / 9.0) < 1e-6);
    CHECK(j["n_max"] == 200);
    CHECK(j["window_start"] == 150);

    r = run({"classify", "--q", "0.9", "--a", "6.52", "--b", "6.52", "--c", "6.52", "--n-max", "50"});
    REQUIRE(r.code == kExitOk);
    j = json::parse(r.out);
    CHECK(j["verdict"] == "inconclusive");
    CHECK(j["reason"].get<std::string>().find("NonpositiveC") != std::string::npos);
    CHECK(j["L_estimate"].is_null());

    r = run({"classify", "--output", "csv"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("verdict,indeterminate\n") != std::string::npos);
}

TEST_CASE("weight table integrates to k_0") {
    const auto r = run({"table", "--table", "weight", "--grid-lo", "-12", "--grid-hi", "12", "--grid-points",
                        "4801"});
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["kind"] == "weight");
    CHECK(j["weight"] == "full");
    const auto& rows = j["rows"];
    double sum = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x0 = rows[i - 1][1], x1 = rows[i][1];
        const double w0 = rows[i - 1][2], w1 = rows[i][2];
        sum += 0.5 * (x1 - x0) * (w0 + w1);
    }
    const double k0 = norm_kn(0, {0.5, 2.0, 3.0, 5.0});
    CHECK(std::abs(sum - k0) < 1e-3 * k0);
}

TEST_CASE("other tables") {
    for (const char* kind : {"moments", "gram", "nevanlinna"}) {
        CAPTURE(kind);
        const auto r = run({"table", "--table", kind, "--N", "5", "--K", "8"});
        REQUIRE(r.code == kExitOk);
        const auto j = json::parse(r.out);
        CHECK(j["kind"] == kind);
        CHECK(!j["rows"].empty());
    }
    for (const char* w : {"hermite", "n_factor", "asc"}) {
        CAPTURE(w);
        const auto r = run({"table", "--weight", w, "--grid-points", "11", "--output", "csv"});
        REQUIRE(r.code == kExitOk);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 12);
    }
}

TEST_CASE("empty grid gives a header only") {
    auto r = run({"table", "--grid-points", "0", "--output", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "u,x,weight\n");
    r = run({"table", "--grid-points", "0"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["rows"].empty());
}

TEST_CASE("output is byte-identical across runs") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"eval", "--points", "7"}, {"classify"}, {"table", "--table", "gram", "--N", "4"},
             {"table", "--serial"}}) {
        CHECK(run(args).out == run(args).out);
    }
    // parallel and serial quadrature agree bit for bit
    const auto a = run({"table", "--table", "gram", "--N", "4"});
    const auto b = run({"table", "--table", "gram", "--N", "4", "--serial"});
    CHECK(json::parse(a.out)["rows"] == json::parse(b.out)["rows"]);
}

TEST_CASE("canonical args parse back to the same configuration") {
    const auto cfg = parse_run_config(split(
        "verify --q 0.3 --a 1.5 --b 4 --c 7 --n 2 --u 0.1,-0.7 --tol 1e-6 --suite sl --adaptive --serial"));
    CHECK(cfg.command == Command::verify);
    CHECK(cfg.u == std::vector<double>{0.1, -0.7});
    CHECK(cfg.tol == 1e-6);
    CHECK(cfg.adaptive);
    const auto back = parse_run_config(split(canonical_args(cfg)));
    CHECK(back == cfg);
    const auto def = parse_run_config({"table"});
    CHECK(parse_run_config(split(canonical_args(def))) == def);
}

TEST_CASE("config file, environment and flag precedence") {
    const std::filesystem::path file = "test_cli_config.ini";
    {
        std::ofstream f(file);
        f << "q=0.3\na=1.5\nprecision-digits=25\nsuite=\"sl\"\n";
    }
    auto cfg = parse_run_config({"verify", "--config", file.string(), "--a", "2.5"});
    CHECK(cfg.q == 0.3);
    CHECK(cfg.a == 2.5);  // flag wins over file
    CHECK(cfg.precision_digits == 25);
    CHECK(cfg.suite == "sl");

    ::setenv(kPrecisionEnv, "20", 1);
    CHECK(parse_run_config({"eval"}).precision_digits == 20);
    CHECK(parse_run_config({"eval", "--config", file.string()}).precision_digits == 25);
    CHECK(parse_run_config({"eval", "--precision-digits", "18"}).precision_digits == 18);
    ::setenv(kPrecisionEnv, "abc", 1);
    CHECK_THROWS_AS(parse_run_config({"eval"}), UsageError);
    ::unsetenv(kPrecisionEnv);
    CHECK(parse_run_config({"eval"}).precision_digits == 15);

    // the generated file text reproduces the configuration
    {
        std::ofstream f(file);
        f << config_file_text(cfg);
    }
    CHECK(parse_run_config({"verify", "--config", file.string()}) == cfg);

    {
        std::ofstream f(file);
        f << "unknown-key=1\n";
    }
    CHECK_THROWS_AS(parse_run_config({"eval", "--config", file.string()}), UsageError);
    CHECK(run({"eval", "--config", "does_not_exist.ini"}).code == kExitUsage);
    std::filesystem::remove(file);
}

TEST_CASE("output path") {
    const std::filesystem::path file = "test_cli_out.csv";
    auto r = run({"eval", "--n", "2", "--u", "0.5", "--output", "csv", "--output-path", file.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.empty());
    const auto text = slurp(file);
    CHECK(text.rfind("n,u,x,value_recurrence,value_series,abs_diff\n", 0) == 0);
    std::filesystem::remove(file);

    r = run({"eval", "--output-path", "no_such_dir/x.json"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("cannot write") != std::string::npos);
}
