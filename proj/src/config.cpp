#include "qhahn/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qhahn/errors.hpp"

namespace qhahn {

namespace {

const std::map<std::string, OutputFormat> kOutputs = {{"json", OutputFormat::json},
                                                      {"csv", OutputFormat::csv}};
const std::map<std::string, TableKind> kTables = {{"weight", TableKind::weight},
                                                  {"moments", TableKind::moments},
                                                  {"gram", TableKind::gram},
                                                  {"nevanlinna", TableKind::nevanlinna}};
const std::map<std::string, WeightChoice> kWeights = {{"full", WeightChoice::full},
                                                      {"hermite", WeightChoice::hermite},
                                                      {"n_factor", WeightChoice::n_factor},
                                                      {"asc", WeightChoice::asc}};

template <class E>
std::string name_of(const std::map<std::string, E>& m, E v) {
    for (const auto& [k, e] : m)
        if (e == v) return k;
    return "?";
}

std::string num(double v) { return fmt::format("{}", v); }

int precision_from_env() {
    const char* env = std::getenv(kPrecisionEnv);
    if (env == nullptr || *env == '\0') return 15;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0') {
        throw UsageError(fmt::format("{}='{}' is not an integer", kPrecisionEnv, env));
    }
    return static_cast<int>(v);
}

// (flag name, value) pairs in canonical order; flags at their default are kept
// so the text is self-contained.
std::vector<std::pair<std::string, std::string>> flag_values(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> kv = {
        {"q", num(c.q)}, {"a", num(c.a)}, {"b", num(c.b)}, {"c", num(c.c)}};
    if (c.n) kv.emplace_back("n", std::to_string(*c.n));
    kv.emplace_back("N", std::to_string(c.N));
    kv.emplace_back("K", std::to_string(c.K));
    kv.emplace_back("n-max", std::to_string(c.n_max));
    if (!c.u.empty()) {
        std::string s;
        for (double v : c.u) s += (s.empty() ? "" : ",") + num(v);
        kv.emplace_back("u", s);
    }
    kv.emplace_back("points", std::to_string(c.points));
    kv.emplace_back("seed", std::to_string(c.seed));
    if (c.tol) kv.emplace_back("tol", num(*c.tol));
    kv.emplace_back("precision-digits", std::to_string(c.precision_digits));
    kv.emplace_back("output", to_string(c.output));
    if (!c.output_path.empty()) kv.emplace_back("output-path", c.output_path);
    kv.emplace_back("suite", c.suite);
    kv.emplace_back("table", to_string(c.table));
    kv.emplace_back("weight", to_string(c.weight));
    kv.emplace_back("ar", num(c.ar));
    kv.emplace_back("br", num(c.br));
    kv.emplace_back("grid-lo", num(c.grid_lo));
    kv.emplace_back("grid-hi", num(c.grid_hi));
    kv.emplace_back("grid-points", std::to_string(c.grid_points));
    kv.emplace_back("panels", std::to_string(c.panels));
    kv.emplace_back("u-max", num(c.u_max));
    if (c.adaptive) kv.emplace_back("adaptive", "true");
    if (c.serial) kv.emplace_back("serial", "true");
    return kv;
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::eval: return "eval";
        case Command::verify: return "verify";
        case Command::classify: return "classify";
        case Command::table: return "table";
    }
    return "?";
}
std::string to_string(OutputFormat f) { return name_of(kOutputs, f); }
std::string to_string(TableKind k) { return name_of(kTables, k); }
std::string to_string(WeightChoice w) { return name_of(kWeights, w); }

RunConfig parse_run_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    cfg.precision_digits = precision_from_env();

    CLI::App app{"Continuous dual q^-1-Hahn polynomials: evaluation, verification, tables", "qhahn"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "flat key=value file; flags given on the command line win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    int n_value = 0;
    double tol_value = 0.0;
    app.add_option("--q", cfg.q, "base, 0<q<1");
    app.add_option("--a", cfg.a);
    app.add_option("--b", cfg.b);
    app.add_option("--c", cfg.c);
    auto* n_opt = app.add_option("--n", n_value, "single degree (eval, verify)");
    app.add_option("--N", cfg.N, "Gram size / largest eval degree");
    app.add_option("--K", cfg.K, "largest moment order");
    app.add_option("--n-max", cfg.n_max, "classifier horizon");
    app.add_option("--u", cfg.u, "eval points in u")->delimiter(',');
    app.add_option("--points", cfg.points, "number of seeded sample points");
    app.add_option("--seed", cfg.seed);
    auto* tol_opt = app.add_option("--tol", tol_value, "replaces every check tolerance");
    app.add_option("--precision-digits", cfg.precision_digits);
    app.add_option("--output", cfg.output)->transform(CLI::CheckedTransformer(kOutputs));
    app.add_option("--output-path,-o", cfg.output_path);
    app.add_option("--suite", cfg.suite);
    app.add_option("--table", cfg.table)->transform(CLI::CheckedTransformer(kTables));
    app.add_option("--weight", cfg.weight)->transform(CLI::CheckedTransformer(kWeights));
    app.add_option("--ar", cfg.ar, "Al-Salam-Chihara parameter");
    app.add_option("--br", cfg.br, "Al-Salam-Chihara parameter");
    app.add_option("--grid-lo", cfg.grid_lo);
    app.add_option("--grid-hi", cfg.grid_hi);
    app.add_option("--grid-points", cfg.grid_points);
    app.add_option("--panels", cfg.panels);
    app.add_option("--u-max", cfg.u_max, "quadrature cutoff, 0 = automatic");
    app.add_flag("--adaptive", cfg.adaptive);
    app.add_flag("--serial", cfg.serial, "disable parallel quadrature");

    const std::pair<const char*, Command> commands[] = {
        {"eval", Command::eval}, {"verify", Command::verify},
        {"classify", Command::classify}, {"table", Command::table}};
    for (const auto& [name, cmd] : commands) {
        app.add_subcommand(name)->fallthrough();
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    for (const auto& [name, cmd] : commands) {
        if (app.got_subcommand(name)) cfg.command = cmd;
    }
    if (n_opt->count() > 0) cfg.n = n_value;
    if (tol_opt->count() > 0) cfg.tol = tol_value;
    validate(cfg);
    return cfg;
}

std::string canonical_args(const RunConfig& cfg) {
    std::string out = to_string(cfg.command);
    for (const auto& [k, v] : flag_values(cfg)) {
        if (v == "true") {
            out += " --" + k;
        } else {
            out += " --" + k + "=" + v;
        }
    }
    return out;
}

std::string config_file_text(const RunConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : flag_values(cfg)) {
        const bool quote = k == "output-path" || k == "suite";
        out += k + "=" + (quote ? "\"" + v + "\"" : v) + "\n";
    }
    return out;
}

void validate(const RunConfig& cfg) {
    if (!(cfg.q > 0.0 && cfg.q < 1.0)) {
        throw Error(ErrorKind::InadmissibleParams, fmt::format("q = {} violates 0<q<1", cfg.q));
    }
    const bool needs_abc = !(cfg.command == Command::table && cfg.table != TableKind::gram &&
                             (cfg.weight == WeightChoice::hermite || cfg.weight == WeightChoice::asc));
    if (needs_abc) require_admissible(cfg.params());

    auto usage = [](bool bad, const std::string& msg) {
        if (bad) throw UsageError(msg);
    };
    usage(cfg.n && *cfg.n < 0, fmt::format("--n must be nonnegative, got {}", cfg.n.value_or(0)));
    usage(cfg.N < 0 || cfg.N > 12, fmt::format("--N must lie in 0..12, got {}", cfg.N));
    usage(cfg.K < 0 || cfg.K > 32, fmt::format("--K must lie in 0..32, got {}", cfg.K));
    usage(cfg.n_max < 50, fmt::format("--n-max must be at least 50, got {}", cfg.n_max));
    usage(cfg.points < 0, "--points must be nonnegative");
    usage(cfg.tol && !(*cfg.tol >= 0.0), "--tol must be nonnegative");
    usage(cfg.precision_digits < 1 || cfg.precision_digits > 50,
          fmt::format("--precision-digits must lie in 1..50, got {}", cfg.precision_digits));
    usage(cfg.grid_points < 0, "--grid-points must be nonnegative");
    usage(!(cfg.grid_lo <= cfg.grid_hi), "--grid-lo must not exceed --grid-hi");
    usage(cfg.panels < 1, "--panels must be positive");
    usage(!(cfg.u_max >= 0.0), "--u-max must be nonnegative");
    usage(!std::isfinite(cfg.ar) || !std::isfinite(cfg.br), "--ar and --br must be finite");
    for (double u : cfg.u) usage(!std::isfinite(u), "--u values must be finite");
    const auto& names = suite_names();
    usage(std::find(names.begin(), names.end(), cfg.suite) == names.end(),
          fmt::format("unknown suite '{}'", cfg.suite));
}

QuadConfig quad_config(const RunConfig& cfg) {
    QuadConfig q;
    q.panels = cfg.panels;
    q.u_max = cfg.u_max;
    q.adaptive = cfg.adaptive;
    q.exec = cfg.serial ? Exec::serial : Exec::parallel;
    return q;
}

VerifyOptions verify_options(const RunConfig& cfg) {
    VerifyOptions o;
    o.params = cfg.params();
    o.n = cfg.n;
    o.N = cfg.N;
    o.K = cfg.K;
    o.points = cfg.points;
    o.seed = cfg.seed;
    o.tol = cfg.tol;
    o.precision_digits = cfg.precision_digits;
    o.quad = quad_config(cfg);
    return o;
}

}  // namespace qhahn
