#include "qhahn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "qhahn/config.hpp"
#include "qhahn/errors.hpp"
#include "qhahn/measures.hpp"
#include "qhahn/momentlab.hpp"
#include "qhahn/verify.hpp"

namespace qhahn {

namespace {

using nlohmann::ordered_json;

struct Output {
    std::string text;
    int code = kExitOk;
};

ordered_json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string csv_num(double v) { return fmt::format("{}", v); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

ordered_json params_json(const RunConfig& cfg) {
    return {{"q", cfg.q}, {"a", cfg.a}, {"b", cfg.b}, {"c", cfg.c}};
}

ordered_json header_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = to_string(cfg.command);
    j["config"] = canonical_args(cfg);
    j["seed"] = cfg.seed;
    j["params"] = params_json(cfg);
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// Numeric table with a header row, emitted as CSV or as JSON columns/rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string render(const RunConfig& cfg, ordered_json head) const {
        if (cfg.output == OutputFormat::csv) {
            std::string out;
            for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
            out += "\n";
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_num(r[i]);
                out += "\n";
            }
            return out;
        }
        head["columns"] = columns;
        auto jrows = ordered_json::array();
        for (const auto& r : rows) {
            auto jr = ordered_json::array();
            for (double v : r) jr.push_back(jnum(v));
            jrows.push_back(std::move(jr));
        }
        head["rows"] = std::move(jrows);
        return dump(head);
    }
};

std::vector<double> eval_points(const RunConfig& cfg) {
    if (!cfg.u.empty()) return cfg.u;
    return sample_points(cfg.seed, cfg.points, -3.0, 3.0);
}

Output cmd_eval(const RunConfig& cfg) {
    const auto p = cfg.params();
    std::vector<int> degrees;
    if (cfg.n) {
        degrees.push_back(*cfg.n);
    } else {
        for (int n = 0; n <= cfg.N; ++n) degrees.push_back(n);
    }
    const int top = *std::max_element(degrees.begin(), degrees.end());
    const auto table = rotated_table_unchecked(p, std::max(top - 1, 0));
    Table t;
    t.columns = {"n", "u", "x", "value_recurrence", "value_series", "abs_diff"};
    for (int n : degrees) {
        for (double u : eval_points(cfg)) {
            const auto pt = HyperPoint::from_u(u);
            const double rec = eval_monic_sequence(table, pt.x(), n).back();
            const double ser = eval_qhahn_series(n, pt, p);
            t.rows.push_back({static_cast<double>(n), u, pt.x(), rec, ser, std::abs(rec - ser)});
        }
    }
    return {t.render(cfg, header_json(cfg)), kExitOk};
}

Output cmd_verify(const RunConfig& cfg) {
    const auto checks = run_suite(cfg.suite, verify_options(cfg));
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    const int code = ok ? kExitOk : kExitCheckFailed;
    if (cfg.output == OutputFormat::csv) {
        std::string out = "name,residual,tol,pass,runtime_ms\n";
        for (const auto& c : checks) {
            out += fmt::format("{},{},{},{},{}\n", csv_field(c.name), csv_num(c.residual),
                               csv_num(c.tol), c.pass ? "true" : "false", csv_num(c.runtime_ms));
        }
        return {out, code};
    }
    auto j = header_json(cfg);
    j["suite"] = cfg.suite;
    auto arr = ordered_json::array();
    double total = 0.0;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"residual", jnum(c.residual)},
                       {"tol", jnum(c.tol)},
                       {"pass", c.pass},
                       {"runtime_ms", c.runtime_ms}});
        total += c.runtime_ms;
    }
    j["checks"] = std::move(arr);
    j["pass"] = ok;
    j["total_runtime_ms"] = total;
    return {dump(j), code};
}

Output cmd_classify(const RunConfig& cfg) {
    DeterminacyVerdict v;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        v = chihara_classify(cfg.params(), cfg.n_max);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonpositiveC) throw;
        v = {};
        v.n_max = cfg.n_max;
        v.L_estimate = v.liminf_estimate = v.threshold = v.f_window_min = v.f_window_max = nan;
        v.L_limit_formula = cfg.q / ((1.0 + cfg.q) * (1.0 + cfg.q));
        v.verdict = Verdict::inconclusive;
        v.reason = e.what();
    }
    if (cfg.output == OutputFormat::csv) {
        std::string out = "field,value\n";
        out += "verdict," + to_string(v.verdict) + "\n";
        out += "reason," + csv_field(v.reason) + "\n";
        const std::pair<const char*, double> nums[] = {
            {"L_estimate", v.L_estimate},       {"L_limit_formula", v.L_limit_formula},
            {"liminf_estimate", v.liminf_estimate}, {"threshold", v.threshold},
            {"f_window_min", v.f_window_min},   {"f_window_max", v.f_window_max}};
        for (const auto& [k, x] : nums) out += fmt::format("{},{}\n", k, csv_num(x));
        out += fmt::format("n_max,{}\nwindow_start,{}\nreflected,{}\n", v.n_max, v.window_start,
                           v.reflected ? "true" : "false");
        return {out, kExitOk};
    }
    auto j = header_json(cfg);
    j["verdict"] = to_string(v.verdict);
    j["reason"] = v.reason;
    j["L_estimate"] = jnum(v.L_estimate);
    j["L_limit_formula"] = jnum(v.L_limit_formula);
    j["liminf_estimate"] = jnum(v.liminf_estimate);
    j["threshold"] = jnum(v.threshold);
    j["n_max"] = v.n_max;
    j["window_start"] = v.window_start;
    j["reflected"] = v.reflected;
    j["f_window_min"] = jnum(v.f_window_min);
    j["f_window_max"] = jnum(v.f_window_max);
    return {dump(j), kExitOk};
}

WeightSpec weight_of(const RunConfig& cfg) {
    switch (cfg.weight) {
        case WeightChoice::full: return WeightSpec::full(cfg.params());
        case WeightChoice::hermite: return WeightSpec::hermite(cfg.q);
        case WeightChoice::n_factor: return WeightSpec::n_factor_only(cfg.params());
        case WeightChoice::asc: return WeightSpec::al_salam_chihara(cfg.q, cfg.ar, cfg.br);
    }
    return WeightSpec::full(cfg.params());
}

Output cmd_table(const RunConfig& cfg) {
    const auto quad = quad_config(cfg);
    auto head = header_json(cfg);
    head["kind"] = to_string(cfg.table);
    Table t;
    switch (cfg.table) {
        case TableKind::weight: {
            const auto w = weight_of(cfg);
            w.validate();
            head["weight"] = to_string(cfg.weight);
            const auto grid = linspace(cfg.grid_lo, cfg.grid_hi, static_cast<std::size_t>(cfg.grid_points));
            const auto vals = evaluate_on_grid([&w](const HyperPoint& pt) { return w(pt); }, grid, quad.exec);
            t.columns = {"u", "x", "weight"};
            for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], std::sinh(grid[i]), vals[i]});
            break;
        }
        case TableKind::moments: {
            head["weight"] = to_string(cfg.weight);
            const auto mt = moments(cfg.K, weight_of(cfg), quad);
            t.columns = {"k", "mu", "err"};
            for (std::size_t k = 0; k < mt.mu.size(); ++k)
                t.rows.push_back({static_cast<double>(k), mt.mu[k], mt.err[k]});
            break;
        }
        case TableKind::gram: {
            const auto g = gram_matrix(cfg.N, cfg.params(), WeightSpec::full(cfg.params()), quad);
            t.columns = {"m", "n", "value", "err"};
            for (int m = 0; m <= cfg.N; ++m)
                for (int n = 0; n <= cfg.N; ++n)
                    t.rows.push_back({static_cast<double>(m), static_cast<double>(n), g.value[m][n], g.err[m][n]});
            break;
        }
        case TableKind::nevanlinna: {
            const bool herm = cfg.weight == WeightChoice::hermite;
            head["family"] = herm ? "q_inv_hermite" : "rotated";
            const auto table = herm ? RecurrenceTable::q_inv_hermite(cfg.q, cfg.N + 1)
                                    : RecurrenceTable::from_params(cfg.params(), cfg.N + 1, RecurrenceKind::rotated);
            t.columns = {"n",    "re_z", "im_z", "re_A", "im_A", "re_B",   "im_B",
                         "re_C", "im_C", "re_D", "im_D", "re_det", "im_det"};
            for (double y : linspace(cfg.grid_lo, cfg.grid_hi, static_cast<std::size_t>(cfg.grid_points))) {
                for (int n = 0; n <= cfg.N; ++n) {
                    const auto r = nevanlinna_quad(n, {0.0, y}, table);
                    t.rows.push_back({static_cast<double>(n), 0.0, y, r.A.real(), r.A.imag(), r.B.real(),
                                      r.B.imag(), r.C.real(), r.C.imag(), r.D.real(), r.D.imag(),
                                      r.det.real(), r.det.imag()});
                }
            }
            break;
        }
    }
    return {t.render(cfg, head), kExitOk};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    Output result;
    try {
        cfg = parse_run_config(args);
        switch (cfg.command) {
            case Command::eval: result = cmd_eval(cfg); break;
            case Command::verify: result = cmd_verify(cfg); break;
            case Command::classify: result = cmd_classify(cfg); break;
            case Command::table: result = cmd_table(cfg); break;
        }
    } catch (const HelpRequested& h) {
        out << h.text;
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const bool sampled = cfg.command == Command::verify ||
                         (cfg.command == Command::eval && cfg.u.empty());
    if (sampled) err << "seed: " << cfg.seed << "\n";

    if (cfg.output_path.empty()) {
        out << result.text;
        out.flush();
        if (!out) {
            err << "error: failed writing output\n";
            return kExitUsage;
        }
        return result.code;
    }
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    file << result.text;
    file.close();
    if (!file) {
        err << "error: cannot write " << cfg.output_path << "\n";
        return kExitUsage;
    }
    return result.code;
}

}  // namespace qhahn
