#include "qimp/cli.hpp"

#include "qimp/analytic.hpp"
#include "qimp/errors.hpp"
#include "qimp/kernels.hpp"
#include "qimp/version.hpp"

#include <json.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

namespace qimp::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Short, stable tag for file names ("0.5", "2", "6").
std::string tag(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

/// A rectangular table with optional (empty) cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::vector<std::string>> text_rows;  ///< used instead of rows when non-empty

    std::string csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            os << (i ? "," : "") << columns[i];
        }
        os << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (i ? "," : "") << (r[i] ? num(*r[i]) : "");
            }
            os << '\n';
        }
        for (const auto& r : text_rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (i ? "," : "") << r[i];
            }
            os << '\n';
        }
        return os.str();
    }

    json to_json() const {
        json j;
        j["columns"] = columns;
        json data = json::array();
        for (const auto& r : rows) {
            json row = json::array();
            for (const auto& cell : r) {
                row.push_back(cell ? json(*cell) : json(nullptr));
            }
            data.push_back(std::move(row));
        }
        for (const auto& r : text_rows) {
            data.push_back(r);
        }
        j["rows"] = std::move(data);
        return j;
    }
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
}

json params_json(const SystemParams& p) {
    json j;
    j["epsilon"] = p.epsilon;
    j["delta"] = p.delta;
    j["v"] = p.v;
    j["epsilon_I"] = p.epsilon_I;
    if (p.beta.is_infinite_temperature()) {
        j["beta"] = "infinite";
    } else {
        j["beta"] = p.beta.value();
    }
    j["gamma_minus"] = p.gamma_minus;
    j["gamma_plus"] = p.gamma_plus();
    j["gamma"] = p.gamma();
    j["g"] = p.g();
    j["delta_p0"] = p.delta_p0;
    return j;
}

json base_meta(const RunConfig& cfg, std::string_view command) {
    json j;
    j["tool"] = "qimp";
    j["version"] = kVersion;
    j["command"] = command;
    j["config_hash"] = cfg.hash;
    json entries;
    for (const auto& [k, v] : cfg.entries) {
        if (k != "output.dir") {
            entries[k] = v;
        }
    }
    j["config"] = std::move(entries);
    return j;
}

/// Writes stem.csv / stem.json according to the format, plus stem.meta.json.
std::vector<std::string> emit(const RunConfig& cfg, const std::string& stem, const Table& t, json meta) {
    std::vector<std::string> files;
    if (cfg.format != OutputFormat::Json) {
        write_file(cfg.out_dir / (stem + ".csv"), t.csv());
        files.push_back(stem + ".csv");
    }
    if (cfg.format != OutputFormat::Csv) {
        json data = t.to_json();
        data["config_hash"] = cfg.hash;
        write_file(cfg.out_dir / (stem + ".json"), data.dump(1) + "\n");
        files.push_back(stem + ".json");
    }
    meta["files"] = files;
    write_file(cfg.out_dir / (stem + ".meta.json"), meta.dump(2) + "\n");
    return files;
}

void prepare_out_dir(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec || !fs::is_directory(cfg.out_dir)) {
        throw ConfigError("cannot create output directory " + cfg.out_dir.string());
    }
}

Table trajectory_table(const Trajectory& tr, const SystemParams& p, Approach a, cplx c0) {
    Table t;
    t.columns = {"t",      "re_coh_num", "im_coh_num", "abs_coh_num", "re_coh_ana", "im_coh_ana", "abs_coh_ana",
                 "pop_q0", "pop_q1",     "pop_i0",     "pop_i1",      "trace_dev",  "min_eig"};
    const bool analytic = p.delta == 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const cplx num_coh = tr.coherence[i];
        std::optional<double> re, im, ab;
        if (analytic) {
            const cplx ana = analytic_lambda(a, tr.times[i], p) * c0;
            re = ana.real();
            im = ana.imag();
            ab = std::abs(ana);
        }
        t.rows.push_back({tr.times[i], num_coh.real(), num_coh.imag(), std::abs(num_coh), re, im, ab,
                          tr.qubit_populations[i][0], tr.qubit_populations[i][1], tr.impurity_populations[i][0],
                          tr.impurity_populations[i][1], tr.diagnostics[i].trace_deviation,
                          tr.diagnostics[i].min_eigenvalue});
    }
    return t;
}

Trajectory run_one(const SystemParams& p, Approach a, const std::vector<double>& times, Integrator integ,
                   QubitPreparation prep) {
    std::vector<std::string> warnings;
    Trajectory tr = simulate(p, a, times, integ, prep, &warnings);
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    return tr;
}

std::string_view integrator_name(Integrator i) {
    return i == Integrator::Exponential ? "expm" : "rk45";
}

constexpr const char* kCoherencePlot = R"PY(#!/usr/bin/env python3
# Coherence modulus overlay. Generated by qimp; config hash %HASH%.
import csv
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
RUNS = %RUNS%


def load(name):
    with open(os.path.join(HERE, name), newline="") as f:
        rows = list(csv.DictReader(f))
    t = [float(r["t"]) for r in rows]
    a = [float(r["abs_coh_num"]) for r in rows]
    return t, [x / a[0] for x in a] if a and a[0] else a


fig, ax = plt.subplots(figsize=(6, 4))
for label, name, gamma in RUNS:
    t, a = load(name)
    ax.plot([gamma * x for x in t], a, label=label)
ax.set_xlabel("gamma t")
ax.set_ylabel("|coherence(t)| / |coherence(0)|")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "%PNG%"), dpi=150)
)PY";

constexpr const char* kDiagramPlot = R"PY(#!/usr/bin/env python3
# Regime diagram. Generated by qimp; config hash %HASH%.
import csv
import os

import matplotlib.pyplot as plt
from matplotlib.colors import ListedColormap

HERE = os.path.dirname(os.path.abspath(__file__))
LABELS = ["Neither", "LocalOnly", "GlobalOnly", "Both"]
COLORS = ["#bbbbbb", "#d62728", "#1f77b4", "#9467bd"]

with open(os.path.join(HERE, "diagram.csv"), newline="") as f:
    rows = list(csv.DictReader(f))
vs = sorted({float(r["v"]) for r in rows})
gs = sorted({float(r["gamma"]) for r in rows})
grid = [[0] * len(vs) for _ in gs]
for r in rows:
    grid[gs.index(float(r["gamma"]))][vs.index(float(r["v"]))] = LABELS.index(r["label"])

fig, ax = plt.subplots(figsize=(6, 5))
ax.pcolormesh(vs, gs, grid, cmap=ListedColormap(COLORS), vmin=-0.5, vmax=3.5, shading="nearest")
ax.set_xlabel("v")
ax.set_ylabel("gamma")
handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in COLORS]
ax.legend(handles, LABELS, loc="upper left")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "diagram.png"), dpi=150)
)PY";

std::string fill(std::string tpl, const std::vector<std::pair<std::string, std::string>>& subs) {
    for (const auto& [key, value] : subs) {
        for (auto pos = tpl.find(key); pos != std::string::npos; pos = tpl.find(key, pos + value.size())) {
            tpl.replace(pos, key.size(), value);
        }
    }
    return tpl;
}

struct PlotRun {
    std::string label;
    std::string file;
    double gamma;
};

void emit_coherence_plot(const RunConfig& cfg, const std::string& script, const std::string& png,
                         const std::vector<PlotRun>& runs) {
    std::string list = "[";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        list += (i ? ", " : "") + std::string("(\"") + runs[i].label + "\", \"" + runs[i].file + "\", " + num(runs[i].gamma) + ")";
    }
    list += "]";
    write_file(cfg.out_dir / script, fill(kCoherencePlot, {{"%HASH%", cfg.hash}, {"%RUNS%", list}, {"%PNG%", png}}));
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    const std::vector<double> times = cfg.simulate_grid.values(p.gamma());
    prepare_out_dir(cfg);
    std::vector<PlotRun> plotted;
    for (const Approach a : cfg.simulate_approaches) {
        const Trajectory tr = run_one(p, a, times, cfg.simulate_integrator, cfg.prep);
        const std::string stem = "trajectory_" + std::string(to_string(a));
        json meta = base_meta(cfg, "simulate");
        meta["approach"] = to_string(a);
        meta["integrator"] = integrator_name(cfg.simulate_integrator);
        meta["kernels"] = kernels::isa_name(kernels::active().isa);
        meta["params"] = params_json(p);
        meta["regime"] = to_string(classify(p.v, p.gamma(), p, cfg.diagram.eta));
        meta["analytic_columns"] = p.delta == 0.0;
        emit(cfg, stem, trajectory_table(tr, p, a, cfg.prep.coherence), std::move(meta));
        plotted.push_back({std::string(to_string(a)), stem + ".csv", p.gamma()});
    }
    if (cfg.plot_script && cfg.format != OutputFormat::Json) {
        emit_coherence_plot(cfg, "plot_simulate.py", "simulate.png", plotted);
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.g_list.empty()) {
        throw ConfigError("sweep.g_list is empty");
    }
    struct Point {
        SystemParams p;
        std::vector<double> times;
        std::vector<Trajectory> runs;  // one per approach
    };
    std::vector<Point> points;
    for (const double g : cfg.g_list) {
        Point pt{with_crossover_parameter(cfg.params, g), {}, {}};
        pt.times = cfg.sweep_grid.values(pt.p.gamma());
        points.push_back(std::move(pt));
    }
    prepare_out_dir(cfg);

    // Points are independent; results are collected by index so output
    // does not depend on scheduling.
    std::vector<std::future<std::vector<Trajectory>>> jobs;
    for (const Point& pt : points) {
        jobs.push_back(std::async(std::launch::async, [&cfg, &pt] {
            std::vector<Trajectory> out;
            for (const Approach a : cfg.sweep_approaches) {
                out.push_back(run_one(pt.p, a, pt.times, cfg.sweep_integrator, cfg.prep));
            }
            return out;
        }));
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        points[i].runs = jobs[i].get();
    }

    Table summary;
    summary.columns = {"g", "approach", "crossover_class", "first_min_time", "initial_decay_rate", "max_overlay_gap"};
    std::vector<PlotRun> plotted;
    json sweep_meta = base_meta(cfg, "sweep");
    json per_g = json::array();
    const bool both = cfg.sweep_approaches.size() == 2;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& pt = points[i];
        const double g = cfg.g_list[i];
        std::optional<double> gap;
        if (both) {
            double worst = 0.0;
            const double c0 = std::abs(cfg.prep.coherence);
            for (std::size_t k = 0; k < pt.times.size(); ++k) {
                worst = std::max(worst, std::abs(std::abs(pt.runs[0].coherence[k]) - std::abs(pt.runs[1].coherence[k])));
            }
            gap = c0 > 0.0 ? worst / c0 : worst;
        }
        for (std::size_t r = 0; r < cfg.sweep_approaches.size(); ++r) {
            const Approach a = cfg.sweep_approaches[r];
            const Trajectory& tr = pt.runs[r];
            const std::string stem = "sweep_g" + tag(g) + "_" + std::string(to_string(a));
            json meta = base_meta(cfg, "sweep");
            meta["approach"] = to_string(a);
            meta["integrator"] = integrator_name(cfg.sweep_integrator);
            meta["params"] = params_json(pt.p);
            meta["regime"] = to_string(classify(pt.p.v, pt.p.gamma(), pt.p, cfg.diagram.eta));
            emit(cfg, stem, trajectory_table(tr, pt.p, a, cfg.prep.coherence), std::move(meta));
            plotted.push_back({"g=" + tag(g) + " " + std::string(to_string(a)), stem + ".csv", pt.p.gamma()});

            std::vector<double> mod(tr.coherence.size());
            std::transform(tr.coherence.begin(), tr.coherence.end(), mod.begin(), [](cplx c) { return std::abs(c); });
            const auto imin = first_interior_minimum(mod);
            const auto rate = fitted_initial_decay_rate(tr.times, mod, tr.times.front() + cfg.fit_window_gamma / pt.p.gamma());
            const auto opt = [](const std::optional<double>& x) { return x ? num(*x) : std::string(); };
            summary.text_rows.push_back({num(g), std::string(to_string(a)), std::string(to_string(crossover_class(g))),
                                         imin ? num(tr.times[*imin]) : std::string(), opt(rate), opt(gap)});
        }
        json entry;
        entry["g"] = g;
        entry["gamma"] = pt.p.gamma();
        entry["crossover_class"] = to_string(crossover_class(g));
        entry["max_overlay_gap"] = gap ? json(*gap) : json(nullptr);
        per_g.push_back(std::move(entry));
    }
    sweep_meta["points"] = std::move(per_g);
    emit(cfg, "sweep_summary", summary, std::move(sweep_meta));
    if (cfg.plot_script && cfg.format != OutputFormat::Json) {
        emit_coherence_plot(cfg, "plot_sweep.py", "sweep.png", plotted);
    }
    return kExitOk;
}

int cmd_diagram(const RunConfig& cfg) {
    const RegimeDiagram dia = regime_diagram(cfg.diagram);
    prepare_out_dir(cfg);
    Table t;
    t.columns = {"v", "gamma", "label"};
    std::map<std::string, std::size_t> counts;
    for (std::size_t iv = 0; iv < dia.v_axis.size(); ++iv) {
        for (std::size_t ig = 0; ig < dia.gamma_axis.size(); ++ig) {
            const std::string label(to_string(dia.at(iv, ig)));
            ++counts[label];
            t.text_rows.push_back({num(dia.v_axis[iv]), num(dia.gamma_axis[ig]), label});
        }
    }
    const auto axis = [](const AxisRange& r) {
        json j;
        j["min"] = r.min;
        j["max"] = r.max;
        j["steps"] = r.steps;
        j["scale"] = "linear";
        return j;
    };
    const SystemParams& p = cfg.diagram.fixed;
    json meta = base_meta(cfg, "diagram");
    meta["v_axis"] = axis(cfg.diagram.v_range);
    meta["gamma_axis"] = axis(cfg.diagram.gamma_range);
    meta["eta"] = cfg.diagram.eta;
    meta["local_boundary_v"] = cfg.diagram.eta * std::min(p.omega(), p.epsilon_I);
    meta["global_boundary"] = "gamma = 2 v";
    meta["fixed_params"] = {{"epsilon", p.epsilon}, {"delta", p.delta}, {"epsilon_I", p.epsilon_I}};
    meta["label_counts"] = counts;
    emit(cfg, "diagram", t, std::move(meta));
    if (cfg.plot_script && cfg.format != OutputFormat::Json) {
        write_file(cfg.out_dir / "plot_diagram.py", fill(kDiagramPlot, {{"%HASH%", cfg.hash}}));
    }
    return kExitOk;
}

int cmd_validate(const RunConfig& cfg) {
    const auto results = run_acceptance(cfg.validation);
    json report = base_meta(cfg, "validate");
    report["kernels"] = kernels::isa_name(kernels::active().isa);
    json checks = json::array();
    bool all = true;
    for (const auto& r : results) {
        std::cout << format_check_line(r) << '\n';
        all = all && r.passed;
        checks.push_back({{"id", r.id},
                          {"name", r.name},
                          {"passed", r.passed},
                          {"measured", r.measured},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    report["checks"] = std::move(checks);
    report["passed"] = all;
    prepare_out_dir(cfg);
    write_file(cfg.out_dir / "validation_report.json", report.dump(2) + "\n");
    std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
    return all ? kExitOk : kExitValidationFailed;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const InvariantViolation& e) {
        std::cerr << "error: physics invariant violated at t=" << e.time() << " (value " << e.value()
                  << "): " << e.what() << '\n';
        return kExitInvariantViolation;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ParameterError& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DegenerateAngle& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const AmbiguousClustering& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitConfigError;
    }
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Qubit coupled to a dissipative impurity: local vs global master equations", "qimp"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    bool plot = false;
    std::vector<std::string> assignments;
    app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (default: $QIMP_OUT or ./qimp_out)");
    app.add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
    app.add_flag("--plot-script", plot, "also write a matplotlib script");
    app.add_option("--set", assignments, "override section.key=value (repeatable)");

    std::map<std::string, std::string> shortcuts;
    const auto shortcut = [&shortcuts](CLI::App* sub, const std::string& flag, const std::string& key,
                                       const std::string& help) {
        sub->add_option_function<std::string>(
            flag, [&shortcuts, key](const std::string& v) { shortcuts[key] = v; }, help);
    };
    CLI::App* sim = app.add_subcommand("simulate", "evolve one parameter set");
    shortcut(sim, "--approach", "simulate.approach", "local, global or both");
    shortcut(sim, "--integrator", "simulate.integrator", "expm or rk45");
    CLI::App* sweep = app.add_subcommand("sweep", "trajectories over a list of g = 2v/gamma");
    shortcut(sweep, "--g-list", "sweep.g_list", "comma-separated g values");
    shortcut(sweep, "--approach", "sweep.approach", "local, global or both");
    CLI::App* diagram = app.add_subcommand("diagram", "local/global validity regions over (v, gamma)");
    CLI::App* validate = app.add_subcommand("validate", "run the acceptance checks");
    shortcut(validate, "--tolerance", "validate.tolerance", "override residual tolerances");
    for (CLI::App* sub : {sim, sweep, diagram, validate}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    return run_guarded([&]() -> int {
        KeyValues kv = default_entries();
        if (!config_path.empty()) {
            merge_ini(kv, config_path);
        }
        for (const auto& a : assignments) {
            apply_assignment(kv, a);
        }
        for (const auto& [k, v] : shortcuts) {
            set_entry(kv, k, v);
        }
        if (out_dir) {
            set_entry(kv, "output.dir", *out_dir);
        }
        if (format) {
            set_entry(kv, "output.format", *format);
        }
        if (plot) {
            set_entry(kv, "output.plot_script", "true");
        }
        const RunConfig cfg = resolve(kv);
        if (sim->parsed()) {
            return cmd_simulate(cfg);
        }
        if (sweep->parsed()) {
            return cmd_sweep(cfg);
        }
        if (diagram->parsed()) {
            return cmd_diagram(cfg);
        }
        return cmd_validate(cfg);
    });
}

}  // namespace qimp::cli
