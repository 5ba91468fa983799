#include "hypdiff/cli.hpp"

#include "hypdiff/brachistochrone.hpp"
#include "hypdiff/kernels.hpp"
#include "hypdiff/specfun.hpp"
#include "hypdiff/transforms.hpp"
#include "hypdiff/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace hypdiff {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
}

std::string csv_quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        q += c;
    }
    q += '"';
    return q;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

// One output row of a value-producing command (eval and the grid commands).
struct ValueRow {
    std::string anchor;
    std::string param;
    double value{0.0};
    double value_im{0.0};
    double est_error{0.0};
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// key=value per line; '#' starts a comment. The "command" key selects the
// subcommand when none is given on the command line; all other keys are
// injected as --key value unless that flag already appears explicitly.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open \"" + path + "\"");
    std::vector<std::pair<std::string, std::string>> kvs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: line " + std::to_string(lineno) + " has no key");
        kvs.emplace_back(key, val);
    }
    return kvs;
}

// Strips --config from the raw arguments and splices the file's settings in:
// explicit flags win, the file fills the rest.
std::vector<std::string> assemble_args(int argc, const char* const* argv,
                                       std::string* config_path) {
    std::vector<std::string> raw;
    for (int i = 1; i < argc; ++i) raw.emplace_back(argv[i]);

    std::vector<std::string> rest;
    for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == "--config") {
            if (i + 1 >= raw.size()) throw std::runtime_error("config: --config needs a path");
            *config_path = raw[++i];
        } else if (raw[i].rfind("--config=", 0) == 0) {
            *config_path = raw[i].substr(9);
        } else {
            rest.push_back(raw[i]);
        }
    }
    if (config_path->empty()) return rest;

    const auto kvs = read_config_file(*config_path);
    static const std::set<std::string> commands = {"eval", "verify", "kernel", "transform",
                                                   "brachistochrone"};
    bool has_command = false;
    for (const auto& a : rest) has_command = has_command || commands.count(a) > 0;

    std::vector<std::string> args;
    for (const auto& [k, v] : kvs)
        if (k == "command" && !has_command) {
            args.push_back(v);
            has_command = true;
        }
    args.insert(args.end(), rest.begin(), rest.end());
    for (const auto& [k, v] : kvs) {
        if (k == "command") continue;
        const std::string flag = "--" + k;
        bool present = false;
        for (const auto& a : rest)
            present = present || a == flag || a.rfind(flag + "=", 0) == 0;
        if (!present) {
            args.push_back(flag);
            args.push_back(v);
        }
    }
    return args;
}

// Everything the report emitters need, resolved after parsing.
struct RunContext {
    std::string command;
    std::string format; // json or csv
    std::map<std::string, std::string> params;
    std::map<std::string, double> tol_overrides;
    std::uint64_t seed{20260818};
    std::string config_path;
};

ordered_json config_echo(const RunContext& ctx) {
    ordered_json echo;
    echo["command"] = ctx.command;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : ctx.params) params[k] = v;
    echo["params"] = params;
    echo["output_format"] = ctx.format;
    ordered_json tols = ordered_json::object();
    for (const auto& [k, v] : ctx.tol_overrides) tols[k] = v;
    echo["tolerance_overrides"] = tols;
    echo["seed"] = ctx.seed;
    return echo;
}

std::string config_comment(const RunContext& ctx) {
    std::string s = "command=" + ctx.command;
    for (const auto& [k, v] : ctx.params) s += " " + k + "=" + v;
    s += " format=" + ctx.format;
    for (const auto& [k, v] : ctx.tol_overrides) s += " tol." + k + "=" + csv_num(v);
    s += " seed=" + std::to_string(ctx.seed);
    return s;
}

void emit_value_report(std::ostream& out, const RunContext& ctx, const std::string& suite,
                       const std::vector<ValueRow>& rows, double wall_ms) {
    if (ctx.format == "csv") {
        out << "# schema: 1\n# suite: " << suite << "\n# config: " << config_comment(ctx)
            << "\n";
        out << "anchor,param,value,value_im,est_error\n";
        for (const auto& r : rows)
            out << csv_quote(r.anchor) << ',' << csv_quote(r.param) << ',' << csv_num(r.value)
                << ',' << csv_num(r.value_im) << ',' << csv_num(r.est_error) << "\n";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.3f", wall_ms);
        out << "# wall_ms: " << buf << "\n";
        return;
    }
    ordered_json doc;
    doc["schema"] = 1;
    doc["suite"] = suite;
    ordered_json recs = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["anchor"] = r.param.empty() ? r.anchor : r.anchor + ", " + r.param;
        j["value"] = r.value;
        j["value_im"] = r.value_im;
        j["est_error"] = r.est_error;
        recs.push_back(j);
    }
    doc["records"] = recs;
    doc["config_echo"] = config_echo(ctx);
    doc["wall_ms"] = wall_ms;
    out << doc.dump(2) << "\n";
}

void emit_verify_report(std::ostream& out, const RunContext& ctx, const std::string& suite,
                        const std::vector<VerifyRecord>& records, double wall_ms) {
    if (ctx.format == "csv") {
        out << "# schema: 1\n# suite: " << suite << "\n# config: " << config_comment(ctx)
            << "\n";
        out << "anchor,param,lhs,rhs,rel_err,tol,pass\n";
        for (const auto& r : records)
            out << csv_quote(r.anchor) << ',' << csv_quote(r.param) << ',' << csv_num(r.lhs)
                << ',' << csv_num(r.rhs) << ',' << csv_num(r.rel_err) << ',' << csv_num(r.tol)
                << ',' << (r.pass ? "true" : "false") << "\n";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.3f", wall_ms);
        out << "# wall_ms: " << buf << "\n";
        return;
    }
    ordered_json doc;
    doc["schema"] = 1;
    doc["suite"] = suite;
    // JSON records carry one anchor string; the CSV schema splits out param.
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) {
        ordered_json j;
        j["anchor"] = r.param.empty() ? r.anchor : r.anchor + ", " + r.param;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["rel_err"] = r.rel_err;
        j["tol"] = r.tol;
        j["pass"] = r.pass;
        recs.push_back(j);
    }
    doc["records"] = recs;
    doc["config_echo"] = config_echo(ctx);
    doc["wall_ms"] = wall_ms;
    out << doc.dump(2) << "\n";
}

// Zipped evaluation grid: every supplied list is either length 1 (broadcast)
// or the common length.
struct EvalAxis {
    const char* name;
    const std::vector<double>* values;
};

size_t grid_rows(const std::vector<EvalAxis>& axes, std::string* bad) {
    size_t rows = 1;
    for (const auto& ax : axes) {
        if (ax.values->empty()) {
            *bad = std::string("--") + ax.name + " is required";
            return 0;
        }
        if (ax.values->size() > 1) {
            if (rows > 1 && ax.values->size() != rows) {
                *bad = "list lengths disagree";
                return 0;
            }
            rows = ax.values->size();
        }
    }
    return rows;
}

double axis_at(const EvalAxis& ax, size_t i) {
    return ax.values->size() == 1 ? (*ax.values)[0] : (*ax.values)[i];
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolic-plane diffusion toolkit: special-function evaluation, "
                 "verification suites, and plot-ready grids"};
    app.require_subcommand(0, 1);

    std::string format = "json";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    std::uint64_t seed = 20260818;
    app.add_option("--seed", seed, "Seed for the stochastic checks");
    std::string config_dummy;
    app.add_option("--config", config_dummy,
                   "key=value file mirroring the command-line options; command= selects "
                   "the subcommand, explicit flags win");

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate one function over a zipped grid");
    eval->fallthrough(true);
    std::string fn;
    eval->add_option("--fn", fn, "Function name")
        ->required()
        ->check(CLI::IsMember({"conical_p", "conical_q", "bessel_k_imag", "whittaker_w",
                               "heat_kernel", "greens_function"}));
    std::vector<double> v_mu, v_nu, v_x, v_z, v_kappa, v_m, v_rho, v_t, v_E;
    eval->add_option("--mu", v_mu, "Order")->delimiter(',');
    eval->add_option("--nu", v_nu, "Spectral index")->delimiter(',');
    eval->add_option("--x", v_x, "Argument")->delimiter(',');
    eval->add_option("--z", v_z, "Argument on (1, inf)")->delimiter(',');
    eval->add_option("--kappa", v_kappa, "First Whittaker index")->delimiter(',');
    eval->add_option("--m", v_m, "Second Whittaker index (real part)")->delimiter(',');
    eval->add_option("--rho", v_rho, "Geodesic distance")->delimiter(',');
    eval->add_option("--t", v_t, "Diffusion time")->delimiter(',');
    eval->add_option("--E", v_E, "Resolvent parameter")->delimiter(',');

    // verify
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->fallthrough(true);
    std::string suite;
    {
        std::vector<std::string> choices = verify_suite_names();
        choices.push_back("all");
        verify->add_option("--suite", suite, "Suite name")
            ->required()
            ->check(CLI::IsMember(choices));
    }
    std::vector<std::string> tol_args;
    verify->add_option("--tol", tol_args,
                       "Per-suite tolerance override, as suite=value (repeatable)")
        ->delimiter(',');
    int mc_paths = 100000;
    verify->add_option("--paths", mc_paths, "Sample-path count for the kernel suite");

    // kernel
    auto* kernel = app.add_subcommand(
        "kernel", "Radial heat-kernel profile; with --E the resolvent kernel instead");
    kernel->fallthrough(true);
    double k_t = 0.0, k_rho_max = 4.0;
    int k_n = 81;
    std::vector<double> k_E;
    auto* kernel_t = kernel->add_option("--t", k_t, "Diffusion time");
    kernel->add_option("--rho-max", k_rho_max, "Grid end");
    kernel->add_option("--n", k_n, "Grid size")->check(CLI::Range(2, 100000));
    auto* kernel_E =
        kernel->add_option("--E", k_E, "Resolvent parameter (switches to the resolvent kernel)");
    // Exactly one of the two modes.
    kernel_t->excludes(kernel_E);

    // transform
    auto* transform = app.add_subcommand(
        "transform", "Forward index transform of a built-in test function");
    transform->fallthrough(true);
    std::string tf_f = "vanishing-exp";
    transform->add_option("--f", tf_f, "Test function")
        ->check(CLI::IsMember({"vanishing-exp", "truncated-exp"}));
    double tf_mu = 0.0, tf_pmax = 8.0;
    int tf_n = 33;
    std::string tf_mode = "forward";
    transform->add_option("--mu", tf_mu, "Transform order");
    transform->add_option("--p-max", tf_pmax, "Spectral grid end")
        ->check(CLI::PositiveNumber);
    transform->add_option("--n", tf_n, "Spectral grid size")->check(CLI::Range(2, 100000));
    transform->add_option("--mode", tf_mode, "forward grid or round-trip L2 check")
        ->check(CLI::IsMember({"forward", "round-trip"}));

    // brachistochrone
    auto* brach = app.add_subcommand(
        "brachistochrone", "RK4 trajectory deviation from the closed-form Hamiltonian");
    brach->fallthrough(true);
    double b_omega = 0.6, b_R = 1.0, b_tend = 1.0;
    int b_steps = 256;
    brach->add_option("--omega", b_omega, "Drive rate");
    brach->add_option("--R", b_R, "Hamiltonian scale")->check(CLI::PositiveNumber);
    brach->add_option("--t-end", b_tend, "Integration end time")->check(CLI::PositiveNumber);
    brach->add_option("--steps", b_steps, "RK4 step count");

    RunContext ctx;
    std::vector<std::string> args;
    try {
        args = assemble_args(argc, argv, &ctx.config_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> cargs;
    cargs.push_back(argc > 0 ? argv[0] : "hypdiff");
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    CLI::App* active = nullptr;
    for (CLI::App* sub : {eval, verify, kernel, transform, brach})
        if (app.got_subcommand(sub)) active = sub;
    if (active == nullptr) {
        err << "error: a subcommand is required (eval, verify, kernel, transform, "
               "brachistochrone)\n";
        return 2;
    }

    ctx.command = active->get_name();
    ctx.format = format;
    ctx.seed = seed;
    if (!ctx.config_path.empty()) ctx.params["config"] = ctx.config_path;
    for (const CLI::App* scope : {static_cast<const CLI::App*>(&app),
                                  static_cast<const CLI::App*>(active)})
        for (const CLI::Option* o : scope->get_options()) {
            if (o->count() == 0) continue;
            std::string name = o->get_name();
            // format, seed and tol have dedicated fields in the echo.
            if (name == "--help" || name == "--format" || name == "--seed" || name == "--tol")
                continue;
            while (!name.empty() && name.front() == '-') name.erase(name.begin());
            std::string joined;
            for (const auto& r : o->results()) {
                if (!joined.empty()) joined += ",";
                joined += r;
            }
            ctx.params[name] = joined;
        }

    for (const auto& spec : tol_args) {
        const size_t eq = spec.find('=');
        std::string name = eq == std::string::npos ? spec : spec.substr(0, eq);
        const auto& names = verify_suite_names();
        if (eq == std::string::npos ||
            std::find(names.begin(), names.end(), name) == names.end()) {
            err << "error: --tol expects suite=value with a known suite, got \"" << spec
                << "\"\n";
            return 2;
        }
        try {
            ctx.tol_overrides[name] = std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            err << "error: --tol " << spec << ": value is not a number\n";
            return 2;
        }
    }

    const auto t_start = std::chrono::steady_clock::now();
    auto wall = [&t_start] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         t_start)
            .count();
    };

    try {
        if (active == eval) {
            std::vector<EvalAxis> axes;
            if (fn == "conical_p" || fn == "conical_q")
                axes = {{"mu", &v_mu}, {"nu", &v_nu}, {"z", &v_z}};
            else if (fn == "bessel_k_imag")
                axes = {{"nu", &v_nu}, {"x", &v_x}};
            else if (fn == "whittaker_w")
                axes = {{"kappa", &v_kappa}, {"m", &v_m}, {"z", &v_z}};
            else if (fn == "heat_kernel")
                axes = {{"rho", &v_rho}, {"t", &v_t}};
            else
                axes = {{"rho", &v_rho}, {"E", &v_E}};
            const std::vector<EvalAxis> all_axes = {{"mu", &v_mu},       {"nu", &v_nu},
                                                    {"x", &v_x},         {"z", &v_z},
                                                    {"kappa", &v_kappa}, {"m", &v_m},
                                                    {"rho", &v_rho},     {"t", &v_t},
                                                    {"E", &v_E}};
            for (const auto& a : all_axes) {
                const bool used = std::any_of(axes.begin(), axes.end(), [&](const EvalAxis& u) {
                    return std::string(u.name) == a.name;
                });
                if (!used && !a.values->empty()) {
                    err << "error: eval --fn " << fn << " does not take --" << a.name << "\n";
                    return 2;
                }
            }
            std::string bad;
            const size_t rows = grid_rows(axes, &bad);
            if (rows == 0) {
                err << "error: eval --fn " << fn << ": " << bad << "\n";
                return 2;
            }
            std::vector<ValueRow> table;
            for (size_t i = 0; i < rows; ++i) {
                ValueRow row;
                row.anchor = fn;
                for (size_t k = 0; k < axes.size(); ++k) {
                    if (k) row.param += " ";
                    row.param += std::string(axes[k].name) + "=" + num(axis_at(axes[k], i));
                }
                if (fn == "conical_p" || fn == "conical_q") {
                    const ConicalIndex idx{cplx(axis_at(axes[0], i)), axis_at(axes[1], i)};
                    const EvalResult r = fn == "conical_p" ? conical_p(idx, axis_at(axes[2], i))
                                                           : conical_q(idx, axis_at(axes[2], i));
                    row.value = r.value.real();
                    row.value_im = r.value.imag();
                    row.est_error = r.est_error;
                } else if (fn == "bessel_k_imag") {
                    const EvalResult r = bessel_k_imag(axis_at(axes[0], i), axis_at(axes[1], i));
                    row.value = r.value.real();
                    row.value_im = r.value.imag();
                    row.est_error = r.est_error;
                } else if (fn == "whittaker_w") {
                    const EvalResult r = whittaker_w(axis_at(axes[0], i),
                                                     cplx(axis_at(axes[1], i)),
                                                     axis_at(axes[2], i));
                    row.value = r.value.real();
                    row.value_im = r.value.imag();
                    row.est_error = r.est_error;
                } else if (fn == "heat_kernel") {
                    row.value = heat_kernel_radial(axis_at(axes[0], i), axis_at(axes[1], i));
                } else {
                    row.value = greens_function(axis_at(axes[0], i), axis_at(axes[1], i));
                }
                table.push_back(row);
            }
            emit_value_report(out, ctx, "eval", table, wall());
            return 0;
        }

        if (active == verify) {
            std::vector<std::string> to_run;
            if (suite == "all")
                to_run = verify_suite_names();
            else
                to_run.push_back(suite);
            std::vector<VerifyRecord> records;
            bool pass = true;
            for (const auto& name : to_run) {
                VerifyOptions opt;
                opt.seed = seed;
                opt.mc_paths = mc_paths;
                const auto it = ctx.tol_overrides.find(name);
                if (it != ctx.tol_overrides.end()) opt.tol_override = it->second;
                const SuiteReport rep = run_verify_suite(name, opt);
                records.insert(records.end(), rep.records.begin(), rep.records.end());
                pass = pass && rep.pass;
            }
            emit_verify_report(out, ctx, suite, records, wall());
            return pass ? 0 : 1;
        }

        if (active == kernel) {
            if (k_E.empty() && kernel_t->count() == 0) {
                err << "error: kernel needs either --t (heat kernel) or --E (resolvent)\n";
                return 2;
            }
            std::vector<ValueRow> table;
            for (int i = 0; i < k_n; ++i) {
                ValueRow row;
                if (k_E.empty()) {
                    const double rho = k_rho_max * double(i) / double(k_n - 1);
                    row.anchor = "heat kernel";
                    row.param = "rho=" + num(rho) + " t=" + num(k_t);
                    row.value = heat_kernel_radial(rho, k_t);
                } else {
                    const double rho = k_rho_max * double(i + 1) / double(k_n);
                    row.anchor = "resolvent kernel";
                    row.param = "rho=" + num(rho) + " E=" + num(k_E[0]);
                    row.value = greens_function(rho, k_E[0]);
                }
                table.push_back(row);
            }
            emit_value_report(out, ctx, "kernel", table, wall());
            return 0;
        }

        if (active == transform) {
            QuadratureSpec spec;
            RealFn f;
            if (tf_f == "truncated-exp") {
                spec.truncation = 6.0;
                f = [](double x) { return x <= 6.0 ? std::exp(-2.0 * x) : 0.0; };
            } else {
                f = [](double x) {
                    return (x - 1.0) * (x - 1.0) * std::exp(-2.0 * (x - 1.0));
                };
            }
            std::vector<ValueRow> table;
            if (tf_mode == "round-trip") {
                const std::vector<double> x_grid = {1.15, 1.3, 1.6, 2.0, 2.5, 3.2, 4.0};
                ValueRow row;
                row.anchor = "index-transform round trip L2";
                row.param = "f=" + tf_f + " mu=" + num(tf_mu) + " p_max=" + num(tf_pmax);
                row.value = mehler_fock_round_trip_l2(f, tf_mu, x_grid, tf_pmax, spec);
                table.push_back(row);
            } else {
                std::vector<double> grid;
                for (int i = 0; i < tf_n; ++i)
                    grid.push_back(tf_pmax * double(i + 1) / double(tf_n));
                const TransformResult res =
                    mehler_fock(f, tf_mu, grid, TransformDirection::forward, spec);
                for (size_t i = 0; i < grid.size(); ++i) {
                    ValueRow row;
                    row.anchor = "index transform, forward";
                    row.param = "f=" + tf_f + " mu=" + num(tf_mu) + " p=" + num(grid[i]);
                    row.value = res.values[i].value;
                    row.est_error = res.values[i].est_error;
                    table.push_back(row);
                }
            }
            emit_value_report(out, ctx, "transform", table, wall());
            return 0;
        }

        // brachistochrone
        {
            const Mat2C H0 = hamiltonian_hyperbolic(0.0, b_omega, b_R);
            const Trajectory traj =
                integrate_brachistochrone(H0, constraint_operator(b_omega), b_tend, b_steps);
            std::vector<ValueRow> table;
            const size_t stride = std::max<size_t>(1, traj.points.size() / 129);
            for (size_t i = 0; i < traj.points.size(); i += stride) {
                const auto& pt = traj.points[i];
                ValueRow row;
                row.anchor = "trajectory deviation from closed form";
                row.param = "t=" + num(pt.t);
                row.value = mismatch(pt.H, hamiltonian_hyperbolic(pt.t, b_omega, b_R));
                table.push_back(row);
            }
            ValueRow drift;
            drift.anchor = "invariant drift tr(H^2)/2";
            drift.param = "t_end=" + num(b_tend);
            drift.value = traj.energy_drift;
            table.push_back(drift);
            drift.anchor = "invariant drift tr(H F0)";
            drift.value = traj.orthogonality_drift;
            table.push_back(drift);
            emit_value_report(out, ctx, "brachistochrone", table, wall());
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace hypdiff
