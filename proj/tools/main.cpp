// Command-line interface for the two-phase spin-rotation estimation toolbox.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinestim/acceptance.hpp"
#include "spinestim/montecarlo.hpp"
#include "spinestim/optimize.hpp"
#include "spinestim/strategies.hpp"

using json = nlohmann::json;
using namespace spinestim;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;
constexpr const char* kSchemaVersion = "1";

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k)
            row.push_back({{"re", m(i, k).real()}, {"im", m(i, k).imag()}});
        rows.push_back(row);
    }
    return rows;
}

json matrix2d_to_json(const Eigen::Matrix2d& m) {
    return json::array({json::array({m(0, 0), m(0, 1)}),
                        json::array({m(1, 0), m(1, 1)})});
}

struct Timer {
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    }
};

void emit_record(const std::string& command, const json& inputs,
                 const json& results, const Timer& timer,
                 const std::string& out_path) {
    json record{{"schema_version", kSchemaVersion},
                {"command", command},
                {"inputs", inputs},
                {"results", results},
                {"timing_seconds", timer.seconds()}};
    if (out_path.empty()) {
        std::cout << record.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::ios_base::failure("cannot write " + out_path);
    out << record.dump(2) << "\n";
}

PhasePair parse_phi(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--phi expects 'x,y'");
    try {
        return PhasePair{std::stod(text.substr(0, comma)),
                         std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--phi expects two numbers 'x,y'");
    }
}

int run_ops(const std::string& j_str, const std::string& axis_str,
            const std::string& format, const std::string& out_path) {
    Timer timer;
    SpinQuantum j = SpinQuantum::parse(j_str);
    SpinOps ops = make_spin_ops(j);
    const Operator& op = ops.axis(axis_from_string(axis_str));

    // commutator residual as a built-in sanity figure
    Matrix comm = ops.x.mat * ops.y.mat - ops.y.mat * ops.x.mat -
                  Complex(0, 1) * ops.z.mat;
    double residual = comm.cwiseAbs().maxCoeff();

    if (format == "json") {
        json results{{"matrix", matrix_to_json(op.mat)},
                     {"commutator_residual", residual}};
        emit_record("ops",
                    {{"j", j.str()}, {"two_j", j.two_j}, {"axis", axis_str}},
                    results, timer, out_path);
        return 0;
    }
    std::printf("J_%s for j = %s (2j = %d), dim %d\n", axis_str.c_str(),
                j.str().c_str(), j.two_j, j.dim());
    for (int r = 0; r < op.dim(); ++r) {
        for (int c = 0; c < op.dim(); ++c) {
            Complex v = op.mat(r, c);
            std::printf("  (%s%s%si)", fmt9(v.real()).c_str(),
                        v.imag() < 0 ? "" : "+", fmt9(v.imag()).c_str());
        }
        std::printf("\n");
    }
    std::printf("commutator residual max|[Jx,Jy]-iJz| = %s\n",
                fmt9(residual).c_str());
    return 0;
}

int run_qfi(const std::string& j_str, const std::string& state_spec,
            const std::string& phi_str, const std::string& order,
            double step, const std::string& out_path) {
    Timer timer;
    std::optional<SpinQuantum> j;
    if (!j_str.empty()) j = SpinQuantum::parse(j_str);
    StateVector psi = parse_state_spec(state_spec, j);
    PhasePair phi = parse_phi(phi_str);

    QfiOrder ord = order == "first" ? QfiOrder::FirstCorrected
                                    : QfiOrder::Zeroth;
    QfiMatrix analytic = qfi_matrix_analytic(psi, phi, ord);
    QfiMatrix numeric = qfi_matrix_numeric(psi, phi, step);
    double delta = (analytic.h - numeric.h).cwiseAbs().maxCoeff();
    CrbResult bound = crb(analytic);

    json results{{"h", matrix2d_to_json(analytic.h)},
                 {"order", order},
                 {"trace_inverse", bound.value},
                 {"delta_phi_total", bound.total_sensitivity},
                 {"achievability_residual", analytic.achievability_residual},
                 {"analytic_vs_numeric_delta", delta},
                 {"numeric_step_warning", numeric.step_warning}};
    if (ord == QfiOrder::FirstCorrected) {
        Eigen::Matrix2d h1 =
            analytic.h - qfi_matrix_analytic(psi, phi, QfiOrder::Zeroth).h;
        results["h1"] = matrix2d_to_json(h1);
    }
    emit_record("qfi",
                {{"j", j ? j->str() : ""},
                 {"state", state_spec},
                 {"phi", {phi.phi_x, phi.phi_y}},
                 {"order", order},
                 {"step", step}},
                results, timer, out_path);
    return 0;
}

std::vector<Strategy> parse_strategies(const std::string& text) {
    if (text == "all")
        return {Strategy::Joint, Strategy::Sequential, Strategy::SequentialSpin,
                Strategy::Sql};
    std::vector<Strategy> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "joint") out.push_back(Strategy::Joint);
        else if (tok == "sequential" || tok == "seq")
            out.push_back(Strategy::Sequential);
        else if (tok == "spin" || tok == "sequential_spin")
            out.push_back(Strategy::SequentialSpin);
        else if (tok == "sql") out.push_back(Strategy::Sql);
        else
            throw CLI::ValidationError("unknown strategy '" + tok + "'");
    }
    if (out.empty()) throw CLI::ValidationError("empty strategy list");
    return out;
}

int run_scan(const std::string& jmin_str, const std::string& jmax_str,
             const std::string& strategies_str, const std::string& format,
             const std::string& out_path) {
    Timer timer;
    SpinQuantum jmin = SpinQuantum::parse(jmin_str);
    SpinQuantum jmax = SpinQuantum::parse(jmax_str);
    auto rows = scan(jmin, jmax, parse_strategies(strategies_str));

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::ios_base::failure("cannot write " + out_path);
        out = &file;
    }
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : rows)
            arr.push_back({{"two_j", row.j.two_j},
                           {"j", row.j.j()},
                           {"parity",
                            row.j.is_integer() ? "integer" : "semi-odd"},
                           {"strategy", strategy_name(row.strategy)},
                           {"delta_phi", row.delta_phi}});
        json record{{"schema_version", kSchemaVersion},
                    {"command", "scan"},
                    {"inputs",
                     {{"jmin", jmin.str()},
                      {"jmax", jmax.str()},
                      {"strategies", strategies_str}}},
                    {"results", arr},
                    {"timing_seconds", timer.seconds()}};
        *out << record.dump(2) << "\n";
        return 0;
    }
    *out << "two_j,j,parity,strategy,delta_phi\r\n";
    for (const auto& row : rows)
        *out << row.j.two_j << "," << fmt9(row.j.j()) << ","
             << (row.j.is_integer() ? "integer" : "semi-odd") << ","
             << strategy_name(row.strategy) << "," << fmt9(row.delta_phi)
             << "\r\n";
    return 0;
}

json result_to_json(const ExperimentResult& res) {
    return json{{"estimates", {res.estimates.first, res.estimates.second}},
                {"empirical_variances",
                 {res.empirical_variances.first, res.empirical_variances.second}},
                {"crb_prediction",
                 {res.crb_prediction.first, res.crb_prediction.second}},
                {"moment_prediction",
                 {res.moment_prediction.first, res.moment_prediction.second}},
                {"repetitions", res.repetitions},
                {"phi_regime_warning", res.phi_regime_warning}};
}

int run_simulate(const std::string& job_path, std::string j_str,
                 std::string probe_spec, std::string phi_str,
                 std::string estimator, int m_total, std::uint64_t seed,
                 int repetitions, const std::string& out_path) {
    Timer timer;
    if (!job_path.empty()) {
        std::ifstream in(job_path);
        if (!in) throw std::ios_base::failure("cannot read " + job_path);
        json job = json::parse(in);
        j_str = job.value("j", j_str);
        probe_spec = job.value("state", probe_spec);
        estimator = job.value("estimator", estimator);
        m_total = job.value("m_total", m_total);
        seed = job.value("seed", seed);
        repetitions = job.value("repetitions", repetitions);
        if (job.contains("phi")) {
            phi_str = std::to_string(job["phi"][0].get<double>()) + "," +
                      std::to_string(job["phi"][1].get<double>());
        }
    }
    SpinQuantum j = SpinQuantum::parse(j_str);
    StateVector probe = parse_state_spec(probe_spec, j);
    PhasePair phi = parse_phi(phi_str);
    ExperimentConfig cfg{j, probe, phi, m_total, seed, 0.5, repetitions};
    ExperimentResult res = estimator == "ghz" ? estimate_sequential_ghz(cfg)
                                              : estimate_sequential_spin(cfg);
    if (res.phi_regime_warning)
        std::cerr << "warning: |phi| > 0.1, outside the linearized regime\n";
    emit_record("simulate",
                {{"j", j.str()},
                 {"state", probe_spec},
                 {"phi", {phi.phi_x, phi.phi_y}},
                 {"estimator", estimator},
                 {"m_total", m_total},
                 {"seed", seed},
                 {"repetitions", repetitions}},
                result_to_json(res), timer, out_path);
    return 0;
}

int run_optimize(const std::string& j_str, int ancilla,
                 const std::string& objective, int restarts,
                 std::uint64_t seed, bool product_manifold,
                 const std::string& out_path) {
    Timer timer;
    SpinQuantum j = SpinQuantum::parse(j_str);
    OptimizeConfig cfg{j};
    cfg.ancilla_dim = ancilla;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.product_manifold = product_manifold;

    OptimizeResult res = [&] {
        if (objective == "trace_inverse_qfi") {
            cfg.objective = Objective::TraceInverseQfi;
            return minimize_trace_inverse(cfg);
        }
        if (objective == "variance_x") {
            cfg.objective = Objective::VarianceX;
            return maximize_variance(cfg);
        }
        if (objective == "two_mode_margin") {
            cfg.objective = Objective::TwoModeMargin;
            return maximize_two_mode_margin(cfg);
        }
        throw CLI::ValidationError("unknown objective '" + objective + "'");
    }();

    json amps = json::array();
    for (int k = 0; k < res.best_state.dim(); ++k)
        amps.push_back({{"re", res.best_state.amp(k).real()},
                        {"im", res.best_state.amp(k).imag()}});
    emit_record("optimize",
                {{"j", j.str()},
                 {"ancilla", ancilla},
                 {"objective", objective},
                 {"restarts", restarts},
                 {"seed", seed},
                 {"product_manifold", product_manifold}},
                {{"best_value", res.best_value},
                 {"converged", res.converged},
                 {"objective_trace", res.objective_trace},
                 {"best_state", amps}},
                timer, out_path);
    return 0;
}

int run_squeeze(const std::string& j_str, const std::string& state_spec,
                const std::string& axis_str, bool two_mode,
                const std::string& out_path) {
    Timer timer;
    std::optional<SpinQuantum> j;
    if (!j_str.empty()) j = SpinQuantum::parse(j_str);
    StateVector psi = parse_state_spec(state_spec, j);
    json results;
    if (two_mode) {
        if (!j)
            throw CLI::ValidationError("--two-mode needs --j (the single-spin j)");
        TwoModeReport rep = is_two_mode_squeezed(psi, *j, *j);
        results = {{"var_x_minus", rep.var_x_minus},
                   {"var_y_plus", rep.var_y_plus},
                   {"z_plus_mean", rep.z_plus_mean},
                   {"two_mode_squeezed", rep.two_mode_squeezed}};
    } else {
        SqueezingReport rep =
            is_spin_squeezed(psi, axis_from_string(axis_str));
        results = {{"msd", {rep.msd.x(), rep.msd.y(), rep.msd.z()}},
                   {"delta_phi", rep.delta_phi},
                   {"sql", rep.sql},
                   {"squeezed", rep.squeezed},
                   {"kitagawa_ueda", kitagawa_ueda_parameter(psi)}};
    }
    emit_record("squeeze",
                {{"j", j ? j->str() : ""},
                 {"state", state_spec},
                 {"axis", axis_str},
                 {"two_mode", two_mode}},
                results, timer, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-phase spin-rotation estimation toolbox"};
    app.require_subcommand(1);

    std::string j_str, axis_str = "z", format = "text", out_path;
    std::string state_spec, phi_str = "0,0", order = "zeroth";
    double step = 1e-4;
    std::string jmin_str, jmax_str, strategies_str = "all";
    std::string job_path, estimator = "spin", objective = "trace_inverse_qfi";
    int m_total = 10000, repetitions = 400, restarts = 32, ancilla = 0;
    std::uint64_t seed = 0;
    bool two_mode = false, product_manifold = false;

    auto* ops_cmd = app.add_subcommand("ops", "Print spin operator matrices");
    ops_cmd->add_option("--j", j_str, "spin j, e.g. 1/2 or 1.5")->required();
    ops_cmd->add_option("--axis", axis_str, "x, y or z");
    ops_cmd->add_option("--format", format, "text or json");
    ops_cmd->add_option("--out", out_path, "output file (json only)");

    auto* qfi_cmd = app.add_subcommand("qfi", "QFI matrix and Cramer-Rao bound");
    qfi_cmd->add_option("--j", j_str, "default spin for the state spec");
    qfi_cmd->add_option("--state", state_spec, "state spec")->required();
    qfi_cmd->add_option("--phi", phi_str, "phases 'x,y'");
    qfi_cmd->add_option("--order", order, "zeroth or first");
    qfi_cmd->add_option("--step", step, "finite-difference step");
    qfi_cmd->add_option("--out", out_path, "output file");

    auto* scan_cmd = app.add_subcommand("scan", "Sensitivity scan over j");
    scan_cmd->add_option("--jmin", jmin_str)->required();
    scan_cmd->add_option("--jmax", jmax_str)->required();
    scan_cmd->add_option("--strategies", strategies_str,
                         "all or comma list: joint,sequential,spin,sql");
    scan_cmd->add_option("--format", format, "csv or json");
    scan_cmd->add_option("--out", out_path, "output file");

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimation run");
    sim_cmd->add_option("--job", job_path, "JSON job file");
    sim_cmd->add_option("--j", j_str);
    sim_cmd->add_option("--state", state_spec, "probe state spec");
    sim_cmd->add_option("--phi", phi_str, "true phases 'x,y'");
    sim_cmd->add_option("--estimator", estimator, "spin or ghz");
    sim_cmd->add_option("--m", m_total, "total shots per repetition");
    sim_cmd->add_option("--seed", seed);
    sim_cmd->add_option("--reps", repetitions);
    sim_cmd->add_option("--out", out_path, "output file");

    auto* opt_cmd = app.add_subcommand("optimize", "Numerical probe-state search");
    opt_cmd->add_option("--j", j_str)->required();
    opt_cmd->add_option("--ancilla", ancilla, "0 or 2");
    opt_cmd->add_option("--objective", objective,
                        "trace_inverse_qfi, variance_x or two_mode_margin");
    opt_cmd->add_option("--restarts", restarts);
    opt_cmd->add_option("--seed", seed);
    opt_cmd->add_flag("--product", product_manifold,
                      "restrict two_mode_margin to product states");
    opt_cmd->add_option("--out", out_path, "output file");

    auto* sq_cmd = app.add_subcommand("squeeze", "Spin-squeezing diagnostics");
    sq_cmd->add_option("--j", j_str);
    sq_cmd->add_option("--state", state_spec)->required();
    sq_cmd->add_option("--axis", axis_str, "rotation axis x or y")
        ->default_val("x");
    sq_cmd->add_flag("--two-mode", two_mode, "two-mode criterion on a j(x)j state");
    sq_cmd->add_option("--out", out_path, "output file");

    auto* verify_cmd =
        app.add_subcommand("verify", "Run the full verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (ops_cmd->parsed())
            return run_ops(j_str, axis_str, format, out_path);
        if (qfi_cmd->parsed())
            return run_qfi(j_str, state_spec, phi_str, order, step, out_path);
        if (scan_cmd->parsed()) {
            if (format == "text") format = "csv";
            return run_scan(jmin_str, jmax_str, strategies_str, format,
                            out_path);
        }
        if (sim_cmd->parsed())
            return run_simulate(job_path, j_str, state_spec, phi_str,
                                estimator, m_total, seed, repetitions,
                                out_path);
        if (opt_cmd->parsed())
            return run_optimize(j_str, ancilla, objective, restarts, seed,
                                product_manifold, out_path);
        if (sq_cmd->parsed())
            return run_squeeze(j_str, state_spec, axis_str, two_mode,
                               out_path);
        if (verify_cmd->parsed()) {
            auto results = spinestim::acceptance::run_all();
            int failures = spinestim::acceptance::report(results);
            return failures == 0 ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
