#include "spinestim/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "spinestim/montecarlo.hpp"
#include "spinestim/optimize.hpp"
#include "spinestim/strategies.hpp"

namespace spinestim::acceptance {

namespace {

StateVector random_pure_state(SpinQuantum j, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector amp(j.dim());
    for (int k = 0; k < j.dim(); ++k) amp(k) = Complex(gauss(gen), gauss(gen));
    amp.normalize();
    return StateVector{CompositeSpace{j.dim(), 0}, std::move(amp)};
}

std::vector<StateVector> constructor_states(SpinQuantum j) {
    std::vector<StateVector> out;
    out.push_back(css(j, Axis::Z));
    out.push_back(css(j, Axis::X));
    out.push_back(joint_optimal(j));
    out.push_back(sequential_optimal(j, Axis::X));
    out.push_back(sequential_optimal(j, Axis::Y));
    if (j.two_j >= 2 || j.is_semi_odd())
        out.push_back(constructive_squeezed(j));
    if (j.is_integer()) out.push_back(dicke(j, 0, Axis::Z));
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

CriterionResult joint_bound_criterion() {
    double worst = 0.0;
    for (int tj = 1; tj <= 20; ++tj) {
        SpinQuantum j(tj);
        StateVector psi = joint_optimal(j);
        QfiMatrix h = qfi_matrix_analytic(psi, PhasePair{});
        double got = crb(h).total_sensitivity;
        double expect = joint_sensitivity(j).delta_phi_total;
        worst = std::max(worst, std::abs(got - expect));
    }
    // spot values
    double spot1 = crb(qfi_matrix_analytic(joint_optimal(SpinQuantum(2)), {}))
                       .total_sensitivity;
    double spot2 = crb(qfi_matrix_analytic(joint_optimal(SpinQuantum(1)), {}))
                       .total_sensitivity;
    bool pass = worst <= 1e-9 && std::abs(spot1 - 0.707107) < 1e-5 &&
                std::abs(spot2 - 1.414214) < 1e-5;
    return {1, "joint bound vs QFI engine (j <= 10)", pass,
            "max |dPhi - formula| = " + fmt(worst)};
}

CriterionResult sequential_bound_criterion() {
    double worst_h = 0.0, worst_c = 0.0;
    for (int tj = 1; tj <= 20; ++tj) {
        SpinQuantum j(tj);
        StateVector psi = sequential_optimal(j, Axis::X);
        QfiMatrix h = qfi_matrix_analytic(psi, PhasePair{});
        double jj = j.j();
        worst_h = std::max(worst_h, std::abs(h.h(0, 0) - 4.0 * jj * jj));
        double total = combine_effective(1.0 / (2.0 * jj), 1.0 / (2.0 * jj)).total;
        worst_c = std::max(worst_c, std::abs(total - 1.0 / jj));
    }
    bool pass = worst_h <= 1e-9 && worst_c <= 1e-12;
    return {2, "sequential bound H_xx = 4j^2 and total 1/j", pass,
            "max |H_xx - 4j^2| = " + fmt(worst_h) +
                ", max |total - 1/j| = " + fmt(worst_c)};
}

CriterionResult spin_strategy_criterion() {
    double worst = 0.0;
    bool below_sql = true;
    for (int tj = 1; tj <= 20; ++tj) {
        SpinQuantum j(tj);
        if (j.is_integer() && j.two_j < 2) continue;
        StateVector psi = constructive_squeezed(j);
        double dphi = phase_sensitivity_spin(psi, Axis::X);
        double total = combine_effective(dphi, dphi).total;
        double expect = spin_sequential_sensitivity(j).delta_phi_total;
        worst = std::max(worst, std::abs(total - expect));
        if (tj >= 3 && total >= std::sqrt(2.0 / j.j())) below_sql = false;
    }
    bool pass = worst <= 1e-9 && below_sql;
    return {3, "spin-measurement strategy sensitivity (j <= 10)", pass,
            "max |total - formula| = " + fmt(worst) +
                (below_sql ? ", below SQL for j >= 3/2"
                           : ", SQL ordering violated")};
}

CriterionResult oracle_equivalence_criterion() {
    double worst = 0.0;
    std::mt19937_64 gen(12345);
    for (int tj : {1, 2, 3, 4}) {
        SpinQuantum j(tj);
        std::vector<StateVector> states = constructor_states(j);
        for (int k = 0; k < 100; ++k) states.push_back(random_pure_state(j, gen));
        for (const auto& psi : states) {
            QfiMatrix a = qfi_matrix_analytic(psi, PhasePair{});
            QfiMatrix n = qfi_matrix_numeric(psi, PhasePair{});
            worst = std::max(worst, (a.h - n.h).cwiseAbs().maxCoeff());
        }
    }
    bool pass = worst <= 1e-6;
    return {4, "finite-difference SLD vs analytic QFI", pass,
            "max entrywise delta = " + fmt(worst)};
}

CriterionResult achievability_criterion() {
    // residual vanishes on <Jz> = 0 constructor states
    double worst_zero = 0.0;
    for (int tj = 1; tj <= 8; ++tj) {
        SpinQuantum j(tj);
        std::vector<StateVector> zero_jz = {joint_optimal(j)};
        // at j = 1/2 the x-axis GHZ degenerates to a CSS with <Jz> = 1/2
        if (tj >= 2) zero_jz.push_back(sequential_optimal(j, Axis::X));
        if (j.is_integer()) zero_jz.push_back(dicke(j, 0, Axis::Z));
        for (const auto& psi : zero_jz) {
            QfiMatrix h = qfi_matrix_analytic(psi, PhasePair{});
            worst_zero = std::max(worst_zero,
                                  std::abs(h.achievability_residual));
        }
    }
    // residual / <Jz> constant over a designed family (j = 1, mixing the
    // extremal Jz eigenstates; <Jz> = 2p - 1)
    SpinQuantum j1(2);
    SpinOps ops = make_spin_ops(j1);
    std::vector<double> ratios;
    for (int k = 1; k <= 10; ++k) {
        double target = 0.1 * k;
        double p = (1.0 + target) / 2.0;
        Vector amp = Vector::Zero(3);
        amp(0) = std::sqrt(p);
        amp(2) = std::sqrt(1.0 - p);
        StateVector psi{CompositeSpace{3, 0}, amp};
        double jz = expectation_real(psi, ops.z);
        QfiMatrix h = qfi_matrix_numeric(psi, PhasePair{});
        ratios.push_back(h.achievability_residual / jz);
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= ratios.size();
    double rel = 0.0;
    for (double r : ratios) rel = std::max(rel, std::abs(r - mean) / std::abs(mean));
    bool pass = worst_zero <= 1e-10 && rel <= 1e-6;
    return {5, "achievability residual Im<l_x|l_y>", pass,
            "max residual at <Jz>=0: " + fmt(worst_zero) +
                ", ratio spread: " + fmt(rel)};
}

CriterionResult bound_chain_criterion() {
    std::mt19937_64 gen(777);
    double worst_slack = 1.0;
    const double eps = 1e-10;
    bool ok = true;
    for (int tj = 1; tj <= 8; ++tj) {
        SpinQuantum j(tj);
        SpinOps ops = make_spin_ops(j);
        for (int k = 0; k < 1000; ++k) {
            StateVector psi = random_pure_state(j, gen);
            double vxx = sym_covariance(psi, ops.x, ops.x);
            double vyy = sym_covariance(psi, ops.y, ops.y);
            double vxy = sym_covariance(psi, ops.x, ops.y);
            double det = vxx * vyy - vxy * vxy;
            if (det < 1e-10) continue;  // singular H, excluded by the criterion
            double tr_inv = (vxx + vyy) / (4.0 * det);
            double mid = 0.25 * (1.0 / vxx + 1.0 / vyy);
            double x2 = expectation_real(psi, ops.x);
            double y2 = expectation_real(psi, ops.y);
            double jx2 = vxx + x2 * x2;
            double jy2 = vyy + y2 * y2;
            double mid2 = 0.25 * (1.0 / jx2 + 1.0 / jy2);
            double z2 = sym_covariance(psi, ops.z, ops.z) +
                        std::pow(expectation_real(psi, ops.z), 2);
            double floor = 1.0 / (j.j() * (j.j() + 1) - z2);
            ok = ok && tr_inv >= mid - eps && mid >= mid2 - eps &&
                 mid2 >= floor - eps;
            worst_slack = std::min({worst_slack, tr_inv - mid, mid - mid2,
                                    mid2 - floor});
        }
    }
    return {6, "bound-chain inequalities on random states", ok,
            "min slack = " + fmt(worst_slack)};
}

CriterionResult first_order_criterion() {
    double worst = 0.0;
    double mag = 0.05 / std::sqrt(2.0);
    PhasePair phi{mag, mag};
    for (int tj = 1; tj <= 10; ++tj) {
        SpinQuantum j(tj);
        for (const StateVector& psi :
             {joint_optimal(j), sequential_optimal(j, Axis::X),
              sequential_optimal(j, Axis::Y)}) {
            Eigen::Matrix2d h1 =
                qfi_matrix_analytic(psi, phi, QfiOrder::FirstCorrected).h -
                qfi_matrix_analytic(psi, phi, QfiOrder::Zeroth).h;
            worst = std::max(worst, h1.cwiseAbs().maxCoeff());
        }
    }
    bool pass = worst <= 1e-12;
    return {7, "first-order QFI correction vanishes on optimal probes", pass,
            "max |H1| = " + fmt(worst)};
}

CriterionResult optimizer_criterion() {
    double worst_rel = 0.0;
    double worst_below = 0.0;
    for (int tj : {1, 2, 3, 4, 5, 6}) {
        SpinQuantum j(tj);
        OptimizeConfig cfg{j};
        cfg.ancilla_dim = j.is_semi_odd() ? 2 : 0;
        cfg.restarts = 8;
        cfg.max_iters = 4000;
        cfg.seed = 2024;
        OptimizeResult res = minimize_trace_inverse(cfg);
        double jj = j.j();
        double bound = 1.0 / (jj * (jj + 1) - (j.is_semi_odd() ? 0.25 : 0.0));
        worst_rel = std::max(worst_rel,
                             std::abs(res.best_value - bound) / bound);
        worst_below = std::max(worst_below, bound - res.best_value);
    }
    bool pass = worst_rel <= 1e-5 && worst_below <= 1e-9;
    return {8, "optimizer reaches the closed-form joint bound", pass,
            "worst relative gap = " + fmt(worst_rel) +
                ", below-bound excess = " + fmt(worst_below)};
}

CriterionResult montecarlo_criterion() {
    std::ostringstream detail;
    bool pass = true;
    SpinQuantum j(4);  // j = 2
    const int m_total = 10000;
    const int reps = 400;
    double stat_tol = 1.0 - 3.0 / std::sqrt(static_cast<double>(reps));

    // GHZ probe: Var * M_x vs 1/(4j^2)
    {
        ExperimentConfig cfg{j, sequential_optimal(j, Axis::X, M_PI / 2),
                             PhasePair{0.01, 0.0}, m_total, 42, 0.5, reps};
        ExperimentResult res = estimate_sequential_ghz(cfg);
        double got = res.empirical_variances.first * (m_total / 2);
        double expect = 1.0 / (4.0 * j.j() * j.j());
        bool ok = std::abs(got - expect) <= 0.2 * expect;
        bool floor = got >= (1.0 / (4.0 * j.j() * j.j())) * stat_tol;
        pass = pass && ok && floor;
        detail << "ghz Var*Mx=" << fmt(got) << " vs " << fmt(expect);
    }
    // CSS and constructive-squeezed probes: Var vs error propagation
    for (const auto& [label, probe] :
         {std::pair<std::string, StateVector>{"css", css(j, Axis::Z)},
          {"squeezed", constructive_squeezed(j)}}) {
        ExperimentConfig cfg{j, probe, PhasePair{0.01, 0.005}, m_total, 42,
                             0.5, reps};
        ExperimentResult res = estimate_sequential_spin(cfg);
        double got = res.empirical_variances.first;
        double expect = res.moment_prediction.first;
        bool ok = std::abs(got - expect) <= 0.2 * expect;
        // CRB floor with statistical headroom
        bool floor = got * (m_total / 2) >=
                     (m_total / 2) * res.crb_prediction.first * stat_tol;
        pass = pass && ok && floor;
        detail << ", " << label << " Var=" << fmt(got) << " vs " << fmt(expect);
    }
    return {9, "Monte Carlo variance saturation", pass, detail.str()};
}

CriterionResult two_mode_criterion() {
    std::mt19937_64 gen(999);
    bool never_squeezed = true;
    for (int tj = 1; tj <= 4; ++tj) {
        SpinQuantum j(tj);
        for (int k = 0; k < 1000; ++k) {
            StateVector a = random_pure_state(j, gen);
            StateVector b = random_pure_state(j, gen);
            TwoModeReport rep = is_two_mode_squeezed(tensor(a, b), j, j);
            if (rep.two_mode_squeezed) never_squeezed = false;
        }
    }
    SpinQuantum half(1);
    double css_margin =
        two_mode_margin(tensor(css(half, Axis::Z), css(half, Axis::Z)), half);
    OptimizeConfig cfg{half};
    cfg.objective = Objective::TwoModeMargin;
    cfg.restarts = 8;
    cfg.seed = 7;
    OptimizeResult res = maximize_two_mode_margin(cfg);
    bool pass = never_squeezed && std::abs(css_margin) <= 1e-12 &&
                res.best_value > 0.1;
    return {10, "two-mode squeezing criterion", pass,
            std::string(never_squeezed ? "no product state squeezed"
                                       : "product state mis-classified") +
                ", CSSxCSS margin = " + fmt(css_margin) +
                ", optimized margin = " + fmt(res.best_value)};
}

CriterionResult scan_criterion() {
    auto rows = scan(SpinQuantum(1), SpinQuantum(20),
                     {Strategy::Joint, Strategy::Sequential,
                      Strategy::SequentialSpin, Strategy::Sql});
    double worst = 0.0;
    bool order_ok = true;
    for (int tj = 1; tj <= 20; ++tj) {
        SpinQuantum j(tj);
        double jj = j.j();
        double joint = 0, seq = 0, spin = 0, sql = 0;
        for (const auto& row : rows) {
            if (row.j.two_j != tj) continue;
            switch (row.strategy) {
                case Strategy::Joint: joint = row.delta_phi; break;
                case Strategy::Sequential: seq = row.delta_phi; break;
                case Strategy::SequentialSpin: spin = row.delta_phi; break;
                case Strategy::Sql: sql = row.delta_phi; break;
            }
        }
        double f_joint = j.is_integer() ? 1.0 / std::sqrt(jj * (jj + 1))
                                        : 1.0 / std::sqrt(jj * (jj + 1) - 0.25);
        double f_spin = j.is_integer() ? 2.0 / std::sqrt(jj * (jj + 1))
                                       : 2.0 / std::sqrt(jj * (jj + 1) + 0.25);
        worst = std::max({worst, std::abs(joint - f_joint),
                          std::abs(seq - 1.0 / jj), std::abs(spin - f_spin),
                          std::abs(sql - std::sqrt(2.0 / jj))});
        if (joint > seq + 1e-12) order_ok = false;
        if (tj >= 2 && spin <= seq) order_ok = false;
        if (tj >= 3 && spin >= sql) order_ok = false;
    }
    bool pass = worst <= 1e-6 && order_ok;
    return {11, "Fig-3 style scan values and ordering", pass,
            "max |scan - formula| = " + fmt(worst) +
                (order_ok ? ", ordering holds" : ", ordering violated")};
}

}  // namespace

std::vector<CriterionResult> run_all() {
    return {joint_bound_criterion(),   sequential_bound_criterion(),
            spin_strategy_criterion(), oracle_equivalence_criterion(),
            achievability_criterion(), bound_chain_criterion(),
            first_order_criterion(),   optimizer_criterion(),
            montecarlo_criterion(),    two_mode_criterion(),
            scan_criterion()};
}

int report(const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failures;
    }
    return failures;
}

}  // namespace spinestim::acceptance
