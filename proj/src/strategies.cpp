#include "spinestim/strategies.hpp"

#include <cmath>

namespace spinestim {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Joint: return "joint";
        case Strategy::Sequential: return "sequential";
        case Strategy::SequentialSpin: return "sequential_spin";
        default: return "sql";
    }
}

SensitivityReport joint_sensitivity(SpinQuantum jq) {
    double j = jq.j();
    double arg = jq.is_integer() ? j * (j + 1) : j * (j + 1) - 0.25;
    return SensitivityReport{Strategy::Joint, jq, 1.0 / std::sqrt(arg), {}};
}

SensitivityReport sequential_sensitivity(SpinQuantum jq) {
    double j = jq.j();
    double eff = std::sqrt(2.0) / (2.0 * j);
    return SensitivityReport{Strategy::Sequential, jq, 1.0 / j,
                             std::pair{eff, eff}};
}

SensitivityReport spin_sequential_sensitivity(SpinQuantum jq) {
    double j = jq.j();
    double arg = jq.is_integer() ? j * (j + 1) : j * (j + 1) + 0.25;
    double single = 1.0 / std::sqrt(arg);
    double eff = std::sqrt(2.0) * single;
    return SensitivityReport{Strategy::SequentialSpin, jq, 2.0 * single,
                             std::pair{eff, eff}};
}

SensitivityReport sql_sensitivity(SpinQuantum jq) {
    double j = jq.j();
    double single = 1.0 / std::sqrt(2.0 * j);
    double eff = std::sqrt(2.0) * single;
    return SensitivityReport{Strategy::Sql, jq, std::sqrt(2.0 / j),
                             std::pair{eff, eff}};
}

EffectiveCombination combine_effective(double dphi_x, double dphi_y) {
    if (dphi_x <= 0.0 || dphi_y <= 0.0)
        throw std::invalid_argument("combine_effective: sensitivities must be > 0");
    double ex = std::sqrt(2.0) * dphi_x;
    double ey = std::sqrt(2.0) * dphi_y;
    return EffectiveCombination{std::hypot(ex, ey), {ex, ey}};
}

std::vector<ScanRow> scan(SpinQuantum j_min, SpinQuantum j_max,
                          const std::vector<Strategy>& which) {
    if (j_min.two_j > j_max.two_j)
        throw std::invalid_argument("scan: empty j range");
    std::vector<ScanRow> rows;
    for (int tj = j_min.two_j; tj <= j_max.two_j; ++tj) {
        SpinQuantum j(tj);
        for (Strategy s : which) {
            double v = 0.0;
            switch (s) {
                case Strategy::Joint: v = joint_sensitivity(j).delta_phi_total; break;
                case Strategy::Sequential:
                    v = sequential_sensitivity(j).delta_phi_total;
                    break;
                case Strategy::SequentialSpin:
                    v = spin_sequential_sensitivity(j).delta_phi_total;
                    break;
                case Strategy::Sql: v = sql_sensitivity(j).delta_phi_total; break;
            }
            rows.push_back(ScanRow{j, s, v});
        }
    }
    return rows;
}

}  // namespace spinestim
