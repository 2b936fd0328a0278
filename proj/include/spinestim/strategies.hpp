#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "spinestim/types.hpp"

namespace spinestim {

enum class Strategy { Joint, Sequential, SequentialSpin, Sql };

const char* strategy_name(Strategy s);

struct SensitivityReport {
    Strategy strategy;
    SpinQuantum j;
    double delta_phi_total;
    // Effective per-phase sensitivities, when the strategy has them.
    std::optional<std::pair<double, double>> per_phase;
};

// Closed-form bounds from the two-phase theory; each formula branches on the
// parity of 2j.
SensitivityReport joint_sensitivity(SpinQuantum j);
SensitivityReport sequential_sensitivity(SpinQuantum j);
SensitivityReport spin_sequential_sensitivity(SpinQuantum j);
SensitivityReport sql_sensitivity(SpinQuantum j);

// Applies the sqrt(2) effective factors and the quadrature sum:
// total = sqrt((sqrt2 dx)^2 + (sqrt2 dy)^2).
struct EffectiveCombination {
    double total;
    std::pair<double, double> per_phase;
};
EffectiveCombination combine_effective(double dphi_x, double dphi_y);

struct ScanRow {
    SpinQuantum j;
    Strategy strategy;
    double delta_phi;
};

// One row per half-integer step per requested strategy; ascending j, then
// strategy enum order.
std::vector<ScanRow> scan(SpinQuantum j_min, SpinQuantum j_max,
                          const std::vector<Strategy>& which);

}  // namespace spinestim
