#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spinestim/qfi.hpp"
#include "spinestim/squeezing.hpp"

namespace spinestim {

enum class Objective { TraceInverseQfi, VarianceX, TwoModeMargin };

struct OptimizeConfig {
    SpinQuantum j;
    int ancilla_dim = 0;  // 0 or 2
    Objective objective = Objective::TraceInverseQfi;
    int restarts = 32;
    int max_iters = 2000;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    // TwoModeMargin only: restrict the search to product states psi1 (x) psi2.
    bool product_manifold = false;
};

struct OptimizeResult {
    double best_value;
    StateVector best_state;
    std::vector<double> objective_trace;  // final value per restart
    bool converged;
};

// Projected-gradient descent on the unit sphere of amplitudes (numerical
// central-difference gradients, step-halving line search, random restarts).
// minimize_trace_inverse corroborates the closed-form joint bound; the other
// two rediscover the GHZ family and the two-mode squeezing example.
OptimizeResult minimize_trace_inverse(const OptimizeConfig& config);
OptimizeResult maximize_variance(const OptimizeConfig& config);
OptimizeResult maximize_two_mode_margin(const OptimizeConfig& config);

// Margin |<Jz+>| - var(Jx-) - var(Jy+) on a two-spin j(x)j state.
double two_mode_margin(const StateVector& state, SpinQuantum j);

}  // namespace spinestim
