#pragma once

#include <cstdint>
#include <vector>

#include "spinestim/qfi.hpp"

namespace spinestim {

struct ExperimentConfig {
    SpinQuantum j;
    StateVector probe;
    PhasePair phi_true;
    int m_total = 10000;       // total shots per repetition, split over x/y
    std::uint64_t seed = 0;
    double split = 0.5;        // fraction of shots spent on phi_x
    int repetitions = 400;
    bool phi_regime_warning = false;  // set when |phi| > 0.1
};

struct ExperimentResult {
    std::pair<double, double> estimates;            // mean over repetitions
    std::pair<double, double> empirical_variances;  // across repetitions
    std::pair<double, double> crb_prediction;       // 1/(M_alpha H_alpha_alpha)
    std::pair<double, double> moment_prediction;    // error-propagation variance
    int repetitions;
    bool phi_regime_warning;
};

// Deterministic counter-based stream: the same (seed, stream) pair always
// yields the same draws, independent of scheduling.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);
    double uniform();  // [0, 1)

  private:
    std::uint64_t state_;
    std::uint64_t next();
};

// i.i.d. draws from the spectral distribution of a Hermitian observable.
std::vector<double> sample_projective(const StateVector& state,
                                      const Operator& op, int n,
                                      RngStream& rng);

// Moment estimator for the spin-measurement sequential strategy:
// phi_x from mean(Jy)/<Jz>, phi_y from -mean(Jx)/<Jz>.
ExperimentResult estimate_sequential_spin(const ExperimentConfig& config);

// Parity-observable estimator for the GHZ-like probe (sequential optimum).
// The probe must be sequential_optimal(j, x, xi = pi/2) so that the mean
// outcome responds linearly at phi -> 0.
ExperimentResult estimate_sequential_ghz(const ExperimentConfig& config);

}  // namespace spinestim
