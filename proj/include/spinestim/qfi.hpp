#pragma once

#include "spinestim/states.hpp"

namespace spinestim {

enum class QfiOrder { Zeroth, FirstCorrected, Numeric };

// 2x2 QFI matrix for (phi_x, phi_y) plus the achievability residual
// Im<l_x|l_y>, which vanishes iff the multiparameter bound is saturable
// (for pure probes; for mixed states the condition is only sufficient).
struct QfiMatrix {
    Eigen::Matrix2d h;
    QfiOrder order;
    double achievability_residual;
    bool step_warning = false;  // set by the numeric route on Richardson mismatch
};

struct CrbResult {
    Eigen::Matrix2d weight;
    double value;             // tr[G H^-1] / M
    int m_measurements;
    double total_sensitivity;  // sqrt(tr[H^-1]) when G = identity
};

// Zeroth- and first-order auxiliary vectors |l_mu> = L_mu |psi>.
struct AuxVectors {
    Vector lx0, ly0;
    Vector lx1, ly1;
};

// U(phi) (x) I applied to the probe.
StateVector evolve(const StateVector& psi0, const PhasePair& phi);

AuxVectors aux_vectors(const StateVector& psi0, const PhasePair& phi);

QfiMatrix qfi_matrix_analytic(const StateVector& psi0, const PhasePair& phi,
                              QfiOrder order = QfiOrder::Zeroth);

// Independent finite-difference route: rho_phi by central differences,
// L = 2 d(rho), H_{mu nu} = Tr[rho {L_mu, L_nu}/2].
QfiMatrix qfi_matrix_numeric(const StateVector& psi0, const PhasePair& phi,
                             double step = 1e-4);

// SLD from the spectral decomposition of rho: L_ab = 2 <a|drho|b>/(p_a+p_b),
// terms with p_a + p_b below threshold dropped.
Operator sld_general(const Matrix& rho, const Matrix& drho);

CrbResult crb(const QfiMatrix& h,
              const Eigen::Matrix2d& weight = Eigen::Matrix2d::Identity(),
              int m_measurements = 1);

// Spin operators embedded on the probe's composite space.
SpinOps probe_ops(const StateVector& state);

}  // namespace spinestim
