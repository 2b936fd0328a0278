#pragma once

#include <optional>
#include <string>

#include "spinestim/spin_algebra.hpp"

namespace spinestim {

// Eigenstate |j,m>_axis with the library's rotated-basis phase convention.
StateVector dicke(SpinQuantum j, int two_m, Axis axis);

// Coherent spin state |j,j>_n, the maximal eigenstate of n.J.
StateVector css(SpinQuantum j, const Eigen::Vector3d& direction);
StateVector css(SpinQuantum j, Axis axis);

// Optimal probe for the joint strategy: |j,0> for integer j, the
// ancilla-entangled (|j,1/2>|0> + e^{i phase}|j,-1/2>|1>)/sqrt(2) for
// semi-odd j.
StateVector joint_optimal(SpinQuantum j, double relative_phase = 0.0);

// GHZ-like probe (|j,j>_axis + e^{i xi} |j,-j>_axis)/sqrt(2).
StateVector sequential_optimal(SpinQuantum j, Axis axis, double xi = 0.0);

// Spin-squeezed probe for the spin-measurement strategy:
//   integer j:  (|j,-1>_y + sqrt(2)|j,0>_y + |j,1>_y)/2
//   semi-odd j: (|j,-1/2>_y + |j,1/2>_y)/sqrt(2)
StateVector constructive_squeezed(SpinQuantum j);

// Purification of a density matrix on system (x) ancilla, ancilla_dim = rank.
StateVector purify(const Matrix& rho, double tol = 1e-10);

// Tr_A |psi><psi| on the system factor.
Matrix partial_trace_ancilla(const StateVector& state);

// Tensor product of two states (used for two-spin probes).
StateVector tensor(const StateVector& a, const StateVector& b);

// Parses the state-spec grammar "kind:key=val,..." (see README). When the
// spec omits j, `default_j` is used.
StateVector parse_state_spec(const std::string& text,
                             std::optional<SpinQuantum> default_j = {});

}  // namespace spinestim
