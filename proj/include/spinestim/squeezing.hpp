#pragma once

#include "spinestim/states.hpp"

namespace spinestim {

struct SqueezingReport {
    Eigen::Vector3d msd;
    double delta_phi;
    double sql;  // 1/sqrt(2j)
    bool squeezed;
};

struct TwoModeReport {
    double var_x_minus;
    double var_y_plus;
    double z_plus_mean;
    bool two_mode_squeezed;
};

struct TwoModeOps {
    Operator x_plus, x_minus, y_plus, y_minus, z_plus, z_minus;
};

// <J>/|<J>|; throws UndefinedMsdError when the mean spin vanishes.
Eigen::Vector3d mean_spin_direction(const StateVector& state);

// Error-propagation sensitivity of a spin measurement on a probe with mean
// spin along z: rotation about x reads out Jy, about y reads out Jx.
// Throws DivergentSensitivityError when <Jz> ~ 0.
double phase_sensitivity_spin(const StateVector& state, Axis rotation_axis);

SqueezingReport is_spin_squeezed(const StateVector& state, Axis rotation_axis);

// Kitagawa-Ueda style parameter: min variance orthogonal to the MSD over j/2.
// Secondary diagnostic only.
double kitagawa_ueda_parameter(const StateVector& state);

// J_{alpha +-} = J_alpha (x) I +- I (x) J_alpha on the two-spin space.
TwoModeOps two_mode_ops(SpinQuantum j1, SpinQuantum j2);

TwoModeReport is_two_mode_squeezed(const StateVector& state, SpinQuantum j1,
                                   SpinQuantum j2);

}  // namespace spinestim
