#include "spinestim/squeezing.hpp"

#include <cmath>

#include "spinestim/qfi.hpp"

namespace spinestim {

Eigen::Vector3d mean_spin_direction(const StateVector& state) {
    SpinOps ops = probe_ops(state);
    Eigen::Vector3d mean(expectation_real(state, ops.x),
                         expectation_real(state, ops.y),
                         expectation_real(state, ops.z));
    double n = mean.norm();
    if (n < 1e-10)
        throw UndefinedMsdError("mean spin vanishes, MSD undefined");
    return mean / n;
}

double phase_sensitivity_spin(const StateVector& state, Axis rotation_axis) {
    if (rotation_axis == Axis::Z)
        throw std::invalid_argument("rotation axis must be x or y");
    SpinOps ops = probe_ops(state);
    double jz = expectation_real(state, ops.z);
    if (std::abs(jz) < 1e-10)
        throw DivergentSensitivityError(
            "<Jz> ~ 0: spin-measurement sensitivity diverges for this probe");
    const Operator& readout = rotation_axis == Axis::X ? ops.y : ops.x;
    return std::sqrt(variance(state, readout)) / std::abs(jz);
}

SqueezingReport is_spin_squeezed(const StateVector& state, Axis rotation_axis) {
    double dphi = phase_sensitivity_spin(state, rotation_axis);
    SpinQuantum j(state.space.system_dim - 1);
    double sql = 1.0 / std::sqrt(2.0 * j.j());
    return SqueezingReport{mean_spin_direction(state), dphi, sql,
                           dphi < sql - 1e-12};
}

double kitagawa_ueda_parameter(const StateVector& state) {
    Eigen::Vector3d n = mean_spin_direction(state);
    SpinOps ops = probe_ops(state);
    // two orthonormal directions orthogonal to the MSD
    Eigen::Vector3d seed = std::abs(n.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1)
                                                 : Eigen::Vector3d(1, 0, 0);
    Eigen::Vector3d e1 = n.cross(seed).normalized();
    Eigen::Vector3d e2 = n.cross(e1);
    auto proj = [&](const Eigen::Vector3d& e) {
        Matrix m = e.x() * ops.x.mat + e.y() * ops.y.mat + e.z() * ops.z.mat;
        return Operator{std::move(m), true};
    };
    Operator a = proj(e1), b = proj(e2);
    double vaa = variance(state, a);
    double vbb = variance(state, b);
    double vab = sym_covariance(state, a, b);
    // minimal variance in the orthogonal plane
    double mean = 0.5 * (vaa + vbb);
    double rad = std::sqrt(0.25 * (vaa - vbb) * (vaa - vbb) + vab * vab);
    SpinQuantum j(state.space.system_dim - 1);
    return (mean - rad) / (j.j() / 2.0);
}

TwoModeOps two_mode_ops(SpinQuantum j1, SpinQuantum j2) {
    SpinOps a = make_spin_ops(j1);
    SpinOps b = make_spin_ops(j2);
    Matrix i1 = Matrix::Identity(j1.dim(), j1.dim());
    Matrix i2 = Matrix::Identity(j2.dim(), j2.dim());
    auto combine = [&](const Operator& oa, const Operator& ob, double sign) {
        return Operator{kron(oa.mat, i2) + sign * kron(i1, ob.mat), true};
    };
    return TwoModeOps{combine(a.x, b.x, +1), combine(a.x, b.x, -1),
                      combine(a.y, b.y, +1), combine(a.y, b.y, -1),
                      combine(a.z, b.z, +1), combine(a.z, b.z, -1)};
}

TwoModeReport is_two_mode_squeezed(const StateVector& state, SpinQuantum j1,
                                   SpinQuantum j2) {
    if (state.dim() != j1.dim() * j2.dim())
        throw DimensionMismatch(
            "is_two_mode_squeezed: state dim is not the two-spin product");
    TwoModeOps ops = two_mode_ops(j1, j2);
    StateVector s{CompositeSpace{state.dim(), 0}, state.amp};
    double vxm = variance(s, ops.x_minus);
    double vyp = variance(s, ops.y_plus);
    double zp = expectation_real(s, ops.z_plus);
    return TwoModeReport{vxm, vyp, zp,
                         vxm + vyp < std::abs(zp) - 1e-12};
}

}  // namespace spinestim
