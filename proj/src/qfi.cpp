#include "spinestim/qfi.hpp"

#include <cmath>
#include <limits>

namespace spinestim {

SpinOps probe_ops(const StateVector& state) {
    SpinQuantum j(state.space.system_dim - 1);
    SpinOps ops = make_spin_ops(j);
    return SpinOps{j, embed(ops.x, state.space), embed(ops.y, state.space),
                   embed(ops.z, state.space)};
}

StateVector evolve(const StateVector& psi0, const PhasePair& phi) {
    SpinQuantum j(psi0.space.system_dim - 1);
    SpinOps ops = make_spin_ops(j);
    Operator u = rotation_unitary(phi, ops, psi0.space);
    return StateVector{psi0.space, u.mat * psi0.amp};
}

AuxVectors aux_vectors(const StateVector& psi0, const PhasePair& phi) {
    psi0.check_norm(1e-10);
    SpinOps ops = probe_ops(psi0);
    const Vector& psi = psi0.amp;
    const Complex two_i(0, 2);

    auto l0 = [&](const Operator& jmu) -> Vector {
        Vector jv = jmu.mat * psi;
        Complex mean = psi.dot(jv);
        return two_i * (jv - mean * psi);
    };

    Matrix phi_j = phi.phi_x * ops.x.mat + phi.phi_y * ops.y.mat;
    auto l1 = [&](const Operator& jmu) -> Vector {
        Vector jv = jmu.mat * psi;
        Complex mean = psi.dot(jv);
        Complex cross = psi.dot(jmu.mat * (phi_j * psi));
        return 2.0 * (phi_j * psi * mean - cross * psi);
    };

    return AuxVectors{l0(ops.x), l0(ops.y), l1(ops.x), l1(ops.y)};
}

QfiMatrix qfi_matrix_analytic(const StateVector& psi0, const PhasePair& phi,
                              QfiOrder order) {
    psi0.check_norm(1e-10);
    SpinOps ops = probe_ops(psi0);

    Eigen::Matrix2d h;
    h(0, 0) = 4.0 * sym_covariance(psi0, ops.x, ops.x);
    h(1, 1) = 4.0 * sym_covariance(psi0, ops.y, ops.y);
    h(0, 1) = h(1, 0) = 4.0 * sym_covariance(psi0, ops.x, ops.y);

    AuxVectors aux = aux_vectors(psi0, phi);
    Vector lx = aux.lx0;
    Vector ly = aux.ly0;

    if (order == QfiOrder::FirstCorrected) {
        Matrix phi_j = phi.phi_x * ops.x.mat + phi.phi_y * ops.y.mat;
        auto comm_mean = [&](const Operator& jmu) -> Complex {
            return psi0.amp.dot(phi_j * (jmu.mat * psi0.amp)) -
                   psi0.amp.dot(jmu.mat * (phi_j * psi0.amp));
        };
        Complex cx = comm_mean(ops.x);
        Complex cy = comm_mean(ops.y);
        double mx = expectation_real(psi0, ops.x);
        double my = expectation_real(psi0, ops.y);
        const Complex two_i(0, 2);
        Eigen::Matrix2d h1;
        h1(0, 0) = (two_i * (cx * mx + cx * mx)).real();
        h1(1, 1) = (two_i * (cy * my + cy * my)).real();
        h1(0, 1) = h1(1, 0) = (two_i * (cy * mx + cx * my)).real();
        h += h1;
        lx += aux.lx1;
        ly += aux.ly1;
    }

    double residual = lx.dot(ly).imag();
    return QfiMatrix{h, order, residual};
}

QfiMatrix qfi_matrix_numeric(const StateVector& psi0, const PhasePair& phi,
                             double step) {
    if (step < 1e-7 || step > 1e-3)
        throw std::invalid_argument("qfi_matrix_numeric: step out of [1e-7, 1e-3]");
    psi0.check_norm(1e-10);

    auto rho_at = [&](double px, double py) -> Matrix {
        StateVector s = evolve(psi0, PhasePair{px, py});
        return s.amp * s.amp.adjoint();
    };

    auto compute = [&](double h) {
        Matrix rho = rho_at(phi.phi_x, phi.phi_y);
        Matrix dx = (rho_at(phi.phi_x + h, phi.phi_y) -
                     rho_at(phi.phi_x - h, phi.phi_y)) /
                    (2.0 * h);
        Matrix dy = (rho_at(phi.phi_x, phi.phi_y + h) -
                     rho_at(phi.phi_x, phi.phi_y - h)) /
                    (2.0 * h);
        Matrix lx = 2.0 * dx;
        Matrix ly = 2.0 * dy;
        Eigen::Matrix2d q;
        q(0, 0) = (rho * (lx * lx)).trace().real();
        q(1, 1) = (rho * (ly * ly)).trace().real();
        q(0, 1) = q(1, 0) =
            0.5 * (rho * (lx * ly + ly * lx)).trace().real();
        double residual = (rho * (lx * ly)).trace().imag();
        return std::pair<Eigen::Matrix2d, double>(q, residual);
    };

    auto [h1, residual] = compute(step);
    auto [h2, residual2] = compute(2.0 * step);
    (void)residual2;
    double scale = std::max(1.0, h1.cwiseAbs().maxCoeff());
    bool warn = (h1 - h2).cwiseAbs().maxCoeff() >
                std::max(1e-6, 10.0 * step * step * scale);
    return QfiMatrix{h1, QfiOrder::Numeric, residual, warn};
}

Operator sld_general(const Matrix& rho, const Matrix& drho) {
    if (rho.rows() != rho.cols() || drho.rows() != drho.cols() ||
        rho.rows() != drho.rows())
        throw DimensionMismatch("sld_general: dimension mismatch");
    if ((rho - rho.adjoint().eval()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("sld_general: rho not Hermitian");
    if ((drho - drho.adjoint().eval()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("sld_general: drho not Hermitian");
    if (std::abs(drho.trace()) > 1e-10)
        throw std::invalid_argument("sld_general: drho not traceless");

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const auto& p = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    const int d = static_cast<int>(rho.rows());
    Matrix d_eig = v.adjoint() * drho * v;
    Matrix l_eig = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            double denom = p(a) + p(b);
            if (denom > 1e-12) l_eig(a, b) = 2.0 * d_eig(a, b) / denom;
        }
    Matrix l = v * l_eig * v.adjoint();
    // symmetrize away roundoff
    l = 0.5 * (l + l.adjoint().eval());
    return Operator{std::move(l), true};
}

CrbResult crb(const QfiMatrix& h, const Eigen::Matrix2d& weight,
              int m_measurements) {
    if (m_measurements < 1)
        throw std::invalid_argument("crb: M must be >= 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> gw(weight);
    if (gw.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("crb: weight matrix must be positive definite");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h.h);
    if (es.eigenvalues().minCoeff() <= 1e-12) {
        Eigen::Vector2d dir = es.eigenvectors().col(0);
        throw SingularQfiError(
            "QFI matrix is singular: direction (" + std::to_string(dir(0)) +
            ", " + std::to_string(dir(1)) + ") is not locally estimable");
    }
    Eigen::Matrix2d hinv = h.h.inverse();
    double value = (weight * hinv).trace() / m_measurements;
    bool identity_weight =
        (weight - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12;
    double total = identity_weight
                       ? std::sqrt(static_cast<double>(m_measurements) * value)
                       : std::numeric_limits<double>::quiet_NaN();
    return CrbResult{weight, value, m_measurements, total};
}

}  // namespace spinestim
