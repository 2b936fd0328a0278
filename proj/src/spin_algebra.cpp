#include "spinestim/spin_algebra.hpp"

#include <cmath>

namespace spinestim {

SpinQuantum SpinQuantum::parse(const std::string& text) {
    auto bad = [&] {
        return std::invalid_argument("invalid spin value: '" + text + "'");
    };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            int num = std::stoi(text.substr(0, slash));
            int den = std::stoi(text.substr(slash + 1));
            if (den == 2) return SpinQuantum(num);
            if (den == 1) return SpinQuantum(2 * num);
            throw bad();
        }
        double v = std::stod(text);
        double tj = 2.0 * v;
        double rounded = std::round(tj);
        if (std::abs(tj - rounded) > 1e-9) throw bad();
        return SpinQuantum(static_cast<int>(rounded));
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
}

std::string SpinQuantum::str() const {
    if (is_integer()) return std::to_string(two_j / 2);
    return std::to_string(two_j) + "/2";
}

Axis axis_from_string(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    throw std::invalid_argument("axis must be x, y or z, got '" + s + "'");
}

std::string axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}

Operator Operator::hermitian_checked(Matrix m) {
    double res = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
    if (res > kHermitianTol)
        throw std::invalid_argument("matrix is not Hermitian, residual " +
                                    std::to_string(res));
    return Operator{std::move(m), true};
}

void StateVector::check_norm(double tol) const {
    double n = amp.norm();
    if (std::abs(n - 1.0) > tol)
        throw std::invalid_argument("state vector is not normalized, |psi| = " +
                                    std::to_string(n));
}

SpinOps make_spin_ops(SpinQuantum jq) {
    const int d = jq.dim();
    const double j = jq.j();
    Matrix jp = Matrix::Zero(d, d);
    Matrix jz = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        double m = j - k;
        jz(k, k) = m;
        if (k >= 1) {
            // <m+1| J+ |m> with m = j-k
            jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
        }
    }
    Matrix jm = jp.adjoint();
    Matrix jx = (jp + jm) / 2.0;
    Matrix jy = (jp - jm) / Complex(0, 2);
    return SpinOps{jq, Operator{jx, true}, Operator{jy, true},
                   Operator{jz, true}};
}

Operator exp_i_hermitian(const Operator& h, double scale) {
    if (!h.hermitian)
        throw std::invalid_argument("exp_i_hermitian needs a Hermitian generator");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
    Vector phases(h.dim());
    for (int k = 0; k < h.dim(); ++k)
        phases(k) = std::exp(Complex(0, scale * es.eigenvalues()(k)));
    Matrix u = es.eigenvectors() * phases.asDiagonal() *
               es.eigenvectors().adjoint();
    return Operator{std::move(u), false};
}

std::vector<Vector> eigenbasis(SpinQuantum j, Axis axis) {
    SpinOps ops = make_spin_ops(j);
    const int d = j.dim();
    Matrix basis;
    switch (axis) {
        case Axis::Z:
            basis = Matrix::Identity(d, d);
            break;
        case Axis::X:
            basis = exp_i_hermitian(ops.y, -M_PI / 2).mat;
            break;
        case Axis::Y:
            basis = exp_i_hermitian(ops.x, M_PI / 2).mat;
            break;
    }
    std::vector<Vector> out;
    out.reserve(d);
    for (int k = 0; k < d; ++k) {
        Vector v = basis.col(k);
        for (int i = 0; i < d; ++i) {
            if (std::abs(v(i)) > 1e-12) {
                v *= std::exp(Complex(0, -std::arg(v(i))));
                break;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) =
                a(i, k) * b;
    return out;
}

Operator embed(const Operator& op, const CompositeSpace& space) {
    if (op.dim() != space.system_dim)
        throw DimensionMismatch("embed: operator dim " +
                                std::to_string(op.dim()) +
                                " != system dim " +
                                std::to_string(space.system_dim));
    if (space.ancilla_dim == 0) return op;
    Matrix id = Matrix::Identity(space.ancilla_dim, space.ancilla_dim);
    return Operator{kron(op.mat, id), op.hermitian};
}

Operator rotation_unitary(const PhasePair& phi, const SpinOps& ops,
                          const CompositeSpace& space) {
    Matrix gen = phi.phi_x * ops.x.mat + phi.phi_y * ops.y.mat;
    Operator u = exp_i_hermitian(Operator{std::move(gen), true});
    return embed(Operator{u.mat, false}, space);
}

Complex expectation(const StateVector& state, const Operator& op) {
    if (state.dim() != op.dim())
        throw DimensionMismatch("expectation: state dim " +
                                std::to_string(state.dim()) + " != op dim " +
                                std::to_string(op.dim()));
    return state.amp.dot(op.mat * state.amp);
}

double expectation_real(const StateVector& state, const Operator& op) {
    Complex v = expectation(state, op);
    if (op.hermitian && std::abs(v.imag()) > 1e-10)
        throw DomainError("expectation of Hermitian operator has imaginary part " +
                          std::to_string(v.imag()));
    return v.real();
}

double sym_covariance(const StateVector& state, const Operator& a,
                      const Operator& b) {
    if (!a.hermitian || !b.hermitian)
        throw std::invalid_argument("sym_covariance needs Hermitian operators");
    if (a.dim() != b.dim() || a.dim() != state.dim())
        throw DimensionMismatch("sym_covariance: dimension mismatch");
    Vector av = a.mat * state.amp;
    Vector bv = b.mat * state.amp;
    double anti = state.amp.dot(a.mat * bv).real();  // Re<AB> = (1/2)<{A,B}>
    double ma = state.amp.dot(av).real();
    double mb = state.amp.dot(bv).real();
    return anti - ma * mb;
}

double variance(const StateVector& state, const Operator& op) {
    return sym_covariance(state, op, op);
}

}  // namespace spinestim
