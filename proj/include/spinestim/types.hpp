#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace spinestim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;

// ---------------------------------------------------------------------------
// Errors. Domain failures (singular QFI, divergent estimator, undefined mean
// spin) are typed so the CLI can map them to a dedicated exit code.
// ---------------------------------------------------------------------------

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : DomainError {
    using DomainError::DomainError;
};

struct SingularQfiError : DomainError {
    using DomainError::DomainError;
};

struct DivergentSensitivityError : DomainError {
    using DomainError::DomainError;
};

struct UndefinedMsdError : DomainError {
    using DomainError::DomainError;
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// ---------------------------------------------------------------------------
// SpinQuantum: the spin magnitude j, stored exactly as the integer 2j so the
// integer / semi-odd branches never depend on floating-point parity checks.
// ---------------------------------------------------------------------------

struct SpinQuantum {
    int two_j;

    explicit SpinQuantum(int tj) : two_j(tj) {
        if (tj < 1) throw std::invalid_argument("SpinQuantum: need 2j >= 1");
    }

    double j() const { return two_j / 2.0; }
    int dim() const { return two_j + 1; }
    bool is_integer() const { return two_j % 2 == 0; }
    bool is_semi_odd() const { return two_j % 2 == 1; }

    // Accepts "3/2", "1.5" or "2".
    static SpinQuantum parse(const std::string& text);

    std::string str() const;

    bool operator==(const SpinQuantum&) const = default;
};

enum class Axis { X, Y, Z };

Axis axis_from_string(const std::string& s);
std::string axis_name(Axis a);

// System (x) optional ancilla. ancilla_dim == 0 means no ancilla factor.
struct CompositeSpace {
    int system_dim;
    int ancilla_dim;  // 0 = absent

    int total_dim() const { return system_dim * std::max(ancilla_dim, 1); }

    bool operator==(const CompositeSpace&) const = default;
};

// Dense complex square matrix plus a Hermitian tag set by constructors that
// guarantee it.
struct Operator {
    Matrix mat;
    bool hermitian = false;

    int dim() const { return static_cast<int>(mat.rows()); }

    static Operator hermitian_checked(Matrix m);

    static Operator identity(int d) {
        return Operator{Matrix::Identity(d, d), true};
    }
};

struct StateVector {
    CompositeSpace space;
    Vector amp;

    int dim() const { return static_cast<int>(amp.size()); }
    void check_norm(double tol = 1e-12) const;
};

// The rotation phases (phi_x, phi_y); the z component is identically zero.
struct PhasePair {
    double phi_x = 0.0;
    double phi_y = 0.0;

    double norm() const { return std::hypot(phi_x, phi_y); }
};

}  // namespace spinestim
