#pragma once

#include <vector>

#include "spinestim/types.hpp"

namespace spinestim {

struct SpinOps {
    SpinQuantum j;
    Operator x, y, z;

    const Operator& axis(Axis a) const {
        switch (a) {
            case Axis::X: return x;
            case Axis::Y: return y;
            default: return z;
        }
    }
};

// Standard (2j+1)-dimensional representation from the ladder operators, in
// the Jz eigenbasis ordered m = j, j-1, ..., -j.
SpinOps make_spin_ops(SpinQuantum j);

// U = exp(i H) for Hermitian H, via spectral decomposition.
Operator exp_i_hermitian(const Operator& h, double scale = 1.0);

// Eigenvectors |j,m>_axis for m = j ... -j. The x/y bases are defined by
// rotating the canonical Jz basis:
//   |j,m>_x = exp(-i (pi/2) Jy) |j,m>_z
//   |j,m>_y = exp(+i (pi/2) Jx) |j,m>_z
// and each vector's phase is then normalized so its first nonzero amplitude
// (in z-basis order) is real positive.
std::vector<Vector> eigenbasis(SpinQuantum j, Axis axis);

// exp(i (phi_x Jx + phi_y Jy)) (x) I_ancilla.
Operator rotation_unitary(const PhasePair& phi, const SpinOps& ops,
                          const CompositeSpace& space);

// op (x) I_ancilla; identity when the space has no ancilla.
Operator embed(const Operator& op, const CompositeSpace& space);

Complex expectation(const StateVector& state, const Operator& op);
double expectation_real(const StateVector& state, const Operator& op);

// (1/2)<{A,B}> - <A><B>
double sym_covariance(const StateVector& state, const Operator& a,
                      const Operator& b);

double variance(const StateVector& state, const Operator& op);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace spinestim
