#include <doctest.h>

#include <random>

#include "spinestim/qfi.hpp"

using namespace spinestim;

namespace {

StateVector random_state(SpinQuantum j, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector amp(j.dim());
    for (int k = 0; k < j.dim(); ++k) amp(k) = Complex(gauss(gen), gauss(gen));
    amp.normalize();
    return StateVector{CompositeSpace{j.dim(), 0}, std::move(amp)};
}

}  // namespace

TEST_CASE("evolve: identity at zero phase, norm preservation, pi rotation") {
    SpinQuantum j(1);
    StateVector up = dicke(j, 1, Axis::Z);
    StateVector same = evolve(up, PhasePair{0, 0});
    CHECK(((same.amp - up.amp).cwiseAbs().maxCoeff()) <= 1e-14);

    std::mt19937_64 gen(3);
    for (int k = 0; k < 20; ++k) {
        StateVector psi = random_state(SpinQuantum(4), gen);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        StateVector out = evolve(psi, PhasePair{u(gen), u(gen)});
        CHECK(out.amp.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    StateVector flipped = evolve(up, PhasePair{M_PI, 0});
    SpinOps ops = make_spin_ops(j);
    CHECK(expectation_real(flipped, ops.z) ==
          doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("auxiliary vectors: orthogonality and norm identity") {
    std::mt19937_64 gen(11);
    for (int tj : {1, 2, 4}) {
        SpinQuantum j(tj);
        SpinOps ops = make_spin_ops(j);
        for (int k = 0; k < 20; ++k) {
            StateVector psi = random_state(j, gen);
            AuxVectors aux = aux_vectors(psi, PhasePair{0.01, -0.02});
            CHECK(std::abs(psi.amp.dot(aux.lx0)) <= 1e-10);
            CHECK(std::abs(psi.amp.dot(aux.ly0)) <= 1e-10);
            CHECK(aux.lx0.squaredNorm() ==
                  doctest::Approx(4 * variance(psi, ops.x)).epsilon(1e-10));
        }
    }
    // GHZ probe: |l_x0|^2 = 4 j^2 * 4 / ... = 4 var(Jx) = 4 j^2
    SpinQuantum j2(4);
    StateVector ghz = sequential_optimal(j2, Axis::X);
    AuxVectors aux = aux_vectors(ghz, PhasePair{});
    CHECK(aux.lx0.squaredNorm() == doctest::Approx(16.0).epsilon(1e-10));
}

TEST_CASE("analytic QFI on reference states") {
    for (int tj : {1, 2, 4, 9}) {
        SpinQuantum j(tj);
        StateVector c = css(j, Axis::Z);
        QfiMatrix h = qfi_matrix_analytic(c, PhasePair{});
        CHECK(h.h(0, 0) == doctest::Approx(2 * j.j()).epsilon(1e-10));
        CHECK(h.h(1, 1) == doctest::Approx(2 * j.j()).epsilon(1e-10));
        CHECK(std::abs(h.h(0, 1)) <= 1e-10);
    }
    QfiMatrix h = qfi_matrix_analytic(dicke(SpinQuantum(2), 0, Axis::Z), {});
    CHECK(h.h(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(h.h(1, 1) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(crb(h).value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("first-order term is linear in phi and zero on optimal probes") {
    std::mt19937_64 gen(17);
    SpinQuantum j(3);
    for (int k = 0; k < 20; ++k) {
        StateVector psi = random_state(j, gen);
        PhasePair phi{0.03, -0.01};
        PhasePair phi2{0.06, -0.02};
        Eigen::Matrix2d h0 = qfi_matrix_analytic(psi, phi).h;
        Eigen::Matrix2d h1 =
            qfi_matrix_analytic(psi, phi, QfiOrder::FirstCorrected).h - h0;
        Eigen::Matrix2d h1d =
            qfi_matrix_analytic(psi, phi2, QfiOrder::FirstCorrected).h - h0;
        CHECK(((h1d - 2.0 * h1).cwiseAbs().maxCoeff()) <= 1e-10);
    }
    for (int tj : {2, 3}) {
        SpinQuantum jj(tj);
        PhasePair phi{0.05 / std::sqrt(2), 0.05 / std::sqrt(2)};
        for (const StateVector& psi :
             {joint_optimal(jj), sequential_optimal(jj, Axis::X)}) {
            Eigen::Matrix2d h1 =
                qfi_matrix_analytic(psi, phi, QfiOrder::FirstCorrected).h -
                qfi_matrix_analytic(psi, phi).h;
            CHECK((h1.cwiseAbs().maxCoeff()) <= 1e-12);
        }
    }
}

TEST_CASE("numeric oracle agrees with the analytic route") {
    std::mt19937_64 gen(23);
    for (int tj : {1, 2, 3, 4}) {
        SpinQuantum j(tj);
        for (int k = 0; k < 30; ++k) {
            StateVector psi = random_state(j, gen);
            QfiMatrix a = qfi_matrix_analytic(psi, PhasePair{});
            QfiMatrix n = qfi_matrix_numeric(psi, PhasePair{});
            CHECK(((a.h - n.h).cwiseAbs().maxCoeff()) <= 1e-6);
        }
    }
    CHECK_THROWS_AS(
        qfi_matrix_numeric(css(SpinQuantum(2), Axis::Z), PhasePair{}, 1.0),
        std::invalid_argument);
}

TEST_CASE("achievability residual tracks <Jz>") {
    std::mt19937_64 gen(29);
    SpinQuantum j(2);
    SpinOps ops = make_spin_ops(j);
    for (int k = 0; k < 50; ++k) {
        StateVector psi = random_state(j, gen);
        double jz = expectation_real(psi, ops.z);
        QfiMatrix h = qfi_matrix_analytic(psi, PhasePair{});
        CHECK(h.achievability_residual ==
              doctest::Approx(2.0 * jz).epsilon(1e-9));
    }
    QfiMatrix h0 = qfi_matrix_analytic(joint_optimal(j), PhasePair{});
    CHECK(std::abs(h0.achievability_residual) <= 1e-12);
}

TEST_CASE("general SLD solver") {
    // maximally mixed state: L = d * drho
    std::mt19937_64 gen(31);
    int d = 4;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix h(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) h(i, k) = Complex(gauss(gen), gauss(gen));
    Matrix drho = h + h.adjoint().eval();
    drho -= (drho.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    Matrix rho = Matrix::Identity(d, d) / static_cast<double>(d);
    Operator l = sld_general(rho, drho);
    CHECK(((l.mat - static_cast<double>(d) * drho).cwiseAbs().maxCoeff()) <=
          1e-8);
    // defining equation on the support
    Matrix resid = l.mat * rho + rho * l.mat - 2.0 * drho;
    CHECK((resid.cwiseAbs().maxCoeff()) <= 1e-8);

    // single-parameter family exp(i t Jz)|CSS_x>: H = 4 var(Jz) = 2j
    SpinQuantum j(4);
    SpinOps ops = make_spin_ops(j);
    StateVector cx = css(j, Axis::X);
    double step = 1e-5;
    auto rho_at = [&](double t) -> Matrix {
        Operator u = exp_i_hermitian(ops.z, t);
        Vector v = u.mat * cx.amp;
        return v * v.adjoint();
    };
    Matrix drho_t = (rho_at(step) - rho_at(-step)) / (2 * step);
    Matrix rho0 = rho_at(0);
    Operator lt = sld_general(rho0, drho_t);
    double qfi = (rho0 * lt.mat * lt.mat).trace().real();
    CHECK(qfi == doctest::Approx(2 * j.j()).epsilon(1e-6));

    CHECK_THROWS_AS(sld_general(rho0, Matrix::Identity(j.dim(), j.dim())),
                    std::invalid_argument);
}

TEST_CASE("crb: values, weights and the singular branch") {
    QfiMatrix h{Eigen::Matrix2d::Identity() * 4.0, QfiOrder::Zeroth, 0.0};
    CrbResult r = crb(h);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.total_sensitivity == doctest::Approx(1 / std::sqrt(2)).epsilon(1e-14));

    QfiMatrix ha{Eigen::Matrix2d::Identity() * 7.0, QfiOrder::Zeroth, 0.0};
    CHECK(crb(ha).value == doctest::Approx(2.0 / 7.0).epsilon(1e-14));

    // CSS probe end to end: dPhi = 1/sqrt(j)
    SpinQuantum j(6);
    CrbResult c = crb(qfi_matrix_analytic(css(j, Axis::Z), PhasePair{}));
    CHECK(c.total_sensitivity ==
          doctest::Approx(1 / std::sqrt(j.j())).epsilon(1e-10));

    // a Jx eigenstate has var(Jx) = 0: singular
    QfiMatrix s{(Eigen::Matrix2d() << 0, 0, 0, 4).finished(),
                QfiOrder::Zeroth, 0.0};
    CHECK_THROWS_AS(crb(s), SingularQfiError);
    CHECK_THROWS_AS(crb(h, Eigen::Matrix2d::Zero()), std::invalid_argument);
}

TEST_CASE("global phase invariance of the sensitivity") {
    SpinQuantum j(3);
    StateVector psi = joint_optimal(j);
    double ref = crb(qfi_matrix_analytic(psi, PhasePair{})).total_sensitivity;
    for (int k = 1; k < 5; ++k) {
        StateVector rotated = psi;
        rotated.amp *= std::exp(Complex(0, 0.37 * k));
        double v =
            crb(qfi_matrix_analytic(rotated, PhasePair{})).total_sensitivity;
        CHECK(v == doctest::Approx(ref).epsilon(1e-10));
    }
}
