#include <doctest.h>

#include <random>

#include "spinestim/states.hpp"

using namespace spinestim;

namespace {

double expect_axis(const StateVector& s, Axis a) {
    SpinQuantum j(s.space.system_dim - 1);
    SpinOps ops = make_spin_ops(j);
    return expectation_real(StateVector{CompositeSpace{s.space.system_dim, 0},
                                        s.amp},
                            ops.axis(a));
}

Matrix random_density(int dim, int rank, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < rank; ++k) a(i, k) = Complex(gauss(gen), gauss(gen));
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return rho;
}

}  // namespace

TEST_CASE("dicke states") {
    SpinQuantum j1(2);
    StateVector d0 = dicke(j1, 0, Axis::Z);
    SpinOps ops = make_spin_ops(j1);
    CHECK(std::abs(expectation_real(d0, ops.z)) <= 1e-12);
    Operator jz2{ops.z.mat * ops.z.mat, true};
    Operator jx2{ops.x.mat * ops.x.mat, true};
    Operator jy2{ops.y.mat * ops.y.mat, true};
    CHECK(std::abs(expectation_real(d0, jz2)) <= 1e-12);
    CHECK(expectation_real(d0, jx2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation_real(d0, jy2) == doctest::Approx(1.0).epsilon(1e-12));

    StateVector up = dicke(SpinQuantum(1), 1, Axis::Z);
    CHECK(std::abs(up.amp(0) - 1.0) <= 1e-14);

    CHECK_THROWS_AS(dicke(j1, 4, Axis::Z), std::invalid_argument);
    CHECK_THROWS_AS(dicke(j1, 1, Axis::Z), std::invalid_argument);  // parity
}

TEST_CASE("coherent spin states") {
    SpinQuantum j(3);
    for (const Eigen::Vector3d& n :
         {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 0),
          Eigen::Vector3d(1, 1, 1).normalized(),
          Eigen::Vector3d(0.3, -0.8, 0.5).normalized()}) {
        StateVector c = css(j, n);
        Eigen::Vector3d mean(expect_axis(c, Axis::X), expect_axis(c, Axis::Y),
                             expect_axis(c, Axis::Z));
        CHECK((mean - j.j() * n).norm() <= 1e-10);
        // variance along any orthogonal axis is j/2
        Eigen::Vector3d perp = n.cross(Eigen::Vector3d(0.23, 0.9, -0.4))
                                   .normalized();
        SpinOps ops = make_spin_ops(j);
        Matrix jp = perp.x() * ops.x.mat + perp.y() * ops.y.mat +
                    perp.z() * ops.z.mat;
        CHECK(variance(c, Operator{jp, true}) ==
              doctest::Approx(j.j() / 2).epsilon(1e-10));
    }
    StateVector cx = css(SpinQuantum(1), Axis::X);
    CHECK(std::abs(cx.amp(0) - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(cx.amp(1) - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK_THROWS_AS(css(j, Eigen::Vector3d(0, 0, 0)), std::invalid_argument);
}

TEST_CASE("joint_optimal satisfies the saturation conditions up to j = 10") {
    for (int tj = 1; tj <= 20; ++tj) {
        SpinQuantum j(tj);
        StateVector psi = joint_optimal(j);
        psi.check_norm();
        SpinQuantum sys(j.two_j);
        SpinOps base = make_spin_ops(sys);
        Operator jx = embed(base.x, psi.space);
        Operator jy = embed(base.y, psi.space);
        Operator jz = embed(base.z, psi.space);
        CHECK(std::abs(sym_covariance(psi, jx, jy)) <= 1e-10);
        CHECK(std::abs(expectation_real(psi, jx)) <= 1e-10);
        CHECK(std::abs(expectation_real(psi, jy)) <= 1e-10);
        CHECK(std::abs(expectation_real(psi, jz)) <= 1e-10);
        double jz2 = expectation_real(
            psi, Operator{jz.mat * jz.mat, true});
        double expect_z2 = j.is_integer() ? 0.0 : 0.25;
        CHECK(jz2 == doctest::Approx(expect_z2).epsilon(1e-10));
        double x2 = expectation_real(psi, Operator{jx.mat * jx.mat, true});
        double y2 = expectation_real(psi, Operator{jy.mat * jy.mat, true});
        double iso = 0.5 * (j.j() * (j.j() + 1) - jz2);
        CHECK(x2 == doctest::Approx(iso).epsilon(1e-10));
        CHECK(y2 == doctest::Approx(iso).epsilon(1e-10));
    }
    CHECK(joint_optimal(SpinQuantum(2)).space.ancilla_dim == 0);
    CHECK(joint_optimal(SpinQuantum(3)).space.ancilla_dim == 2);
}

TEST_CASE("sequential_optimal: extremal variance") {
    SpinQuantum j(4);
    StateVector psi = sequential_optimal(j, Axis::X);
    SpinOps ops = make_spin_ops(j);
    CHECK(std::abs(expectation_real(psi, ops.x)) <= 1e-10);
    CHECK(expectation_real(psi, Operator{ops.x.mat * ops.x.mat, true}) ==
          doctest::Approx(j.j() * j.j()).epsilon(1e-10));

    // at j = 1/2 the GHZ superposition is a CSS orthogonal to x
    StateVector half = sequential_optimal(SpinQuantum(1), Axis::X);
    SpinOps h = make_spin_ops(SpinQuantum(1));
    double mx = expectation_real(half, h.x);
    double my = expectation_real(half, h.y);
    double mz = expectation_real(half, h.z);
    CHECK(std::abs(mx) <= 1e-10);
    CHECK(std::hypot(my, mz) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("constructive_squeezed values") {
    SpinQuantum j1(2);
    StateVector s = constructive_squeezed(j1);
    SpinOps ops = make_spin_ops(j1);
    CHECK(std::abs(expectation_real(s, ops.y)) <= 1e-10);
    CHECK(expectation_real(s, Operator{ops.y.mat * ops.y.mat, true}) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(expectation_real(s, ops.z)) ==
          doctest::Approx(std::sqrt(j1.j() * (j1.j() + 1) / 2)).epsilon(1e-10));
    CHECK_THROWS_AS(constructive_squeezed(SpinQuantum(0)),
                    std::invalid_argument);
}

TEST_CASE("purify round-trips the density matrix") {
    std::mt19937_64 gen(5);
    // pure state
    Matrix v = random_density(3, 1, gen);
    StateVector p = purify(v);
    CHECK(p.space.ancilla_dim == 1);
    CHECK(((partial_trace_ancilla(p) - v).cwiseAbs().maxCoeff()) <= 1e-10);

    // maximally mixed qubit
    Matrix mixed = 0.5 * Matrix::Identity(2, 2);
    StateVector bell = purify(mixed);
    CHECK(bell.space.ancilla_dim == 2);
    CHECK(((partial_trace_ancilla(bell) - mixed).cwiseAbs().maxCoeff()) <=
          1e-12);

    // 100 random density matrices of mixed rank
    for (int k = 0; k < 100; ++k) {
        int dim = 2 + static_cast<int>(gen() % 4);
        int rank = 1 + static_cast<int>(gen() % dim);
        Matrix rho = random_density(dim, rank, gen);
        StateVector psi = purify(rho);
        CHECK(((partial_trace_ancilla(psi) - rho).cwiseAbs().maxCoeff()) <=
              1e-10);
    }

    CHECK_THROWS_AS(purify(Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("state spec parser") {
    StateVector d = parse_state_spec("dicke:j=1,m=0,axis=z");
    CHECK(d.dim() == 3);
    CHECK(std::abs(d.amp(1) - 1.0) <= 1e-14);

    StateVector s = parse_state_spec("seq:j=2,axis=x,xi=0");
    StateVector ref = sequential_optimal(SpinQuantum(4), Axis::X, 0.0);
    CHECK(((s.amp - ref.amp).cwiseAbs().maxCoeff()) <= 1e-14);

    StateVector raw = parse_state_spec("raw:[1,0,0,1]/j=3/2");
    CHECK(raw.amp.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(raw.amp(0) - 1.0 / std::sqrt(2.0)) <= 1e-14);

    StateVector cplx = parse_state_spec("raw:[1,0.5+0.5i]/j=1/2");
    CHECK(cplx.amp.norm() == doctest::Approx(1.0).epsilon(1e-14));

    // default j flows in from context
    StateVector c = parse_state_spec("css:z", SpinQuantum(4));
    CHECK(c.dim() == 5);

    CHECK_THROWS_AS(parse_state_spec("nope:j=1"), ParseError);
    CHECK_THROWS_AS(parse_state_spec("dicke:j=1"), ParseError);
    CHECK_THROWS_AS(parse_state_spec("raw:[0,0]/j=1/2"), ParseError);
    CHECK_THROWS_AS(parse_state_spec("raw:[1,2/j=1/2"), ParseError);
}

TEST_CASE("bound values do not depend on the free phases") {
    // sampled phases leave the sensitivities invariant
    SpinQuantum j(3);
    SpinOps base = make_spin_ops(j);
    double ref = -1;
    for (int k = 0; k < 8; ++k) {
        double phase = k * M_PI / 4;
        StateVector psi = joint_optimal(j, phase);
        Operator jx = embed(base.x, psi.space);
        Operator jy = embed(base.y, psi.space);
        double vxx = sym_covariance(psi, jx, jx);
        double vyy = sym_covariance(psi, jy, jy);
        double vxy = sym_covariance(psi, jx, jy);
        double tr_inv = (vxx + vyy) / (4 * (vxx * vyy - vxy * vxy));
        if (ref < 0) ref = tr_inv;
        CHECK(tr_inv == doctest::Approx(ref).epsilon(1e-10));
    }
    ref = -1;
    for (int k = 0; k < 8; ++k) {
        StateVector psi = sequential_optimal(j, Axis::X, k * M_PI / 4);
        double v = 4 * sym_covariance(psi, base.x, base.x);
        if (ref < 0) ref = v;
        CHECK(v == doctest::Approx(ref).epsilon(1e-10));
    }
}
