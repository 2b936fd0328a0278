#include <doctest.h>

#include <random>

#include "spinestim/squeezing.hpp"
#include "spinestim/strategies.hpp"

using namespace spinestim;

TEST_CASE("mean spin direction") {
    SpinQuantum j(4);
    Eigen::Vector3d n(0.2, -0.7, 0.4);
    n.normalize();
    StateVector c = css(j, n);
    CHECK((mean_spin_direction(c) - n).norm() <= 1e-10);
    CHECK_THROWS_AS(mean_spin_direction(dicke(j, 0, Axis::Z)),
                    UndefinedMsdError);
}

TEST_CASE("spin readout sensitivity on the CSS sits at the per-axis SQL") {
    for (int tj : {1, 2, 5, 8}) {
        SpinQuantum j(tj);
        StateVector c = css(j, Axis::Z);
        double expected = 1 / std::sqrt(2 * j.j());
        CHECK(phase_sensitivity_spin(c, Axis::X) ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(phase_sensitivity_spin(c, Axis::Y) ==
              doctest::Approx(expected).epsilon(1e-12));
        SqueezingReport rep = is_spin_squeezed(c, Axis::X);
        CHECK(!rep.squeezed);
        CHECK(rep.sql == doctest::Approx(expected).epsilon(1e-14));
        CHECK(std::abs(rep.msd.z() - 1.0) <= 1e-10);
    }
    CHECK_THROWS_AS(phase_sensitivity_spin(css(SpinQuantum(4), Axis::X),
                                           Axis::X),
                    DivergentSensitivityError);
}

TEST_CASE("the constructive probe beats the SQL from j = 3/2 on") {
    for (int tj = 1; tj <= 12; ++tj) {
        SpinQuantum j(tj);
        StateVector s = constructive_squeezed(j);
        SqueezingReport rep = is_spin_squeezed(s, Axis::X);
        double cas = j.j() * (j.j() + 1);
        double expected = j.is_integer() ? 1 / std::sqrt(cas)
                                         : 1 / std::sqrt(cas + 0.25);
        CHECK(rep.delta_phi == doctest::Approx(expected).epsilon(1e-10));
        CHECK(rep.squeezed == (tj >= 3));
        // a fresh copy serves each axis, so both legs share one sensitivity
        EffectiveCombination c = combine_effective(rep.delta_phi,
                                                   rep.delta_phi);
        CHECK(c.total == doctest::Approx(
                             spin_sequential_sensitivity(j).delta_phi_total)
                             .epsilon(1e-10));
    }
}

TEST_CASE("Kitagawa-Ueda parameter") {
    SpinQuantum j(6);
    CHECK(kitagawa_ueda_parameter(css(j, Axis::Z)) ==
          doctest::Approx(1.0).epsilon(1e-8));
    double xi = kitagawa_ueda_parameter(constructive_squeezed(j));
    CHECK(xi <= 0.5 / (j.j() / 2) + 1e-8);
    CHECK(xi > 0.0);
}

TEST_CASE("two-mode operators close the expected algebra") {
    SpinQuantum j(1);
    TwoModeOps ops = two_mode_ops(j, j);
    auto comm = [](const Operator& a, const Operator& b) {
        return (a.mat * b.mat - b.mat * a.mat).eval();
    };
    CHECK(((comm(ops.x_plus, ops.y_plus) - Complex(0, 1) * ops.z_plus.mat)
               .cwiseAbs()
               .maxCoeff()) <= 1e-12);
    CHECK(((comm(ops.x_minus, ops.y_minus) - Complex(0, 1) * ops.z_plus.mat)
               .cwiseAbs()
               .maxCoeff()) <= 1e-12);
    CHECK(((comm(ops.x_minus, ops.y_plus) - Complex(0, 1) * ops.z_minus.mat)
               .cwiseAbs()
               .maxCoeff()) <= 1e-12);
}

TEST_CASE("two-mode criterion separates product and entangled states") {
    SpinQuantum j(1);
    // CSS (x) CSS sits exactly on the boundary
    StateVector prod = tensor(css(j, Axis::Z), css(j, Axis::Z));
    TwoModeReport boundary = is_two_mode_squeezed(prod, j, j);
    CHECK(!boundary.two_mode_squeezed);
    CHECK(boundary.var_x_minus + boundary.var_y_plus ==
          doctest::Approx(std::abs(boundary.z_plus_mean)).epsilon(1e-10));

    // cos(pi/8)|uu> + sin(pi/8)|dd> has margin sqrt(2) - 1
    double c = std::cos(M_PI / 8), s = std::sin(M_PI / 8);
    Vector amp = Vector::Zero(4);
    amp(0) = c;
    amp(3) = s;
    StateVector ent{CompositeSpace{4, 0}, amp};
    TwoModeReport rep = is_two_mode_squeezed(ent, j, j);
    CHECK(rep.two_mode_squeezed);
    double margin =
        std::abs(rep.z_plus_mean) - rep.var_x_minus - rep.var_y_plus;
    CHECK(margin == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-10));

    // random product states never trigger the criterion
    std::mt19937_64 gen(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        Vector a(2), b(2);
        for (int i = 0; i < 2; ++i) {
            a(i) = Complex(gauss(gen), gauss(gen));
            b(i) = Complex(gauss(gen), gauss(gen));
        }
        a.normalize();
        b.normalize();
        StateVector p = tensor(StateVector{CompositeSpace{2, 0}, a},
                               StateVector{CompositeSpace{2, 0}, b});
        CHECK(!is_two_mode_squeezed(p, j, j).two_mode_squeezed);
    }
}
