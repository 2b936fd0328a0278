#include <doctest.h>

#include "spinestim/qfi.hpp"
#include "spinestim/strategies.hpp"

using namespace spinestim;

TEST_CASE("closed forms at small j") {
    // j = 1
    CHECK(joint_sensitivity(SpinQuantum(2)).delta_phi_total ==
          doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sequential_sensitivity(SpinQuantum(2)).delta_phi_total ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spin_sequential_sensitivity(SpinQuantum(2)).delta_phi_total ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sql_sensitivity(SpinQuantum(2)).delta_phi_total ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // j = 1/2: the parity branches kick in
    CHECK(joint_sensitivity(SpinQuantum(1)).delta_phi_total ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sequential_sensitivity(SpinQuantum(1)).delta_phi_total ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(spin_sequential_sensitivity(SpinQuantum(1)).delta_phi_total ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sql_sensitivity(SpinQuantum(1)).delta_phi_total ==
          doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("formulas match the parity branches up to j = 25") {
    for (int tj = 1; tj <= 50; ++tj) {
        SpinQuantum jq(tj);
        double j = jq.j();
        double cas = j * (j + 1);
        double je = jq.is_integer() ? 1 / std::sqrt(cas)
                                    : 1 / std::sqrt(cas - 0.25);
        double ses = jq.is_integer() ? 2 / std::sqrt(cas)
                                     : 2 / std::sqrt(cas + 0.25);
        CHECK(joint_sensitivity(jq).delta_phi_total ==
              doctest::Approx(je).epsilon(1e-13));
        CHECK(sequential_sensitivity(jq).delta_phi_total ==
              doctest::Approx(1 / j).epsilon(1e-13));
        CHECK(spin_sequential_sensitivity(jq).delta_phi_total ==
              doctest::Approx(ses).epsilon(1e-13));
        CHECK(sql_sensitivity(jq).delta_phi_total ==
              doctest::Approx(std::sqrt(2 / j)).epsilon(1e-13));
    }
}

TEST_CASE("strict ordering at every j") {
    for (int tj = 1; tj <= 50; ++tj) {
        SpinQuantum jq(tj);
        double je = joint_sensitivity(jq).delta_phi_total;
        double se = sequential_sensitivity(jq).delta_phi_total;
        double ss = spin_sequential_sensitivity(jq).delta_phi_total;
        double sql = sql_sensitivity(jq).delta_phi_total;
        CHECK(je < se + 1e-15);
        // at j = 1/2 the sequential and spin-sequential limits coincide
        CHECK(se <= ss + 1e-15);
        if (tj > 1) CHECK(se < ss);
        if (jq.j() > 1) CHECK(ss < sql);
    }
    // joint equals sequential only at j = 1/2
    CHECK(joint_sensitivity(SpinQuantum(1)).delta_phi_total <
          sequential_sensitivity(SpinQuantum(1)).delta_phi_total);
}

TEST_CASE("effective combination applies the sqrt(2) penalty in quadrature") {
    EffectiveCombination c = combine_effective(0.3, 0.4);
    CHECK(c.per_phase.first == doctest::Approx(0.3 * std::sqrt(2.0)));
    CHECK(c.per_phase.second == doctest::Approx(0.4 * std::sqrt(2.0)));
    CHECK(c.total == doctest::Approx(std::sqrt(2 * (0.09 + 0.16))));

    // symmetric case reduces to 2 dphi
    CHECK(combine_effective(0.5, 0.5).total == doctest::Approx(1.0));
}

TEST_CASE("sequential total equals the combined per-axis GHZ sensitivity") {
    for (int tj : {1, 2, 3, 8, 15}) {
        SpinQuantum jq(tj);
        double per_axis = 1 / (2 * jq.j());  // 1/sqrt(H_aa), H_aa = 4j^2
        EffectiveCombination c = combine_effective(per_axis, per_axis);
        CHECK(sequential_sensitivity(jq).delta_phi_total ==
              doctest::Approx(c.total).epsilon(1e-13));
    }
}

TEST_CASE("joint formula agrees with the QFI engine on the optimal probe") {
    for (int tj = 1; tj <= 16; ++tj) {
        SpinQuantum jq(tj);
        double engine =
            crb(qfi_matrix_analytic(joint_optimal(jq), PhasePair{}))
                .total_sensitivity;
        CHECK(joint_sensitivity(jq).delta_phi_total ==
              doctest::Approx(engine).epsilon(1e-10));
    }
}

TEST_CASE("scan grid and ordering") {
    auto rows = scan(SpinQuantum(1), SpinQuantum(6),
                     {Strategy::Joint, Strategy::Sequential,
                      Strategy::SequentialSpin, Strategy::Sql});
    CHECK(rows.size() == 6 * 4);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].j.two_j == 1 + static_cast<int>(i / 4));
        CHECK(static_cast<int>(rows[i].strategy) == static_cast<int>(i % 4));
    }
    auto one = scan(SpinQuantum(4), SpinQuantum(4), {Strategy::Sql});
    CHECK(one.size() == 1);
    CHECK(one[0].delta_phi == doctest::Approx(1.0));
    CHECK_THROWS_AS(scan(SpinQuantum(4), SpinQuantum(2), {Strategy::Sql}),
                    std::invalid_argument);
}
