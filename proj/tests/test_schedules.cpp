#include "doctest.h"

#include <cmath>

#include "daqc/qubo.hpp"
#include "daqc/schedules.hpp"

using namespace daqc;

namespace {

BinaryLinearProblem small_kp() {
    KnapsackInstance kp;
    kp.n = 3;
    kp.v = {6, 10, 4};
    kp.w = {1, 2, 1};
    kp.c = 3;
    return to_canonical(kp);
}

}  // namespace

TEST_SUITE("schedules") {

TEST_CASE("interpolation schedule hits its endpoints and cubic values") {
    CHECK(eval_schedule(0.0, 0.7, 2.0) == doctest::Approx(0.0));
    CHECK(eval_schedule(2.0, 0.7, 2.0) == doctest::Approx(1.0));
    CHECK(eval_schedule(1.0, 0.0, 2.0) == doctest::Approx(0.5));
    // tau = 1/4, a = 1: 1/4 + (1/4)(-1/4)(-3/4) = 19/64
    CHECK(eval_schedule(0.25, 1.0, 1.0) == doctest::Approx(19.0 / 64.0));
    CHECK_THROWS_AS(eval_schedule(0.5, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("multiplier schedule gates on the onset and clamps at zero") {
    LambdaScheduleParams lp;
    lp.gamma = 2.0;
    lp.offset = 1.0;
    lp.a = 0.0;
    CHECK(eval_lambda(0.5, lp, 4.0) == 0.0);
    CHECK(eval_lambda(1.0, lp, 4.0) == 0.0);  // inactive until strictly past the onset
    CHECK(eval_lambda(3.0, lp, 4.0) == doctest::Approx(1.0));  // 2 * (2/4)

    lp.constant = true;
    CHECK(eval_lambda(0.0, lp, 4.0) == 2.0);
    CHECK(eval_lambda(17.0, lp, 4.0) == 2.0);

    // a steep negative shape drives the raw cubic below zero early on
    LambdaScheduleParams neg;
    neg.gamma = 1.0;
    neg.a = -8.0;
    CHECK(eval_lambda_raw(0.25, neg, 1.0) < 0.0);
    CHECK(eval_lambda(0.25, neg, 1.0) == 0.0);
}

TEST_CASE("norms follow the coefficient vectors") {
    const auto ring4 = hamiltonian_norms(MixerKind::RingXX, 4, {3.0, 4.0}, {}, NormMode::Pauli2);
    CHECK(ring4.init == doctest::Approx(std::sqrt(8.0)));
    CHECK(ring4.problem == doctest::Approx(5.0));
    CHECK_FALSE(ring4.substituted);

    // at n = 2 the two ring edges coincide: one XX term, not two
    const auto ring2 = hamiltonian_norms(MixerKind::RingXX, 2, {1.0}, {}, NormMode::Pauli2);
    CHECK(ring2.init == doctest::Approx(std::sqrt(3.0)));

    const auto tf5 = hamiltonian_norms(MixerKind::TransverseField, 5, {1.0}, {}, NormMode::Pauli2);
    CHECK(tf5.init == doctest::Approx(std::sqrt(5.0)));

    // Frobenius rescales by 2^(qubits/2)
    const auto frob = hamiltonian_norms(MixerKind::TransverseField, 2, {1.0, 0.0}, {},
                                        NormMode::MatrixFrobenius);
    CHECK(frob.problem == doctest::Approx(2.0));
    CHECK(frob.init == doctest::Approx(std::sqrt(2.0) * 2.0));

    const auto none = hamiltonian_norms(MixerKind::RingXX, 4, {3.0}, {}, NormMode::None);
    CHECK(none.init == 1.0);
    CHECK(none.problem == 1.0);

    const auto zero = hamiltonian_norms(MixerKind::RingXX, 2, {0.0, 0.0}, {}, NormMode::Pauli2);
    CHECK(zero.problem == 1.0);
    CHECK(zero.substituted);
}

TEST_CASE("dual z coefficients combine objective and weighted constraints") {
    const auto p = small_kp();
    const auto h = ld_z_coefficients(p, {4.0});
    REQUIRE(h.size() == 3);
    CHECK(h[0] == doctest::Approx(2.0));   // 6 - 4*1
    CHECK(h[1] == doctest::Approx(2.0));   // 10 - 4*2
    CHECK(h[2] == doctest::Approx(0.0));   // 4 - 4*1
    CHECK_THROWS_AS(ld_z_coefficients(p, {}), std::invalid_argument);
}

TEST_CASE("plan weights follow the linear schedule") {
    // a = 0, p = 2, T = 1, no normalization: layer times 0.5 and 1.0,
    // weights (c, b) = (0.25, 0.25) then (0.0, 0.5)
    LambdaScheduleParams lp;
    lp.constant = true;
    lp.gamma = 0.0;
    const auto plan = build_trotter_plan(small_kp(), {1.0, 2, 0.0}, {lp}, NormMode::None);
    REQUIRE(plan.layers.size() == 2);
    CHECK(plan.layers[0].t == doctest::Approx(0.5));
    CHECK(plan.layers[0].c == doctest::Approx(0.25));
    CHECK(plan.layers[0].b == doctest::Approx(0.25));
    CHECK(plan.layers[1].c == doctest::Approx(0.0));
    CHECK(plan.layers[1].b == doctest::Approx(0.5));
    // NormMode::None leaves the weights unscaled
    CHECK(plan.layers[0].gamma == doctest::Approx(0.25));
    CHECK(plan.layers[0].beta == doctest::Approx(0.25));
    CHECK(plan.mixer == MixerKind::RingXX);
    CHECK(plan.qubits == 3);
}

TEST_CASE("per-layer normalization tracks the instantaneous multiplier") {
    LambdaScheduleParams lp;
    lp.gamma = 4.0;  // lambda ramps 0 -> 4 linearly
    const auto plan = build_trotter_plan(small_kp(), {1.0, 4, 0.0}, {lp});
    REQUIRE(plan.layers.size() == 4);
    for (const auto& layer : plan.layers) {
        const auto h = ld_z_coefficients(small_kp(), layer.lambda);
        double sq = 0.0;
        for (double x : h) sq += x * x;
        CHECK(layer.norm_p == doctest::Approx(std::sqrt(sq)));
        CHECK(layer.beta == doctest::Approx(layer.b / layer.norm_p));
        CHECK(layer.gamma == doctest::Approx(layer.c / plan.norm_init));
    }
    // norms differ across layers because lambda moves
    CHECK(plan.layers[0].norm_p != doctest::Approx(plan.layers[3].norm_p));

    const auto fixed =
        build_trotter_plan(small_kp(), {1.0, 4, 0.0}, {lp}, NormMode::Pauli2, NormTime::FixedAtT);
    const double at_T = fixed.layers[3].norm_p;
    for (const auto& layer : fixed.layers) CHECK(layer.norm_p == doctest::Approx(at_T));
}

TEST_CASE("negative multiplier excursions are clamped and counted") {
    LambdaScheduleParams lp;
    lp.gamma = 1.0;
    lp.a = -8.0;
    const auto plan = build_trotter_plan(small_kp(), {1.0, 8, 0.0}, {lp});
    CHECK(plan.lambda_clamps > 0);
    for (const auto& layer : plan.layers)
        for (double l : layer.lambda) CHECK(l >= 0.0);
}

TEST_CASE("penalty-family plan has time-independent norms") {
    KnapsackInstance kp;
    kp.n = 2;
    kp.v = {1, 1};
    kp.w = {1, 1};
    kp.c = 1;
    const auto ising = qubo_to_ising(build_kp_qubo(kp, Rational(3)));
    const auto plan = build_trotter_plan(ising, {2.0, 3, 0.5});
    CHECK(plan.family == Family::QUBO);
    CHECK(plan.mixer == MixerKind::TransverseField);
    CHECK(plan.qubits == 3);
    REQUIRE(plan.layers.size() == 3);
    for (const auto& layer : plan.layers) {
        CHECK(layer.norm_p == doctest::Approx(plan.layers[0].norm_p));
        CHECK(layer.lambda.empty());
    }
    CHECK(plan.norm_init == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("plan construction validates its arguments") {
    LambdaScheduleParams lp;
    lp.constant = true;
    BinaryLinearProblem tiny;
    tiny.n = 1;
    tiny.q0 = {Rational(-1)};
    tiny.q = {{-1}};
    tiny.c = {-1};
    CHECK_THROWS_AS(build_trotter_plan(tiny, {1.0, 2, 0.0}, {lp}), std::invalid_argument);
    CHECK_THROWS_AS(build_trotter_plan(small_kp(), {1.0, 2, 0.0}, {lp, lp}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_trotter_plan(small_kp(), {0.0, 2, 0.0}, {lp}), std::invalid_argument);
    CHECK_THROWS_AS(build_trotter_plan(small_kp(), {1.0, 0, 0.0}, {lp}), std::invalid_argument);
}

}  // TEST_SUITE
