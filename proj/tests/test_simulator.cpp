#include "doctest.h"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "daqc/qubo.hpp"
#include "daqc/schedules.hpp"
#include "daqc/sim/exact.hpp"
#include "daqc/sim/statevector.hpp"

using namespace daqc;
using sim::Complex;

namespace {

BinaryLinearProblem canon(std::vector<long long> v, std::vector<long long> w, long long c) {
    KnapsackInstance kp;
    kp.n = static_cast<int>(v.size());
    kp.v = std::move(v);
    kp.w = std::move(w);
    kp.c = c;
    return to_canonical(kp);
}

Gate gate(GateKind k, int q0, double angle, int q1 = -1) {
    Gate g;
    g.kind = k;
    g.q0 = q0;
    g.q1 = q1;
    g.angle = angle;
    return g;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("initial states") {
    Statevector zero(3);
    CHECK(zero.dim() == 8);
    CHECK(zero.amplitude(0) == Complex{1.0, 0.0});
    CHECK(zero.norm() == doctest::Approx(1.0));

    const auto plus = prepare_plus_state(3);
    for (std::uint64_t i = 0; i < 8; ++i) {
        CHECK(plus.amplitude(i).real() == doctest::Approx(1.0 / std::sqrt(8.0)));
        CHECK(plus.amplitude(i).imag() == 0.0);
    }
    CHECK_THROWS_AS(Statevector(25), std::invalid_argument);
    CHECK_THROWS_AS(Statevector(0), std::invalid_argument);
    Statevector raised(4, 28);  // the cap is adjustable on purpose
    CHECK(raised.dim() == 16);
}

TEST_CASE("single-qubit rotations match closed forms") {
    const double theta = 0.7;
    Statevector sv(1);
    sv.apply(gate(GateKind::RX, 0, theta));
    CHECK(sv.amplitude(0).real() == doctest::Approx(std::cos(theta / 2)));
    CHECK(sv.amplitude(0).imag() == doctest::Approx(0.0));
    CHECK(sv.amplitude(1).real() == doctest::Approx(0.0));
    CHECK(sv.amplitude(1).imag() == doctest::Approx(-std::sin(theta / 2)));

    auto plus = prepare_plus_state(1);
    plus.apply(gate(GateKind::RZ, 0, theta));
    CHECK(plus.amplitude(0).real() == doctest::Approx(std::cos(theta / 2) / std::sqrt(2.0)));
    CHECK(plus.amplitude(0).imag() == doctest::Approx(-std::sin(theta / 2) / std::sqrt(2.0)));
    CHECK(plus.amplitude(1).imag() == doctest::Approx(std::sin(theta / 2) / std::sqrt(2.0)));
}

TEST_CASE("two-qubit rotations match closed forms") {
    const double theta = 1.1;
    // RZZ phases by the ZZ eigenvalue: +1 on equal bits, -1 on unequal
    Statevector sv(2);
    sv.apply(gate(GateKind::RX, 0, 3.141592653589793));  // roughly |01>
    sv.apply(gate(GateKind::RZZ, 0, theta, 1));
    // basis 1 has unequal bits: phase e^{+i theta/2} times -i
    const Complex a1 = sv.amplitude(1);
    CHECK(std::arg(a1) == doctest::Approx(-3.141592653589793 / 2 + theta / 2));

    Statevector xx(2);
    xx.apply(gate(GateKind::RXX, 0, theta, 1));
    CHECK(xx.amplitude(0).real() == doctest::Approx(std::cos(theta / 2)));
    CHECK(xx.amplitude(3).imag() == doctest::Approx(-std::sin(theta / 2)));
    CHECK(std::abs(xx.amplitude(1)) == doctest::Approx(0.0));
    CHECK(std::abs(xx.amplitude(2)) == doctest::Approx(0.0));
}

TEST_CASE("basis indexing is little-endian") {
    Statevector sv(2);
    sv.apply(gate(GateKind::RX, 0, 3.141592653589793));
    // X on qubit 0 populates basis index 1 (bit 0), not 2
    CHECK(std::norm(sv.amplitude(1)) == doctest::Approx(1.0));
    CHECK(std::norm(sv.amplitude(2)) == doctest::Approx(0.0));
}

TEST_CASE("success probability sums the matching basis states") {
    // 2 decision bits + 1 slack bit, uniform state: each basis state carries
    // probability 1/8 and each decision assignment appears with both slacks
    const auto plus = prepare_plus_state(3);
    SuccessEvent ev;
    ev.total_bits = 3;
    ev.x_bits = 2;
    ev.x_masks = {0b01};
    CHECK(success_probability(plus, ev) == doctest::Approx(0.25));
    ev.x_masks = {0b01, 0b10};
    CHECK(success_probability(plus, ev) == doctest::Approx(0.5));

    // a sharp state: flip qubit 0, demand x = 01 over 2 bits
    Statevector sharp(2);
    sharp.apply(gate(GateKind::RX, 0, 3.141592653589793));
    SuccessEvent exact;
    exact.total_bits = 2;
    exact.x_bits = 2;
    exact.x_masks = {0b01};
    CHECK(success_probability(sharp, exact) == doctest::Approx(1.0));
}

TEST_CASE("sampling is deterministic, complete, and supported") {
    auto sv = prepare_plus_state(2);
    sv.apply(gate(GateKind::RX, 0, 0.9));
    const auto a = sample_shots(sv, 10000, 31);
    const auto b = sample_shots(sv, 10000, 31);
    REQUIRE(a.size() == b.size());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].bitstring == b[i].bitstring);
        CHECK(a[i].count == b[i].count);
        total += a[i].count;
        if (i > 0) CHECK(a[i].bitstring > a[i - 1].bitstring);
    }
    CHECK(total == 10000);
    // frequencies agree with the exact distribution within a loose band
    for (const auto& rec : a) {
        const double p = std::norm(sv.amplitude(rec.bitstring));
        CHECK(static_cast<double>(rec.count) / 10000.0 == doctest::Approx(p).epsilon(0.15));
    }
    const auto c = sample_shots(sv, 10000, 32);  // a different seed moves counts
    bool any_moved = c.size() != a.size();
    for (std::size_t i = 0; !any_moved && i < a.size(); ++i)
        any_moved = a[i].bitstring != c[i].bitstring || a[i].count != c[i].count;
    CHECK(any_moved);
}

TEST_CASE("piecewise propagator reproduces a constant-Hamiltonian pulse") {
    // H = -X on one qubit for T = pi/2: exp(i (pi/2) X) maps |0> to i|1>
    Statevector psi(1);
    evolve_piecewise(
        [](double, Eigen::MatrixXd& h) {
            h.setZero();
            h(0, 1) = h(1, 0) = -1.0;
        },
        3.141592653589793 / 2.0, 1, psi);
    CHECK(std::abs(psi.amplitude(0)) == doctest::Approx(0.0));
    CHECK(psi.amplitude(1).imag() == doctest::Approx(1.0));
    CHECK(psi.norm() == doctest::Approx(1.0));
}

TEST_CASE("layered circuit converges to the continuous evolution") {
    const auto p = canon({2, 3}, {1, 2}, 2);
    LambdaScheduleParams lp;
    lp.gamma = 2.0;
    const ScheduleParams sp{2.0, 256, 0.0};
    const auto exact = exact_evolve_converged(p, sp, {lp});
    CHECK(exact.state.norm() == doctest::Approx(1.0));
    CHECK(exact.fine_steps >= 64);

    const auto plan = build_trotter_plan(p, sp, {lp});
    const auto circuit = build_ld_circuit(plan, p);
    auto layered = prepare_plus_state(2);
    apply_circuit(layered, circuit);
    double sq = 0.0;
    for (std::size_t i = 0; i < layered.dim(); ++i)
        sq += std::norm(layered.data()[i] - exact.state.data()[i]);
    CHECK(std::sqrt(sq) < 0.02);
}

TEST_CASE("circuit and reference agree on the success metric they induce") {
    const auto p = canon({6, 10, 4}, {1, 2, 1}, 3);
    LambdaScheduleParams lp;
    lp.gamma = 4.5;
    const ScheduleParams sp{3.0, 128, 0.0};
    const auto oracle = solve_bruteforce(p);
    const auto event = ld_success_event(3, oracle);

    const auto exact = exact_evolve(p, sp, {lp}, 2048);
    const auto plan = build_trotter_plan(p, sp, {lp});
    auto layered = prepare_plus_state(3);
    apply_circuit(layered, build_ld_circuit(plan, p));
    const double pe = success_probability(exact, event);
    const double pl = success_probability(layered, event);
    CHECK(std::abs(pe - pl) < 0.02);
}

}  // TEST_SUITE
