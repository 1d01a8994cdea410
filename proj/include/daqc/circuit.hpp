#pragma once

// Gate-level circuits for the two families, the sublayer scheduler, and the
// closed-form runtime model.
//
// Rotation convention: R_P(theta) = exp(-i * theta * P / 2) for a Pauli
// string P. One Trotter layer k of the dual family applies, in order,
// RZ_j(2 beta_k h_j), RX_j(-2 gamma_k), and ring RXX_{j,j+1}(-2 gamma_k);
// the QUBO family applies RZ_j(2 beta_k h_j) for nonzero h_j, then
// RZZ_ab(2 beta_k J_ab) for nonzero J_ab, then RX_j(-2 gamma_k) on every
// qubit. Gates appear in the vector in application order.
//
// Scheduling packs each layer into qubit-disjoint sublayers: 10 ns when all
// gates are one-qubit, 20 ns when any is two-qubit. Adjacent one-qubit
// blocks fuse per qubit into a single 10 ns slot in Fused mode (the dual
// family's RZ+RX; the QUBO family's RZ and RX are separated by the RZZ block
// and stay separate). Two-qubit blocks are split into matchings: 2 for an
// even ring, 3 for an odd ring (1 at n = 2 where the ring collapses to one
// edge), and N-1 / N for the complete graph via the round-robin
// one-factorization.

#include <cstddef>
#include <string>
#include <vector>

#include "daqc/qubo.hpp"
#include "daqc/schedules.hpp"

namespace daqc {

enum class GateKind { RZ, RX, RZZ, RXX };

struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;  // second qubit for RZZ/RXX, -1 otherwise
    double angle = 0.0;

    bool two_qubit() const { return kind == GateKind::RZZ || kind == GateKind::RXX; }
};

struct Circuit {
    Family family = Family::LD;
    int qubits = 0;
    int layers = 0;
    std::vector<Gate> gates;
    std::vector<std::size_t> layer_starts;  // fence offsets, size layers + 1
};

Circuit build_ld_circuit(const TrotterPlan& plan, const BinaryLinearProblem& p);
Circuit build_qubo_circuit(const TrotterPlan& plan, const IsingModel& ising);

enum class TimingMode { Fused, Unfused, ClosedForm };

struct Sublayer {
    std::vector<Gate> gates;  // original application order
    bool two_qubit = false;
    int slots = 0;  // occupied hardware slots (fused pairs count once)

    double duration_ns() const { return two_qubit ? 20.0 : 10.0; }
};

struct ScheduledCircuit {
    int qubits = 0;
    std::vector<Sublayer> sublayers;
    double total_time_ns = 0.0;
};

// Packs gates into sublayers without changing the circuit unitary: gates are
// only regrouped within runs of mutually commuting neighbors (same-qubit
// order is always preserved). TimingMode::ClosedForm is handled by
// tss_closed_form and is rejected here.
ScheduledCircuit schedule_sublayers(const Circuit& c, TimingMode mode = TimingMode::Fused);

// Closed-form runtime in ns. Dual family: p * (10 + 20 * ring matchings).
// QUBO family: N = n + floor(log2 c) + 1 qubits and p * (20 + 20 * complete
// matchings), i.e. 20pN for even N and 20p(N+1) for odd N.
double tss_closed_form(Family family, int n, long long c, int p);

// Matchings needed for the edge sets the builders emit.
int ring_matchings(int n);      // 1 at n = 2, else 2 (even) / 3 (odd)
int complete_matchings(int n);  // n - 1 (even) / n (odd)

struct ConnectivityReport {
    int qubits = 0;
    std::vector<std::pair<int, int>> edges;  // sorted, unique
    int max_degree = 0;
    std::string topology;  // "ring", "complete", "single-edge", "none", or "irregular"
};

ConnectivityReport connectivity_report(const Circuit& c);

}  // namespace daqc
