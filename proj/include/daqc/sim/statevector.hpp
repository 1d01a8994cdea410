#pragma once

// Exact statevector simulation. Basis states are little-endian: qubit j is
// bit j of the amplitude index, matching the bitmask convention used by the
// oracles and success events.

#include <complex>
#include <cstdint>
#include <vector>

#include "daqc/circuit.hpp"
#include "daqc/qubo.hpp"
#include "daqc/sim/kernels.hpp"

namespace daqc {

class Statevector {
  public:
    static constexpr int default_qubit_cap = 24;

    // |0...0> on `qubits` qubits. The cap guards against accidental
    // exponential blowups; raise it deliberately if you mean it.
    explicit Statevector(int qubits, int cap = default_qubit_cap);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return amps_.size(); }
    sim::Complex* data() { return amps_.data(); }
    const sim::Complex* data() const { return amps_.data(); }
    sim::Complex amplitude(std::uint64_t basis) const { return amps_.at(basis); }

    double norm() const;  // fixed-order scalar reduction, deterministic

    void apply(const Gate& g);

  private:
    int qubits_;
    std::vector<sim::Complex> amps_;
};

Statevector prepare_plus_state(int qubits, int cap = Statevector::default_qubit_cap);

void apply_circuit(Statevector& sv, const Circuit& c);
void apply_scheduled(Statevector& sv, const ScheduledCircuit& sc);

double success_probability(const Statevector& sv, const SuccessEvent& event);

struct ShotRecord {
    std::uint64_t bitstring = 0;
    std::uint64_t count = 0;
};

// Multinomial sampling from |amplitude|^2 via inverse CDF with the seeded
// generator; records are aggregated and sorted by bitstring, and counts sum
// to `shots` exactly.
std::vector<ShotRecord> sample_shots(const Statevector& sv, std::uint64_t shots,
                                     std::uint64_t seed);

}  // namespace daqc
