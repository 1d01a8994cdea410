#include "daqc/sim/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "daqc/rng.hpp"

namespace daqc {

Statevector::Statevector(int qubits, int cap) : qubits_(qubits) {
    if (qubits < 1) throw std::invalid_argument("statevector: need at least one qubit");
    if (qubits > cap) throw std::invalid_argument("statevector: qubit count exceeds the cap");
    amps_.assign(std::size_t{1} << qubits, sim::Complex{0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

double Statevector::norm() const {
    double sq = 0.0;
    for (const sim::Complex& a : amps_) sq += a.real() * a.real() + a.imag() * a.imag();
    return std::sqrt(sq);
}

void Statevector::apply(const Gate& g) {
    const auto& k = sim::kernels();
    const double half = 0.5 * g.angle;
    const double c = std::cos(half);
    const double s = std::sin(half);
    switch (g.kind) {
        case GateKind::RZ:
            // exp(-i theta Z / 2): |0> picks up e^{-i theta/2}, |1> the conjugate.
            k.phase1(amps_.data(), amps_.size(), g.q0, {c, -s}, {c, s});
            break;
        case GateKind::RZZ:
            k.phase2(amps_.data(), amps_.size(), g.q0, g.q1, {c, -s}, {c, s});
            break;
        case GateKind::RX:
            k.rot1(amps_.data(), amps_.size(), g.q0, c, s);
            break;
        case GateKind::RXX:
            k.rot2(amps_.data(), amps_.size(), g.q0, g.q1, c, s);
            break;
    }
}

Statevector prepare_plus_state(int qubits, int cap) {
    Statevector sv(qubits, cap);
    const double amp = 1.0 / std::sqrt(static_cast<double>(sv.dim()));
    sim::Complex* a = sv.data();
    for (std::size_t i = 0; i < sv.dim(); ++i) a[i] = {amp, 0.0};
    return sv;
}

void apply_circuit(Statevector& sv, const Circuit& c) {
    if (sv.qubits() != c.qubits) throw std::invalid_argument("apply_circuit: qubit mismatch");
    for (const Gate& g : c.gates) sv.apply(g);
}

void apply_scheduled(Statevector& sv, const ScheduledCircuit& sc) {
    if (sv.qubits() != sc.qubits) throw std::invalid_argument("apply_scheduled: qubit mismatch");
    for (const Sublayer& sl : sc.sublayers)
        for (const Gate& g : sl.gates) sv.apply(g);
}

double success_probability(const Statevector& sv, const SuccessEvent& event) {
    if (event.total_bits != sv.qubits())
        throw std::invalid_argument("success_probability: event register size mismatch");
    if (event.x_bits < 1 || event.x_bits > event.total_bits)
        throw std::invalid_argument("success_probability: bad decision-bit count");
    const int slack_bits = event.total_bits - event.x_bits;
    const std::uint64_t slack_count = std::uint64_t{1} << slack_bits;
    double p = 0.0;
    for (std::uint64_t x : event.x_masks)
        for (std::uint64_t y = 0; y < slack_count; ++y) {
            const sim::Complex a = sv.data()[(y << event.x_bits) | x];
            p += a.real() * a.real() + a.imag() * a.imag();
        }
    return p;
}

std::vector<ShotRecord> sample_shots(const Statevector& sv, std::uint64_t shots,
                                     std::uint64_t seed) {
    std::vector<double> cdf(sv.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < sv.dim(); ++i) {
        const sim::Complex a = sv.data()[i];
        acc += a.real() * a.real() + a.imag() * a.imag();
        cdf[i] = acc;
    }
    const double total = acc;  // ~1 up to float drift; scaling u by it keeps draws in range

    Xoshiro256StarStar rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = rng.next_double() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t idx =
            (it == cdf.end()) ? sv.dim() - 1 : static_cast<std::uint64_t>(it - cdf.begin());
        ++counts[idx];
    }
    std::vector<ShotRecord> out;
    out.reserve(counts.size());
    for (const auto& [bitstring, count] : counts) out.push_back({bitstring, count});
    return out;
}

}  // namespace daqc
