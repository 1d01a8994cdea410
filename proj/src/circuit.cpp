#include "daqc/circuit.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace daqc {

namespace {

std::pair<int, int> edge_of(const Gate& g) {
    return {std::min(g.q0, g.q1), std::max(g.q0, g.q1)};
}

// Ring edge index of {a, b} (a < b): edge j joins j and j+1, edge n-1 wraps
// to {0, n-1}. Returns -1 for non-ring pairs.
int ring_index(std::pair<int, int> e, int n) {
    if (e.second == e.first + 1 && e.second <= n - 1) return e.first;
    if (e.first == 0 && e.second == n - 1) return n - 1;
    return -1;
}

// Round-robin (circle method) proper edge coloring of K_n. Odd n: round of
// {a, b} satisfies a + b = 2r (mod n), n rounds. Even n: vertex n-1 sits out
// of the rotation and meets vertex r in round r; other pairs satisfy
// a + b = 2r (mod n-1), n-1 rounds.
int round_robin_color(std::pair<int, int> e, int n) {
    const auto half = [](int sum, int mod) {
        // sum * inverse(2) mod `mod` for odd mod: 2r = sum => r = sum*(mod+1)/2.
        return static_cast<int>((static_cast<long long>(sum) * ((mod + 1) / 2)) % mod);
    };
    if (n % 2 == 1) return half((e.first + e.second) % n, n);
    if (e.second == n - 1) return e.first;
    return half((e.first + e.second) % (n - 1), n - 1);
}

void flush(std::vector<Gate>& pending, bool two_qubit, int slots, ScheduledCircuit& out) {
    if (pending.empty()) return;
    Sublayer sl;
    sl.gates = std::move(pending);
    pending.clear();
    sl.two_qubit = two_qubit;
    sl.slots = slots;
    out.total_time_ns += sl.duration_ns();
    out.sublayers.push_back(std::move(sl));
}

// One-qubit run: fused mode emits a single sublayer (same-qubit gates form
// one hardware slot, order preserved); unfused packs greedily so no qubit
// repeats within a sublayer.
void schedule_1q_run(const std::vector<Gate>& run, bool fused, ScheduledCircuit& out) {
    if (fused) {
        std::vector<bool> seen(out.qubits, false);
        int slots = 0;
        for (const Gate& g : run) {
            if (!seen[g.q0]) {
                seen[g.q0] = true;
                ++slots;
            }
        }
        std::vector<Gate> gates = run;
        flush(gates, false, slots, out);
        return;
    }
    std::vector<Gate> pending;
    std::vector<bool> used(out.qubits, false);
    for (const Gate& g : run) {
        if (used[g.q0]) {
            const int slots = static_cast<int>(pending.size());
            flush(pending, false, slots, out);
            std::fill(used.begin(), used.end(), false);
        }
        used[g.q0] = true;
        pending.push_back(g);
    }
    flush(pending, false, static_cast<int>(pending.size()), out);
}

// Two-qubit run: all gates within a run commute pairwise (same Pauli basis),
// so regrouping into matchings leaves the unitary unchanged. Ring-shaped RXX
// runs use the 2/3-coloring of the cycle; everything else falls back to the
// round-robin coloring of the complete graph, which is a proper matching
// decomposition for any subgraph.
void schedule_2q_run(const std::vector<Gate>& run, ScheduledCircuit& out) {
    const int n = out.qubits;
    bool ring_shaped = true;
    for (const Gate& g : run) {
        if (g.kind != GateKind::RXX || ring_index(edge_of(g), n) < 0) {
            ring_shaped = false;
            break;
        }
    }
    std::map<int, std::vector<Gate>> buckets;
    for (const Gate& g : run) {
        const auto e = edge_of(g);
        int color;
        if (ring_shaped) {
            const int j = ring_index(e, n);
            color = (n % 2 == 1 && j == n - 1) ? 2 : j % 2;
        } else {
            color = round_robin_color(e, n);
        }
        buckets[color].push_back(g);
    }
    for (auto& [color, gates] : buckets) {
        const int slots = static_cast<int>(gates.size());
        flush(gates, true, slots, out);
    }
}

void append_layer_gates(Circuit& c, std::vector<Gate>&& gates) {
    c.gates.insert(c.gates.end(), gates.begin(), gates.end());
    c.layer_starts.push_back(c.gates.size());
}

}  // namespace

Circuit build_ld_circuit(const TrotterPlan& plan, const BinaryLinearProblem& p) {
    if (plan.family != Family::LD)
        throw std::invalid_argument("build_ld_circuit: plan is not dual-family");
    if (plan.qubits != p.n) throw std::invalid_argument("build_ld_circuit: qubit count mismatch");
    if (p.n < 2) throw std::invalid_argument("build_ld_circuit: need n >= 2");

    Circuit c;
    c.family = Family::LD;
    c.qubits = p.n;
    c.layers = plan.sched.p;
    c.layer_starts.push_back(0);
    for (const TrotterLayer& layer : plan.layers) {
        const std::vector<double> h = ld_z_coefficients(p, layer.lambda);
        std::vector<Gate> gates;
        gates.reserve(3 * p.n);
        for (int j = 0; j < p.n; ++j)
            gates.push_back({GateKind::RZ, j, -1, 2.0 * layer.beta * h[j]});
        for (int j = 0; j < p.n; ++j) gates.push_back({GateKind::RX, j, -1, -2.0 * layer.gamma});
        const int ring_edges = (p.n >= 3) ? p.n : 1;
        for (int j = 0; j < ring_edges; ++j) {
            const int a = j;
            const int b = (j + 1) % p.n;
            gates.push_back({GateKind::RXX, std::min(a, b), std::max(a, b), -2.0 * layer.gamma});
        }
        append_layer_gates(c, std::move(gates));
    }
    return c;
}

Circuit build_qubo_circuit(const TrotterPlan& plan, const IsingModel& ising) {
    if (plan.family != Family::QUBO)
        throw std::invalid_argument("build_qubo_circuit: plan is not QUBO-family");
    if (plan.qubits != ising.num_vars)
        throw std::invalid_argument("build_qubo_circuit: qubit count mismatch");

    Circuit c;
    c.family = Family::QUBO;
    c.qubits = ising.num_vars;
    c.layers = plan.sched.p;
    c.layer_starts.push_back(0);
    for (const TrotterLayer& layer : plan.layers) {
        std::vector<Gate> gates;
        for (int j = 0; j < ising.num_vars; ++j) {
            if (ising.h[j] == Rational(0)) continue;
            gates.push_back({GateKind::RZ, j, -1, 2.0 * layer.beta * to_double(ising.h[j])});
        }
        for (const auto& [vars, coeff] : ising.J) {
            if (coeff == Rational(0)) continue;
            gates.push_back(
                {GateKind::RZZ, vars.first, vars.second, 2.0 * layer.beta * to_double(coeff)});
        }
        for (int j = 0; j < ising.num_vars; ++j)
            gates.push_back({GateKind::RX, j, -1, -2.0 * layer.gamma});
        append_layer_gates(c, std::move(gates));
    }
    return c;
}

ScheduledCircuit schedule_sublayers(const Circuit& c, TimingMode mode) {
    if (mode == TimingMode::ClosedForm)
        throw std::invalid_argument("schedule_sublayers: ClosedForm timing has no gate-level schedule; "
                                    "use tss_closed_form");
    ScheduledCircuit out;
    out.qubits = c.qubits;
    const bool fused = (mode == TimingMode::Fused);

    for (std::size_t layer = 0; layer + 1 < c.layer_starts.size(); ++layer) {
        std::size_t i = c.layer_starts[layer];
        const std::size_t end = c.layer_starts[layer + 1];
        while (i < end) {
            // Maximal run of gates with the same arity.
            const bool two = c.gates[i].two_qubit();
            std::size_t j = i;
            while (j < end && c.gates[j].two_qubit() == two) ++j;
            std::vector<Gate> run(c.gates.begin() + i, c.gates.begin() + j);
            if (two)
                schedule_2q_run(run, out);
            else
                schedule_1q_run(run, fused, out);
            i = j;
        }
    }
    return out;
}

int ring_matchings(int n) {
    if (n < 2) throw std::invalid_argument("ring_matchings: need n >= 2");
    if (n == 2) return 1;  // the two ring edges coincide
    return (n % 2 == 0) ? 2 : 3;
}

int complete_matchings(int n) {
    if (n < 2) throw std::invalid_argument("complete_matchings: need n >= 2");
    return (n % 2 == 0) ? n - 1 : n;
}

double tss_closed_form(Family family, int n, long long c, int p) {
    if (p < 1) throw std::invalid_argument("tss_closed_form: p must be >= 1");
    if (family == Family::LD)
        return static_cast<double>(p) * (10.0 + 20.0 * ring_matchings(n));
    if (c < 1) throw std::invalid_argument("tss_closed_form: QUBO needs c >= 1");
    const int N = n + slack_bits(c);
    return static_cast<double>(p) * (20.0 + 20.0 * complete_matchings(N));
}

ConnectivityReport connectivity_report(const Circuit& c) {
    ConnectivityReport rep;
    rep.qubits = c.qubits;
    std::vector<std::pair<int, int>> edges;
    for (const Gate& g : c.gates)
        if (g.two_qubit()) edges.push_back(edge_of(g));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    rep.edges = edges;

    std::vector<int> degree(c.qubits, 0);
    for (auto [a, b] : edges) {
        ++degree[a];
        ++degree[b];
    }
    rep.max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());

    const auto is_ring = [&] {
        if (c.qubits < 3 || edges.size() != static_cast<std::size_t>(c.qubits)) return false;
        for (const auto& e : edges)
            if (ring_index(e, c.qubits) < 0) return false;
        return true;
    };
    const auto is_complete = [&] {
        const std::size_t want =
            static_cast<std::size_t>(c.qubits) * (c.qubits - 1) / 2;
        return c.qubits >= 2 && edges.size() == want;
    };

    if (edges.empty())
        rep.topology = "none";
    else if (edges.size() == 1)
        rep.topology = "single-edge";
    else if (c.family == Family::QUBO ? is_complete() : is_ring())
        rep.topology = c.family == Family::QUBO ? "complete" : "ring";
    else if (c.family == Family::QUBO ? is_ring() : is_complete())
        rep.topology = c.family == Family::QUBO ? "ring" : "complete";
    else
        rep.topology = "irregular";
    return rep;
}

}  // namespace daqc
