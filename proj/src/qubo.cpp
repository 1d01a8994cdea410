#include "daqc/qubo.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace daqc {

namespace {

void add_term(std::map<int, Rational>& linear, int var, const Rational& coeff) {
    if (coeff == Rational(0)) return;
    auto [it, inserted] = linear.try_emplace(var, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == Rational(0)) linear.erase(it);
    }
}

void add_term(std::map<std::pair<int, int>, Rational>& quad, int a, int b, const Rational& coeff) {
    if (coeff == Rational(0)) return;
    if (a > b) std::swap(a, b);
    auto [it, inserted] = quad.try_emplace(std::make_pair(a, b), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == Rational(0)) quad.erase(it);
    }
}

// Expand gamma * (sum_a s_a z_a + shift)^2 into the model, where the terms
// list pairs each variable index with its integer weight s_a.
void add_squared_penalty(QuboModel& q, const Rational& gamma,
                         const std::vector<std::pair<int, long long>>& terms, long long shift) {
    for (std::size_t a = 0; a < terms.size(); ++a) {
        const auto [var_a, s_a] = terms[a];
        add_term(q.linear, var_a, gamma * Rational(s_a * s_a + 2 * shift * s_a));
        for (std::size_t b = a + 1; b < terms.size(); ++b) {
            const auto [var_b, s_b] = terms[b];
            add_term(q.quadratic, var_a, var_b, gamma * Rational(2 * s_a * s_b));
        }
    }
    q.offset += gamma * Rational(shift * shift);
}

SlackBlock make_slack(int constraint, int first_var, long long c_max) {
    SlackBlock blk;
    blk.constraint = constraint;
    blk.first_var = first_var;
    blk.c_max = c_max;
    blk.num_bits = slack_bits(c_max);
    blk.top_weight = slack_top_weight(c_max);
    return blk;
}

std::vector<std::pair<int, long long>> slack_terms(const SlackBlock& blk) {
    std::vector<std::pair<int, long long>> terms;
    terms.reserve(blk.num_bits);
    for (int k = 0; k + 1 < blk.num_bits; ++k) terms.emplace_back(blk.first_var + k, 1LL << k);
    if (blk.num_bits > 0) terms.emplace_back(blk.first_var + blk.num_bits - 1, blk.top_weight);
    return terms;
}

}  // namespace

int slack_bits(long long c_max) {
    if (c_max < 0) throw std::invalid_argument("slack_bits: negative range");
    if (c_max == 0) return 0;
    return std::bit_width(static_cast<unsigned long long>(c_max));  // floor(log2) + 1
}

long long slack_top_weight(long long c_max) {
    const int m = slack_bits(c_max);
    if (m == 0) return 0;
    return c_max + 1 - (1LL << (m - 1));
}

Rational default_penalty(const KnapsackInstance& kp) {
    long long total = 0;
    for (long long vj : kp.v) total += vj;
    return Rational(total + 1);
}

QuboModel build_kp_qubo(const KnapsackInstance& kp, const Rational& gamma) {
    if (kp.n < 1 || kp.c < 1) throw std::invalid_argument("build_kp_qubo: invalid instance");
    if (gamma <= Rational(0)) throw std::invalid_argument("build_kp_qubo: gamma must be positive");

    QuboModel q;
    q.num_x = kp.n;
    q.gammas.push_back(gamma);
    q.slacks.push_back(make_slack(0, kp.n, kp.c));
    q.num_y = q.slacks[0].num_bits;

    for (int j = 0; j < kp.n; ++j) add_term(q.linear, j, Rational(-kp.v[j]));

    // gamma * (w . x - W)^2: zero exactly when the load w . x is spelled out
    // by the slack, i.e. when it does not exceed c.
    std::vector<std::pair<int, long long>> terms;
    for (int j = 0; j < kp.n; ++j) terms.emplace_back(j, kp.w[j]);
    for (auto [var, weight] : slack_terms(q.slacks[0])) terms.emplace_back(var, -weight);
    add_squared_penalty(q, gamma, terms, 0);
    return q;
}

QuboModel build_general_qubo(const BinaryLinearProblem& p, const std::vector<Rational>& gammas) {
    if (p.n < 1) throw std::invalid_argument("build_general_qubo: n must be >= 1");
    if (gammas.size() != p.q.size())
        throw std::invalid_argument("build_general_qubo: gamma count must match constraints");

    QuboModel q;
    q.num_x = p.n;
    q.gammas = gammas;
    for (int j = 0; j < p.n; ++j) add_term(q.linear, j, p.q0[j]);

    int next_var = p.n;
    for (std::size_t i = 0; i < p.q.size(); ++i) {
        if (gammas[i] <= Rational(0))
            throw std::invalid_argument("build_general_qubo: gamma must be positive");
        long long c_max = -p.c[i];
        for (long long coeff : p.q[i])
            if (coeff > 0) c_max += coeff;
        if (c_max < 0)
            throw std::invalid_argument("build_general_qubo: constraint is unsatisfiable");

        SlackBlock blk = make_slack(static_cast<int>(i), next_var, c_max);
        q.slacks.push_back(blk);
        next_var += blk.num_bits;

        std::vector<std::pair<int, long long>> terms;
        for (int j = 0; j < p.n; ++j)
            if (p.q[i][j] != 0) terms.emplace_back(j, p.q[i][j]);
        for (auto [var, weight] : slack_terms(blk)) terms.emplace_back(var, -weight);
        add_squared_penalty(q, gammas[i], terms, -p.c[i]);
    }
    q.num_y = next_var - p.n;
    return q;
}

IsingModel qubo_to_ising(const QuboModel& q) {
    IsingModel m;
    m.num_vars = q.num_vars();
    m.h.assign(m.num_vars, Rational(0));
    m.offset = q.offset;
    for (const auto& [var, a] : q.linear) {
        // x = (1 - Z)/2
        m.h[var] -= a / 2;
        m.offset += a / 2;
    }
    for (const auto& [vars, b] : q.quadratic) {
        const Rational quarter = b / 4;
        m.h[vars.first] -= quarter;
        m.h[vars.second] -= quarter;
        m.offset += quarter;
        auto [it, inserted] = m.J.try_emplace(vars, quarter);
        if (!inserted) it->second += quarter;
    }
    return m;
}

Rational qubo_value(const QuboModel& q, std::uint64_t assignment) {
    Rational val = q.offset;
    for (const auto& [var, a] : q.linear)
        if (assignment >> var & 1) val += a;
    for (const auto& [vars, b] : q.quadratic)
        if ((assignment >> vars.first & 1) && (assignment >> vars.second & 1)) val += b;
    return val;
}

Rational ising_value(const IsingModel& m, std::uint64_t assignment) {
    auto spin = [assignment](int var) { return (assignment >> var & 1) ? -1LL : 1LL; };
    Rational val = m.offset;
    for (int var = 0; var < m.num_vars; ++var) val += m.h[var] * Rational(spin(var));
    for (const auto& [vars, j] : m.J) val += j * Rational(spin(vars.first) * spin(vars.second));
    return val;
}

QuboOptimum qubo_bruteforce(const QuboModel& q, int max_bits) {
    const int bits = q.num_vars();
    if (bits < 1 || bits > max_bits)
        throw std::invalid_argument("qubo_bruteforce: variable count out of range");
    QuboOptimum out;
    const std::uint64_t end = 1ULL << bits;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        Rational val = qubo_value(q, mask);
        if (out.argmins.empty() || val < out.value) {
            out.value = val;
            out.argmins.assign(1, mask);
        } else if (val == out.value) {
            out.argmins.push_back(mask);
        }
    }
    return out;
}

bool SuccessEvent::matches(std::uint64_t basis) const {
    const std::uint64_t x_part = basis & ((1ULL << x_bits) - 1);
    return std::binary_search(x_masks.begin(), x_masks.end(), x_part);
}

SuccessEvent ld_success_event(int n, const OracleResult& oracle) {
    SuccessEvent ev;
    ev.total_bits = n;
    ev.x_bits = n;
    ev.x_masks = oracle.success_set;
    std::sort(ev.x_masks.begin(), ev.x_masks.end());
    return ev;
}

SuccessEvent qubo_success_event(const QuboModel& q, const OracleResult& oracle) {
    SuccessEvent ev;
    ev.total_bits = q.num_vars();
    ev.x_bits = q.num_x;
    ev.x_masks = oracle.success_set;
    std::sort(ev.x_masks.begin(), ev.x_masks.end());
    return ev;
}

}  // namespace daqc
