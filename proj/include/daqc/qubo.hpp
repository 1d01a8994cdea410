#pragma once

// Penalty reformulation of the constrained problem as a QUBO, and its Ising
// form. A constraint q_i . x >= c_i is enforced by adding
//
//     gamma_i * (q_i . x - c_i - W_i)^2
//
// where W_i is a nonnegative slack encoded in binary: bits 2^0 .. 2^(M_i-2)
// plus a top bit of weight R_i = cmax_i + 1 - 2^(M_i-1), M_i =
// floor(log2(cmax_i)) + 1, so W_i ranges over exactly [0, cmax_i]. The
// knapsack path uses the direct form gamma * (w . x - W)^2 with the slack
// standing for the used capacity, cmax = c.
//
// Variable order: decision bits x_0..x_{n-1} first, then slack bits
// constraint by constraint, least significant first. All coefficients are
// exact rationals.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "daqc/problems.hpp"
#include "daqc/rational.hpp"

namespace daqc {

struct SlackBlock {
    int constraint = 0;
    int first_var = 0;        // index of its least significant slack bit
    int num_bits = 0;         // M_i; 0 when the slack range is the single value 0
    long long top_weight = 0; // R_i
    long long c_max = 0;
};

struct QuboModel {
    int num_x = 0;
    int num_y = 0;
    std::map<int, Rational> linear;
    std::map<std::pair<int, int>, Rational> quadratic;  // keys have first < second
    Rational offset;
    std::vector<Rational> gammas;  // penalty weight per constraint
    std::vector<SlackBlock> slacks;

    int num_vars() const { return num_x + num_y; }
};

struct IsingModel {
    int num_vars = 0;
    std::vector<Rational> h;
    std::map<std::pair<int, int>, Rational> J;  // keys have first < second
    Rational offset;
};

// Number of slack bits and the top-bit weight for a slack range [0, c_max].
int slack_bits(long long c_max);
long long slack_top_weight(long long c_max);

// Conventional penalty weight sum(v) + 1: one unit above any possible value
// gain, so no constraint violation can ever pay for itself.
Rational default_penalty(const KnapsackInstance& kp);

QuboModel build_kp_qubo(const KnapsackInstance& kp, const Rational& gamma);

// General path over the canonical form; gammas must all be positive and
// cmax_i = sum of positive q_ij minus c_i must be nonnegative for every
// constraint (negative means no assignment can satisfy it).
QuboModel build_general_qubo(const BinaryLinearProblem& p, const std::vector<Rational>& gammas);

IsingModel qubo_to_ising(const QuboModel& q);

// Exact evaluation. Assignments are bitmasks over num_vars variables
// (variable j = bit j). For the Ising form the same mask is used with the
// convention bit j set <=> x_j = 1 <=> z_j = -1.
Rational qubo_value(const QuboModel& q, std::uint64_t assignment);
Rational ising_value(const IsingModel& m, std::uint64_t assignment);

// Exhaustive scan over all 2^num_vars assignments (test oracle).
struct QuboOptimum {
    Rational value;
    std::vector<std::uint64_t> argmins;
};
QuboOptimum qubo_bruteforce(const QuboModel& q, int max_bits = 24);

// Measurement event: a basis state of the full register succeeds when its
// decision-bit part is one of the optimal assignments.
struct SuccessEvent {
    int total_bits = 0;
    int x_bits = 0;
    std::vector<std::uint64_t> x_masks;  // sorted ascending

    bool matches(std::uint64_t basis) const;
};

SuccessEvent ld_success_event(int n, const OracleResult& oracle);
SuccessEvent qubo_success_event(const QuboModel& q, const OracleResult& oracle);

}  // namespace daqc
