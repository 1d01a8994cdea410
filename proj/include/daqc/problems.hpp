#pragma once

// Problem instances and classical reference solvers.
//
// Two views of the same problem live here. KnapsackInstance is the natural
// maximization form (values v, weights w, capacity c). BinaryLinearProblem is
// the canonical minimization form
//
//     minimize q0 . x   subject to  q_i . x >= c_i,  x in {0,1}^n,
//
// which every downstream stage consumes. to_canonical maps a knapsack to it
// via q0 = -v, q1 = -w, c1 = -c; negating the optimal value recovers the
// maximization optimum.
//
// Bit order everywhere: x_j is bit j of a mask (little-endian), matching the
// simulator's basis-state indexing.

#include <cstdint>
#include <string>
#include <vector>

#include "daqc/rational.hpp"

namespace daqc {

struct KnapsackInstance {
    std::string id;
    int n = 0;
    std::vector<long long> v;
    std::vector<long long> w;
    long long c = 0;
    std::uint64_t seed = 0;  // the derived per-instance seed it was drawn from
    int superset = 0;        // 1 or 2; 0 for ad-hoc instances
    long long cell = 0;      // cell parameter: n for superset 1, C for superset 2
};

struct BinaryLinearProblem {
    int n = 0;
    std::vector<Rational> q0;              // objective coefficients
    std::vector<std::vector<long long>> q; // one row per constraint
    std::vector<long long> c;              // right-hand sides, q[i] . x >= c[i]
};

// Canonical-form optimum: minimum objective value and every argmin bitmask
// (sorted ascending). For a knapsack routed through to_canonical the optimal
// maximization value is -optimal_value.
struct OracleResult {
    Rational optimal_value;
    std::vector<std::uint64_t> success_set;
};

BinaryLinearProblem to_canonical(const KnapsackInstance& kp);

// Dataset generators. Superset 1 draws v_j, w_j ~ U{1..10} for each n in
// [n_lo, n_hi]; superset 2 fixes n and sweeps the coefficient bound C with
// v_j, w_j ~ U{1..C}. Both set c = floor(sum(w)/2), resampling the weights in
// the degenerate case where that capacity would be zero (only reachable at
// n = 1, w = {1}). Seeds: cell = derive(seed, {superset, cellparam}),
// instance = derive(cell, {index}).
std::vector<KnapsackInstance> generate_superset1(std::uint64_t seed, int n_lo, int n_hi,
                                                 int count_per_cell);
std::vector<KnapsackInstance> generate_superset2(std::uint64_t seed,
                                                 const std::vector<long long>& c_bounds,
                                                 int count_per_cell, int n = 11);

// Exact knapsack maximum by dynamic programming over capacities 0..c.
// Throws if n*(c+1) exceeds table_budget entries.
long long solve_dp(const KnapsackInstance& kp, std::size_t table_budget = 100'000'000);

// Exhaustive scan of all 2^n assignments of the canonical problem.
// Throws std::invalid_argument beyond max_n and std::runtime_error
// ("no feasible solution") when the constraints exclude every assignment.
OracleResult solve_bruteforce(const BinaryLinearProblem& p, int max_n = 24);

// Complementary-slackness residual sum(lambda_i * (q_i . x - c_i)) for a
// feasible assignment; exact, and nonnegative whenever lambda >= 0.
// Throws if x is infeasible or any lambda_i < 0.
Rational epsilon_gap(const BinaryLinearProblem& p, std::uint64_t x,
                     const std::vector<Rational>& lambda);

// Helpers shared by the oracles and the duality module.
long long constraint_value(const std::vector<long long>& row, std::uint64_t x);
bool is_feasible(const BinaryLinearProblem& p, std::uint64_t x);
Rational objective_value(const BinaryLinearProblem& p, std::uint64_t x);

}  // namespace daqc
