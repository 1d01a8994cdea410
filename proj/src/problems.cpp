#include "daqc/problems.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "daqc/rng.hpp"

namespace daqc {

namespace {

void check_instance(const KnapsackInstance& kp) {
    if (kp.n < 1) throw std::invalid_argument("knapsack: n must be >= 1");
    if (static_cast<int>(kp.v.size()) != kp.n || static_cast<int>(kp.w.size()) != kp.n)
        throw std::invalid_argument("knapsack: v and w must have length n");
    for (int j = 0; j < kp.n; ++j)
        if (kp.v[j] < 1 || kp.w[j] < 1)
            throw std::invalid_argument("knapsack: coefficients must be positive");
    if (kp.c < 1) throw std::invalid_argument("knapsack: capacity must be >= 1");
}

KnapsackInstance draw_instance(Xoshiro256StarStar& rng, int n, long long bound) {
    KnapsackInstance kp;
    kp.n = n;
    kp.v.resize(n);
    kp.w.resize(n);
    for (int j = 0; j < n; ++j) kp.v[j] = rng.next_int(1, bound);
    for (;;) {
        long long total = 0;
        for (int j = 0; j < n; ++j) {
            kp.w[j] = rng.next_int(1, bound);
            total += kp.w[j];
        }
        kp.c = total / 2;
        if (kp.c >= 1) break;  // resample weights; only n = 1, w = {1} lands here
    }
    return kp;
}

}  // namespace

BinaryLinearProblem to_canonical(const KnapsackInstance& kp) {
    check_instance(kp);
    BinaryLinearProblem p;
    p.n = kp.n;
    p.q0.reserve(kp.n);
    for (long long vj : kp.v) p.q0.emplace_back(-vj);
    p.q.emplace_back();
    p.q[0].reserve(kp.n);
    for (long long wj : kp.w) p.q[0].push_back(-wj);
    p.c.push_back(-kp.c);
    return p;
}

std::vector<KnapsackInstance> generate_superset1(std::uint64_t seed, int n_lo, int n_hi,
                                                 int count_per_cell) {
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("superset1: bad n range");
    if (count_per_cell < 1) throw std::invalid_argument("superset1: count must be >= 1");
    std::vector<KnapsackInstance> out;
    out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1) * count_per_cell);
    for (int n = n_lo; n <= n_hi; ++n) {
        const std::uint64_t cell_seed = derive_seed(seed, {1, static_cast<std::uint64_t>(n)});
        for (int i = 0; i < count_per_cell; ++i) {
            const std::uint64_t inst_seed = derive_seed(cell_seed, {static_cast<std::uint64_t>(i)});
            Xoshiro256StarStar rng(inst_seed);
            KnapsackInstance kp = draw_instance(rng, n, 10);
            kp.id = fmt::format("s1-n{}-i{:03d}", n, i);
            kp.seed = inst_seed;
            kp.superset = 1;
            kp.cell = n;
            out.push_back(std::move(kp));
        }
    }
    return out;
}

std::vector<KnapsackInstance> generate_superset2(std::uint64_t seed,
                                                 const std::vector<long long>& c_bounds,
                                                 int count_per_cell, int n) {
    if (n < 1) throw std::invalid_argument("superset2: n must be >= 1");
    if (c_bounds.empty()) throw std::invalid_argument("superset2: no coefficient bounds");
    if (count_per_cell < 1) throw std::invalid_argument("superset2: count must be >= 1");
    std::vector<KnapsackInstance> out;
    out.reserve(c_bounds.size() * count_per_cell);
    for (long long bound : c_bounds) {
        if (bound < 1) throw std::invalid_argument("superset2: coefficient bound must be >= 1");
        const std::uint64_t cell_seed = derive_seed(seed, {2, static_cast<std::uint64_t>(bound)});
        for (int i = 0; i < count_per_cell; ++i) {
            const std::uint64_t inst_seed = derive_seed(cell_seed, {static_cast<std::uint64_t>(i)});
            Xoshiro256StarStar rng(inst_seed);
            KnapsackInstance kp = draw_instance(rng, n, bound);
            kp.id = fmt::format("s2-C{}-i{:03d}", bound, i);
            kp.seed = inst_seed;
            kp.superset = 2;
            kp.cell = bound;
            out.push_back(std::move(kp));
        }
    }
    return out;
}

long long solve_dp(const KnapsackInstance& kp, std::size_t table_budget) {
    check_instance(kp);
    const auto width = static_cast<std::size_t>(kp.c) + 1;
    if (static_cast<std::size_t>(kp.n) * width > table_budget)
        throw std::invalid_argument("solve_dp: capacity table exceeds budget");
    std::vector<long long> best(width, 0);
    for (int j = 0; j < kp.n; ++j) {
        if (kp.w[j] > kp.c) continue;
        for (long long cap = kp.c; cap >= kp.w[j]; --cap) {
            best[cap] = std::max(best[cap], best[cap - kp.w[j]] + kp.v[j]);
        }
    }
    return best[kp.c];
}

long long constraint_value(const std::vector<long long>& row, std::uint64_t x) {
    long long acc = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (x >> j & 1) acc += row[j];
    return acc;
}

bool is_feasible(const BinaryLinearProblem& p, std::uint64_t x) {
    for (std::size_t i = 0; i < p.q.size(); ++i)
        if (constraint_value(p.q[i], x) < p.c[i]) return false;
    return true;
}

Rational objective_value(const BinaryLinearProblem& p, std::uint64_t x) {
    Rational acc(0);
    for (int j = 0; j < p.n; ++j)
        if (x >> j & 1) acc += p.q0[j];
    return acc;
}

OracleResult solve_bruteforce(const BinaryLinearProblem& p, int max_n) {
    if (p.n < 1) throw std::invalid_argument("bruteforce: n must be >= 1");
    if (p.n > max_n) throw std::invalid_argument("bruteforce: n exceeds the enumeration limit");
    if (static_cast<int>(p.q0.size()) != p.n)
        throw std::invalid_argument("bruteforce: objective length mismatch");

    // Put the objective over a common denominator so the scan runs on
    // integers; the rational path only pays gcd costs once per coefficient.
    long long den = 1;
    for (const Rational& r : p.q0) den = std::lcm(den, r.denominator());
    std::vector<long long> num(p.n);
    for (int j = 0; j < p.n; ++j) num[j] = p.q0[j].numerator() * (den / p.q0[j].denominator());

    bool seen = false;
    long long best = 0;
    std::vector<std::uint64_t> argmins;
    const std::uint64_t end = 1ULL << p.n;
    for (std::uint64_t x = 0; x < end; ++x) {
        if (!is_feasible(p, x)) continue;
        long long val = 0;
        for (int j = 0; j < p.n; ++j)
            if (x >> j & 1) val += num[j];
        if (!seen || val < best) {
            seen = true;
            best = val;
            argmins.assign(1, x);
        } else if (val == best) {
            argmins.push_back(x);
        }
    }
    if (!seen) throw std::runtime_error("no feasible solution");
    return OracleResult{Rational(best, den), std::move(argmins)};
}

Rational epsilon_gap(const BinaryLinearProblem& p, std::uint64_t x,
                     const std::vector<Rational>& lambda) {
    if (lambda.size() != p.q.size())
        throw std::invalid_argument("epsilon_gap: lambda size mismatch");
    for (const Rational& l : lambda)
        if (l < Rational(0)) throw std::invalid_argument("epsilon_gap: lambda must be nonnegative");
    if (!is_feasible(p, x)) throw std::invalid_argument("epsilon_gap: assignment is infeasible");
    Rational eps(0);
    for (std::size_t i = 0; i < p.q.size(); ++i)
        eps += lambda[i] * Rational(constraint_value(p.q[i], x) - p.c[i]);
    return eps;
}

}  // namespace daqc
