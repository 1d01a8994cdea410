#pragma once

// Lagrangian dual of the canonical problem. Relaxing q_i . x >= c_i with
// multipliers lambda_i >= 0 gives the inner problem
//
//     D(lambda) = min_x [ q0 . x + sum_i lambda_i (c_i - q_i . x) ],
//
// separable per bit: x_j = 1 exactly when its coefficient
// q0_j - sum_i lambda_i q_ij is negative (ties resolve to 0). D is concave
// and never exceeds the primal minimum, so any evaluation is a certified
// lower bound; the certificate below keeps lambda rational and the value
// exact so that bound carries no rounding.

#include <cstdint>
#include <vector>

#include "daqc/problems.hpp"
#include "daqc/rational.hpp"

namespace daqc {

struct InnerSolution {
    std::uint64_t x = 0;
    Rational value;  // D(lambda), exact
};

struct DualCertificate {
    std::vector<Rational> lambda;
    std::uint64_t x_inner = 0;
    Rational dual_value;     // exact D(lambda), a lower bound on the primal minimum
    bool inner_feasible = false;
    Rational primal_value;   // objective at x_inner when feasible
    Rational epsilon;        // sum_i lambda_i (q_i . x_inner - c_i) when feasible
};

// Exact inner minimization at rational lambda. Throws on size mismatch or
// negative multipliers.
InnerSolution inner_minimize(const BinaryLinearProblem& p, const std::vector<Rational>& lambda);

struct AscentOptions {
    int steps = 200;
    double eta0 = 1.0;           // step t uses eta0 / sqrt(t)
    int certificate_bits = 20;   // best lambda is rounded to denominator 2^bits
};

// Projected subgradient ascent on D from lambda0 (componentwise clamped to
// lambda >= 0). The loop runs in floating point with a 1e-9 tie slack on the
// bit coefficients; the returned certificate re-evaluates the best iterate
// exactly after rounding it to a dyadic rational, so dual_value is a true
// bound regardless of float error. Throws on eta0 <= 0 or steps < 1.
DualCertificate subgradient_ascent(const BinaryLinearProblem& p, const std::vector<double>& lambda0,
                                   const AscentOptions& opt = {});

}  // namespace daqc
