#pragma once

// Reference propagation of the continuous interpolating Hamiltonian
//
//     H(t) = (1 - s(t)) H_init / n_i  +  s(t) H_P(t) / n_p(t),
//
// the limit the layered circuits approximate. n_i and n_p are the same norms
// the Trotter plan divides by (NormMode::None gives the unnormalized
// Hamiltonian). The propagator is piecewise constant: each of the
// fine_steps subintervals applies exp(-i h H(t_mid)) via a dense
// eigendecomposition, so memory is 4^n and n is capped low.

#include <Eigen/Dense>
#include <functional>

#include "daqc/schedules.hpp"
#include "daqc/sim/statevector.hpp"

namespace daqc {

// Generic dense path: fill_h writes H(t) into the preallocated matrix.
void evolve_piecewise(const std::function<void(double, Eigen::MatrixXd&)>& fill_h, double T,
                      int fine_steps, Statevector& psi);

// Dual-family Hamiltonian from a plus-state start. Ring mixer (single edge
// at n = 2), problem part diagonal from the multiplier schedules.
Statevector exact_evolve(const BinaryLinearProblem& p, const ScheduleParams& sp,
                         const std::vector<LambdaScheduleParams>& lambda, int fine_steps,
                         NormMode mode = NormMode::Pauli2, NormTime when = NormTime::PerLayer,
                         int max_qubits = 10);

struct ExactEvolveResult {
    Statevector state;
    int fine_steps = 0;
};

// Doubles fine_steps until the state moves by less than tol in L2 norm;
// throws std::runtime_error if max_doublings is exhausted first.
ExactEvolveResult exact_evolve_converged(const BinaryLinearProblem& p, const ScheduleParams& sp,
                                         const std::vector<LambdaScheduleParams>& lambda,
                                         double tol = 1e-8, int start_steps = 64,
                                         int max_doublings = 12,
                                         NormMode mode = NormMode::Pauli2,
                                         NormTime when = NormTime::PerLayer, int max_qubits = 10);

}  // namespace daqc
