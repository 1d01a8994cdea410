#pragma once

// Annealing schedule, multiplier schedules, Hamiltonian norms, and the
// per-layer Trotter plan shared by both circuit families.
//
// The schedule is the cubic s(t; a, T) = tau + a*tau*(tau - 1/2)*(tau - 1)
// with tau = t/T; it is pinned to 0, 1/2, 1 at t = 0, T/2, T for every a.
// A multiplier schedule is lambda_i(t) = gamma_i * s(t - o_i; a_i, T) for
// t > o_i and 0 otherwise (or a constant), clamped to lambda >= 0.
//
// A plan discretizes t in p layers of width dt = T/p. Layer k (1-based)
// carries c_k = (1 - s(k dt)) dt and b_k = s(k dt) dt, then divides by the
// mixer and problem-Hamiltonian norms to get the gate-angle scales
// gamma_k = c_k / ||H_init|| and beta_k = b_k / ||H_P(k dt)||. The default
// norm is the Euclidean norm of the Pauli coefficient vector ("pauli2");
// "matrix-frobenius" multiplies it by 2^(qubits/2), and "none" disables the
// normalization (both divisors 1).

#include <vector>

#include "daqc/problems.hpp"

namespace daqc {

enum class NormMode { Pauli2, MatrixFrobenius, None };
enum class NormTime { PerLayer, FixedAtT };
enum class MixerKind { RingXX, TransverseField };
enum class Family { LD, QUBO };

struct ScheduleParams {
    double T = 1.0;
    int p = 1;
    double a = 0.0;
};

struct LambdaScheduleParams {
    double gamma = 1.0;
    double offset = 0.0;
    double a = 0.0;
    bool constant = false;  // lambda(t) = gamma for all t, ignoring offset/a
};

double eval_schedule(double t, double a, double T);

// Raw multiplier value (may be negative when a < 0 drives the cubic below
// zero) and the clamped value used everywhere downstream.
double eval_lambda_raw(double t, const LambdaScheduleParams& lp, double T);
double eval_lambda(double t, const LambdaScheduleParams& lp, double T);

struct HamNorms {
    double init = 1.0;
    double problem = 1.0;
    bool substituted = false;  // problem norm was 0 and replaced by 1
};

// Norms from Pauli coefficients: the mixer contributes n X terms plus n ring
// XX terms (a single edge at n = 2) or just N X terms for the transverse
// field; the problem Hamiltonian contributes the given Z and ZZ coefficients.
HamNorms hamiltonian_norms(MixerKind mixer, int qubits, const std::vector<double>& z,
                           const std::vector<double>& zz, NormMode mode);

// Z coefficients of the dual problem Hamiltonian at multipliers lambda:
// h_j = -q0_j + sum_i lambda_i q_ij.
std::vector<double> ld_z_coefficients(const BinaryLinearProblem& p,
                                      const std::vector<double>& lambda);

struct TrotterLayer {
    double t = 0.0;       // k * dt
    double c = 0.0;       // mixer weight, (1 - s) dt
    double b = 0.0;       // problem weight, s dt
    double gamma = 0.0;   // c / ||H_init||
    double beta = 0.0;    // b / ||H_P||
    double norm_p = 1.0;
    std::vector<double> lambda;  // clamped multipliers at this layer (LD only)
};

struct TrotterPlan {
    Family family = Family::LD;
    ScheduleParams sched;
    NormMode norm_mode = NormMode::Pauli2;
    NormTime norm_time = NormTime::PerLayer;
    MixerKind mixer = MixerKind::RingXX;
    int qubits = 0;
    double norm_init = 1.0;
    int lambda_clamps = 0;      // how many layer/multiplier values were clamped to 0
    bool norm_substituted = false;
    std::vector<TrotterLayer> layers;
};

// Dual-family plan: multipliers evaluated per layer, problem norm from the
// instantaneous Z coefficients (or from t = T throughout with FixedAtT).
TrotterPlan build_trotter_plan(const BinaryLinearProblem& p, const ScheduleParams& sp,
                               const std::vector<LambdaScheduleParams>& lambda,
                               NormMode mode = NormMode::Pauli2,
                               NormTime when = NormTime::PerLayer);

struct IsingModel;  // qubo.hpp

// QUBO-family plan: transverse-field mixer, time-independent Ising problem
// Hamiltonian.
TrotterPlan build_trotter_plan(const IsingModel& ising, const ScheduleParams& sp,
                               NormMode mode = NormMode::Pauli2);

}  // namespace daqc
