#pragma once

// End-to-end evaluation of one instance under one parametrization: oracle,
// compile (dual or QUBO family), simulate, score. Shared by the bench
// command, the tuner, and the acceptance suite so they cannot drift apart.

#include <optional>
#include <string>

#include "daqc/circuit.hpp"
#include "daqc/metrics.hpp"
#include "daqc/problems.hpp"
#include "daqc/schedules.hpp"

namespace daqc {

// What the dual-family multiplier schedule's weight is measured against.
// DualCertificate multiplies lambda.gamma by the instance's subgradient-
// certified multiplier, so one tuned parametrization transfers across
// instances and coefficient scales; Unit takes the schedule verbatim.
enum class LambdaBase { Unit, DualCertificate };

struct FamilyParams {
    Family family = Family::LD;
    int p = 1;
    double T = 1.0;
    double a = 0.0;
    LambdaScheduleParams lambda;     // dual family
    LambdaBase lambda_base = LambdaBase::DualCertificate;
    double qubo_gamma_factor = 1.0;  // times the default penalty sum(v) + 1

    std::string lambda_desc() const;  // the CSV "lambda" column
};

struct EvalOptions {
    NormMode norm_mode = NormMode::Pauli2;
    NormTime norm_time = NormTime::PerLayer;
    TimingMode timing = TimingMode::Fused;
    int qubit_cap = 22;       // simulable register size; larger QUBO instances are skipped
    int bruteforce_cap = 24;  // oracle enumeration limit
};

// The multiplier schedule the dual family actually runs for an instance:
// params.lambda, with its weight rebased on the certified multiplier when
// params.lambda_base asks for it.
LambdaScheduleParams resolve_lambda(const BinaryLinearProblem& canonical,
                                    const FamilyParams& params);

// Returns a fully populated row, or a skipped row (reason set, metrics
// zeroed) when the register exceeds the cap. Pass the instance's oracle
// result if you already have it; it is computed otherwise.
RunMetrics evaluate_instance(const KnapsackInstance& kp, const FamilyParams& params,
                             const EvalOptions& opts,
                             const OracleResult* oracle = nullptr);

// Register width the QUBO family needs for an instance.
int qubo_register_width(const KnapsackInstance& kp);

}  // namespace daqc
