#pragma once

// Random-search parameter tuning. Each trial samples a parametrization
// uniformly from the search space, evaluates it on every training instance,
// and is scored by the median time-to-solution (infinities sort last). Trial
// t draws from a generator seeded with derive_seed(seed, {t}), so results
// are independent of evaluation order and identical for any --jobs value.

#include <cstdint>
#include <vector>

#include "daqc/pipeline.hpp"

namespace daqc {

struct SearchSpace {
    int p_lo = 1, p_hi = 100;
    double t_lo = 1.0, t_hi = 40.0;
    double a_lo = -2.0, a_hi = 2.0;
    // Dual family: multiplier schedule weight, offset (as a fraction of the
    // sampled T), and shape. The weight is a factor on the instance's
    // certified multiplier by default (LambdaBase::DualCertificate), so the
    // useful range sits around 1.
    double lam_gamma_lo = 0.0, lam_gamma_hi = 2.0;
    double lam_offset_frac_lo = -1.0, lam_offset_frac_hi = 1.0;
    double lam_a_lo = -2.0, lam_a_hi = 2.0;
    // QUBO family: multiplicative factor on the default penalty sum(v) + 1.
    double qubo_gamma_lo = 0.5, qubo_gamma_hi = 4.0;
    // Copied into every sampled parametrization (not itself searched).
    LambdaBase lambda_base = LambdaBase::DualCertificate;
};

struct TrialRecord {
    int trial = 0;
    FamilyParams params;
    double median_tts = 0.0;
    double finite_fraction = 0.0;
    bool short_circuited = false;
};

struct TuneResult {
    FamilyParams best;
    double best_median_tts = 0.0;
    double best_finite_fraction = 0.0;
    int best_trial = -1;
    bool failed = false;  // every trial had an infinite median; best maximizes finite fraction
    std::vector<TrialRecord> log;
};

// Draw the parametrization for one trial (exposed for reproducibility tests).
FamilyParams sample_params(Family family, const SearchSpace& space, std::uint64_t seed, int trial);

// Throws if any training instance would exceed opts.qubit_cap (tuning wants
// every instance simulable, unlike bench which skips). allow_short_circuit
// abandons a trial once even a zero score on every remaining instance could
// not bring its median below the incumbent; the bound is conservative, so it
// changes only the log flags, never the selected optimum. It requires
// jobs == 1 because it depends on the serial incumbent scan.
TuneResult random_search(const std::vector<KnapsackInstance>& train, Family family,
                         const SearchSpace& space, int trials, std::uint64_t seed,
                         const EvalOptions& opts, int jobs = 1,
                         bool allow_short_circuit = false);

}  // namespace daqc
