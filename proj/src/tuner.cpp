#include "daqc/tuner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "daqc/rng.hpp"

namespace daqc {

namespace {

// Smallest median the trial can still reach: pretend every instance not yet
// evaluated scores zero. If even that optimistic completion cannot beat the
// incumbent, finishing the trial cannot change the selected optimum.
double median_lower_bound(std::vector<double> seen, std::size_t total) {
    std::sort(seen.begin(), seen.end());
    const std::size_t pending = total - seen.size();
    const auto at = [&](std::size_t overall) {
        return overall < pending ? 0.0 : seen[overall - pending];
    };
    if (total % 2 == 1) return at(total / 2);
    return 0.5 * (at(total / 2 - 1) + at(total / 2));
}

void check_space(const SearchSpace& s) {
    if (s.p_lo < 1 || s.p_hi < s.p_lo) throw std::invalid_argument("search space: bad p range");
    if (!(s.t_lo > 0.0) || s.t_hi < s.t_lo) throw std::invalid_argument("search space: bad T range");
    if (s.a_hi < s.a_lo || s.lam_a_hi < s.lam_a_lo)
        throw std::invalid_argument("search space: bad shape range");
    if (s.lam_gamma_lo < 0.0 || s.lam_gamma_hi < s.lam_gamma_lo)
        throw std::invalid_argument("search space: bad multiplier weight range");
    if (!(s.qubo_gamma_lo > 0.0) || s.qubo_gamma_hi < s.qubo_gamma_lo)
        throw std::invalid_argument("search space: bad penalty factor range");
    if (s.lam_offset_frac_hi < s.lam_offset_frac_lo)
        throw std::invalid_argument("search space: bad offset range");
}

}  // namespace

FamilyParams sample_params(Family family, const SearchSpace& space, std::uint64_t seed,
                           int trial) {
    Xoshiro256StarStar rng(derive_seed(seed, {static_cast<std::uint64_t>(trial)}));
    FamilyParams fp;
    fp.family = family;
    fp.p = static_cast<int>(rng.next_int(space.p_lo, space.p_hi));
    fp.T = rng.next_real(space.t_lo, space.t_hi);
    fp.a = rng.next_real(space.a_lo, space.a_hi);
    if (family == Family::LD) {
        fp.lambda.gamma = rng.next_real(space.lam_gamma_lo, space.lam_gamma_hi);
        fp.lambda.offset = rng.next_real(space.lam_offset_frac_lo, space.lam_offset_frac_hi) * fp.T;
        fp.lambda.a = rng.next_real(space.lam_a_lo, space.lam_a_hi);
        fp.lambda_base = space.lambda_base;
    } else {
        fp.qubo_gamma_factor = rng.next_real(space.qubo_gamma_lo, space.qubo_gamma_hi);
    }
    return fp;
}

TuneResult random_search(const std::vector<KnapsackInstance>& train, Family family,
                         const SearchSpace& space, int trials, std::uint64_t seed,
                         const EvalOptions& opts, int jobs, bool allow_short_circuit) {
    check_space(space);
    if (train.empty()) throw std::invalid_argument("random_search: no training instances");
    if (trials < 1) throw std::invalid_argument("random_search: need at least one trial");
    if (jobs < 1) throw std::invalid_argument("random_search: jobs must be >= 1");
    if (allow_short_circuit && jobs != 1)
        throw std::invalid_argument("random_search: early abandoning requires jobs == 1");
    if (family == Family::QUBO)
        for (const KnapsackInstance& kp : train)
            if (qubo_register_width(kp) > opts.qubit_cap)
                throw std::invalid_argument("random_search: instance " + kp.id +
                                            " exceeds the qubit cap");

    std::vector<OracleResult> oracles;
    oracles.reserve(train.size());
    for (const KnapsackInstance& kp : train)
        oracles.push_back(solve_bruteforce(to_canonical(kp), opts.bruteforce_cap));

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<TrialRecord> log(trials);

    // incumbent_median is only consulted for early abandoning, which is
    // restricted to serial runs; parallel runs evaluate every trial fully.
    double incumbent_median = inf;
    const auto run_trial = [&](int t) {
        TrialRecord rec;
        rec.trial = t;
        rec.params = sample_params(family, space, seed, t);
        std::vector<double> tts;
        tts.reserve(train.size());
        for (std::size_t i = 0; i < train.size(); ++i) {
            tts.push_back(
                evaluate_instance(train[i], rec.params, opts, &oracles[i]).tts_ns);
            if (allow_short_circuit && std::isfinite(incumbent_median) &&
                tts.size() < train.size() &&
                median_lower_bound(tts, train.size()) >= incumbent_median) {
                rec.short_circuited = true;
                break;
            }
        }
        const Aggregate agg = aggregate(tts);
        rec.median_tts = agg.median;
        rec.finite_fraction = agg.finite_fraction;
        return rec;
    };

    if (jobs == 1) {
        for (int t = 0; t < trials; ++t) {
            log[t] = run_trial(t);
            if (!log[t].short_circuited && log[t].median_tts < incumbent_median)
                incumbent_median = log[t].median_tts;
        }
    } else {
        std::atomic<int> next{0};
        const auto worker = [&] {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= trials) return;
                log[t] = run_trial(t);
            }
        };
        std::vector<std::thread> pool;
        const int width = std::min(jobs, trials);
        pool.reserve(width);
        for (int i = 0; i < width; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    TuneResult result;
    result.log = std::move(log);
    for (const TrialRecord& rec : result.log) {
        if (rec.short_circuited) continue;
        if (result.best_trial < 0 || rec.median_tts < result.best_median_tts) {
            result.best_trial = rec.trial;
            result.best_median_tts = rec.median_tts;
            result.best_finite_fraction = rec.finite_fraction;
            result.best = rec.params;
        }
    }
    if (result.best_trial < 0 || std::isinf(result.best_median_tts)) {
        // Nothing achieved a finite median; surface the trial that came
        // closest to working instead of an arbitrary one.
        result.failed = true;
        result.best_trial = -1;
        for (const TrialRecord& rec : result.log) {
            if (result.best_trial < 0 || rec.finite_fraction > result.best_finite_fraction) {
                result.best_trial = rec.trial;
                result.best_median_tts = rec.median_tts;
                result.best_finite_fraction = rec.finite_fraction;
                result.best = rec.params;
            }
        }
    }
    return result;
}

}  // namespace daqc
