#include "daqc/pipeline.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "daqc/duality.hpp"
#include "daqc/sim/statevector.hpp"

namespace daqc {

std::string FamilyParams::lambda_desc() const {
    if (family == Family::QUBO) return fmt::format("qgf={:.17g}", qubo_gamma_factor);
    const char* base = (lambda_base == LambdaBase::DualCertificate) ? "dual*" : "";
    if (lambda.constant) return fmt::format("const={}{:.17g}", base, lambda.gamma);
    return fmt::format("g={}{:.17g};o={:.17g};a={:.17g}", base, lambda.gamma, lambda.offset,
                       lambda.a);
}

int qubo_register_width(const KnapsackInstance& kp) { return kp.n + slack_bits(kp.c); }

LambdaScheduleParams resolve_lambda(const BinaryLinearProblem& canonical,
                                    const FamilyParams& params) {
    LambdaScheduleParams lam = params.lambda;
    if (params.lambda_base == LambdaBase::DualCertificate) {
        const DualCertificate cert =
            subgradient_ascent(canonical, std::vector<double>(canonical.q.size(), 0.0));
        lam.gamma *= boost::rational_cast<double>(cert.lambda[0]);
    }
    return lam;
}

namespace {

double schedule_time_ns(const Circuit& circ, const KnapsackInstance& kp, Family family,
                        TimingMode timing) {
    if (timing == TimingMode::ClosedForm)
        return tss_closed_form(family, kp.n, kp.c, circ.layers);
    return schedule_sublayers(circ, timing).total_time_ns;
}

}  // namespace

RunMetrics evaluate_instance(const KnapsackInstance& kp, const FamilyParams& params,
                             const EvalOptions& opts, const OracleResult* oracle) {
    RunMetrics row;
    row.instance_id = kp.id;
    row.family = params.family;
    row.n = kp.n;
    row.cell = kp.cell;
    row.capacity = kp.c;
    row.p = params.p;
    row.T = params.T;
    row.a = params.a;
    row.lambda_desc = params.lambda_desc();

    const int width = (params.family == Family::QUBO) ? qubo_register_width(kp) : kp.n;
    row.qubits = width;
    if (width > opts.qubit_cap) {
        row.skipped = true;
        row.skip_reason = fmt::format("register {} exceeds cap {}", width, opts.qubit_cap);
        return row;
    }

    const BinaryLinearProblem canonical = to_canonical(kp);
    OracleResult local_oracle;
    if (oracle == nullptr) {
        local_oracle = solve_bruteforce(canonical, opts.bruteforce_cap);
        oracle = &local_oracle;
    }

    const ScheduleParams sp{params.T, params.p, params.a};
    if (params.family == Family::LD) {
        const TrotterPlan plan = build_trotter_plan(canonical, sp, {resolve_lambda(canonical, params)},
                                                    opts.norm_mode, opts.norm_time);
        const Circuit circ = build_ld_circuit(plan, canonical);
        Statevector sv = prepare_plus_state(kp.n, opts.qubit_cap);
        apply_circuit(sv, circ);
        row.success_p = success_probability(sv, ld_success_event(kp.n, *oracle));
        row.tss_ns = schedule_time_ns(circ, kp, Family::LD, opts.timing);
    } else {
        if (params.qubo_gamma_factor <= 0.0)
            throw std::invalid_argument("evaluate_instance: penalty factor must be positive");
        const Rational gamma =
            rational_from_double(params.qubo_gamma_factor, 12) * default_penalty(kp);
        const QuboModel qubo = build_kp_qubo(kp, gamma);
        const IsingModel ising = qubo_to_ising(qubo);
        const TrotterPlan plan = build_trotter_plan(ising, sp, opts.norm_mode);
        const Circuit circ = build_qubo_circuit(plan, ising);
        Statevector sv = prepare_plus_state(width, opts.qubit_cap);
        apply_circuit(sv, circ);
        row.success_p = success_probability(sv, qubo_success_event(qubo, *oracle));
        row.tss_ns = schedule_time_ns(circ, kp, Family::QUBO, opts.timing);
    }
    row.r99 = r99(std::min(1.0, row.success_p));  // guard float drift just over 1
    row.tts_ns = row.r99 * row.tss_ns;
    return row;
}

}  // namespace daqc
