#include "daqc/schedules.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "daqc/qubo.hpp"

namespace daqc {

namespace {

void check_schedule(const ScheduleParams& sp) {
    if (sp.T <= 0.0) throw std::invalid_argument("schedule: T must be positive");
    if (sp.p < 1) throw std::invalid_argument("schedule: p must be >= 1");
}

double mode_scale(NormMode mode, int qubits) {
    if (mode == NormMode::MatrixFrobenius) return std::pow(2.0, 0.5 * qubits);
    return 1.0;
}

}  // namespace

double eval_schedule(double t, double a, double T) {
    if (T <= 0.0) throw std::invalid_argument("eval_schedule: T must be positive");
    const double tau = t / T;
    return tau + a * tau * (tau - 0.5) * (tau - 1.0);
}

double eval_lambda_raw(double t, const LambdaScheduleParams& lp, double T) {
    if (lp.constant) return lp.gamma;
    if (t <= lp.offset) return 0.0;
    return lp.gamma * eval_schedule(t - lp.offset, lp.a, T);
}

double eval_lambda(double t, const LambdaScheduleParams& lp, double T) {
    return std::max(0.0, eval_lambda_raw(t, lp, T));
}

HamNorms hamiltonian_norms(MixerKind mixer, int qubits, const std::vector<double>& z,
                           const std::vector<double>& zz, NormMode mode) {
    if (qubits < 1) throw std::invalid_argument("hamiltonian_norms: qubits must be >= 1");
    HamNorms norms;
    if (mode == NormMode::None) return norms;

    const double scale = mode_scale(mode, qubits);
    double init_sq = static_cast<double>(qubits);  // unit-coefficient X terms
    if (mixer == MixerKind::RingXX) {
        // n ring XX terms for n >= 3; at n = 2 both ring edges coincide, so a
        // single XX term remains.
        init_sq += (qubits >= 3) ? static_cast<double>(qubits) : 1.0;
    }
    norms.init = std::sqrt(init_sq) * scale;

    double prob_sq = 0.0;
    for (double c : z) prob_sq += c * c;
    for (double c : zz) prob_sq += c * c;
    if (prob_sq == 0.0) {
        norms.problem = 1.0;
        norms.substituted = true;
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::cerr << "hamiltonian_norms: all problem coefficients are zero; using unit norm "
                         "(further warnings suppressed)\n";
    } else {
        norms.problem = std::sqrt(prob_sq) * scale;
    }
    return norms;
}

std::vector<double> ld_z_coefficients(const BinaryLinearProblem& p,
                                      const std::vector<double>& lambda) {
    if (lambda.size() != p.q.size())
        throw std::invalid_argument("ld_z_coefficients: lambda size mismatch");
    std::vector<double> h(p.n);
    for (int j = 0; j < p.n; ++j) {
        double hj = -to_double(p.q0[j]);
        for (std::size_t i = 0; i < p.q.size(); ++i)
            hj += lambda[i] * static_cast<double>(p.q[i][j]);
        h[j] = hj;
    }
    return h;
}

TrotterPlan build_trotter_plan(const BinaryLinearProblem& p, const ScheduleParams& sp,
                               const std::vector<LambdaScheduleParams>& lambda, NormMode mode,
                               NormTime when) {
    check_schedule(sp);
    if (p.n < 2) throw std::invalid_argument("build_trotter_plan: need n >= 2 for the ring mixer");
    if (lambda.size() != p.q.size())
        throw std::invalid_argument("build_trotter_plan: one multiplier schedule per constraint");

    TrotterPlan plan;
    plan.family = Family::LD;
    plan.sched = sp;
    plan.norm_mode = mode;
    plan.norm_time = when;
    plan.mixer = MixerKind::RingXX;
    plan.qubits = p.n;

    const double dt = sp.T / sp.p;
    const std::vector<double> empty_zz;

    auto multipliers_at = [&](double t, int* clamps) {
        std::vector<double> lam(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            const double raw = eval_lambda_raw(t, lambda[i], sp.T);
            if (raw < 0.0 && clamps) ++*clamps;
            lam[i] = std::max(0.0, raw);
        }
        return lam;
    };

    double fixed_norm_p = 1.0;
    bool fixed_substituted = false;
    if (when == NormTime::FixedAtT) {
        const auto lam_T = multipliers_at(sp.T, nullptr);
        const HamNorms norms =
            hamiltonian_norms(MixerKind::RingXX, p.n, ld_z_coefficients(p, lam_T), empty_zz, mode);
        plan.norm_init = norms.init;
        fixed_norm_p = norms.problem;
        fixed_substituted = norms.substituted;
    }

    plan.layers.reserve(sp.p);
    for (int k = 1; k <= sp.p; ++k) {
        TrotterLayer layer;
        layer.t = k * dt;
        const double s = eval_schedule(layer.t, sp.a, sp.T);
        layer.c = (1.0 - s) * dt;
        layer.b = s * dt;
        layer.lambda = multipliers_at(layer.t, &plan.lambda_clamps);

        if (when == NormTime::PerLayer) {
            const HamNorms norms = hamiltonian_norms(
                MixerKind::RingXX, p.n, ld_z_coefficients(p, layer.lambda), empty_zz, mode);
            plan.norm_init = norms.init;
            layer.norm_p = norms.problem;
            plan.norm_substituted |= norms.substituted;
        } else {
            layer.norm_p = fixed_norm_p;
            plan.norm_substituted = fixed_substituted;
        }
        layer.gamma = layer.c / plan.norm_init;
        layer.beta = layer.b / layer.norm_p;
        plan.layers.push_back(std::move(layer));
    }
    if (plan.lambda_clamps > 0) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::cerr << "build_trotter_plan: clamped " << plan.lambda_clamps
                      << " negative multiplier value(s) to 0 (further warnings suppressed; "
                         "plans keep their own clamp counts)\n";
    }
    return plan;
}

TrotterPlan build_trotter_plan(const IsingModel& ising, const ScheduleParams& sp, NormMode mode) {
    check_schedule(sp);
    if (ising.num_vars < 1) throw std::invalid_argument("build_trotter_plan: empty Ising model");

    TrotterPlan plan;
    plan.family = Family::QUBO;
    plan.sched = sp;
    plan.norm_mode = mode;
    plan.norm_time = NormTime::PerLayer;  // the problem Hamiltonian is time-independent
    plan.mixer = MixerKind::TransverseField;
    plan.qubits = ising.num_vars;

    std::vector<double> z(ising.h.size());
    for (std::size_t j = 0; j < ising.h.size(); ++j) z[j] = to_double(ising.h[j]);
    std::vector<double> zz;
    zz.reserve(ising.J.size());
    for (const auto& [vars, coeff] : ising.J) zz.push_back(to_double(coeff));

    const HamNorms norms =
        hamiltonian_norms(MixerKind::TransverseField, ising.num_vars, z, zz, mode);
    plan.norm_init = norms.init;
    plan.norm_substituted = norms.substituted;

    const double dt = sp.T / sp.p;
    plan.layers.reserve(sp.p);
    for (int k = 1; k <= sp.p; ++k) {
        TrotterLayer layer;
        layer.t = k * dt;
        const double s = eval_schedule(layer.t, sp.a, sp.T);
        layer.c = (1.0 - s) * dt;
        layer.b = s * dt;
        layer.norm_p = norms.problem;
        layer.gamma = layer.c / plan.norm_init;
        layer.beta = layer.b / layer.norm_p;
        plan.layers.push_back(std::move(layer));
    }
    return plan;
}

}  // namespace daqc
