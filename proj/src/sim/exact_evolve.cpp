#include <cmath>
#include <complex>
#include <stdexcept>

#include "daqc/sim/exact.hpp"

namespace daqc {

namespace {

Eigen::MatrixXd ring_mixer_dense(int n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (int j = 0; j < n; ++j) h(i ^ (std::size_t{1} << j), i) -= 1.0;  // -X_j
        const int edges = (n >= 3) ? n : 1;
        for (int j = 0; j < edges; ++j) {
            const std::size_t mask =
                (std::size_t{1} << j) | (std::size_t{1} << ((j + 1) % n));
            h(i ^ mask, i) -= 1.0;  // -X_j X_{j+1}
        }
    }
    return h;
}

std::vector<double> diagonal_of(const std::vector<double>& z, std::size_t dim) {
    std::vector<double> d(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        double val = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j)
            val += (i >> j & 1) ? -z[j] : z[j];
        d[i] = val;
    }
    return d;
}

}  // namespace

void evolve_piecewise(const std::function<void(double, Eigen::MatrixXd&)>& fill_h, double T,
                      int fine_steps, Statevector& psi) {
    if (T <= 0.0) throw std::invalid_argument("evolve_piecewise: T must be positive");
    if (fine_steps < 1) throw std::invalid_argument("evolve_piecewise: need at least one step");
    const auto dim = static_cast<Eigen::Index>(psi.dim());
    Eigen::MatrixXd h(dim, dim);
    Eigen::Map<Eigen::VectorXcd> state(psi.data(), dim);
    const double step = T / fine_steps;
    for (int r = 0; r < fine_steps; ++r) {
        fill_h((r + 0.5) * step, h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
        Eigen::VectorXcd w = eig.eigenvectors().transpose() * state;
        for (Eigen::Index k = 0; k < dim; ++k)
            w(k) *= std::exp(std::complex<double>(0.0, -step * eig.eigenvalues()(k)));
        state = eig.eigenvectors() * w;
    }
}

Statevector exact_evolve(const BinaryLinearProblem& p, const ScheduleParams& sp,
                         const std::vector<LambdaScheduleParams>& lambda, int fine_steps,
                         NormMode mode, NormTime when, int max_qubits) {
    if (p.n < 2) throw std::invalid_argument("exact_evolve: need n >= 2");
    if (p.n > max_qubits) throw std::invalid_argument("exact_evolve: n exceeds the dense cap");
    if (lambda.size() != p.q.size())
        throw std::invalid_argument("exact_evolve: one multiplier schedule per constraint");
    if (sp.T <= 0.0) throw std::invalid_argument("exact_evolve: T must be positive");

    const std::size_t dim = std::size_t{1} << p.n;
    const Eigen::MatrixXd mixer = ring_mixer_dense(p.n);
    const std::vector<double> no_zz;

    const auto multipliers_at = [&](double t) {
        std::vector<double> lam(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) lam[i] = eval_lambda(t, lambda[i], sp.T);
        return lam;
    };

    double fixed_norm_p = 1.0;
    double norm_init = 1.0;
    if (mode != NormMode::None) {
        const auto at_T = hamiltonian_norms(MixerKind::RingXX, p.n,
                                            ld_z_coefficients(p, multipliers_at(sp.T)), no_zz, mode);
        norm_init = at_T.init;
        fixed_norm_p = at_T.problem;
    }

    const auto fill = [&](double t, Eigen::MatrixXd& h) {
        const double s = eval_schedule(t, sp.a, sp.T);
        const std::vector<double> z = ld_z_coefficients(p, multipliers_at(t));
        double norm_p = fixed_norm_p;
        if (mode != NormMode::None && when == NormTime::PerLayer)
            norm_p = hamiltonian_norms(MixerKind::RingXX, p.n, z, no_zz, mode).problem;
        h = ((1.0 - s) / norm_init) * mixer;
        const std::vector<double> diag = diagonal_of(z, dim);
        const double scale = s / norm_p;
        for (std::size_t i = 0; i < dim; ++i) h(i, i) += scale * diag[i];
    };

    Statevector psi = prepare_plus_state(p.n);
    evolve_piecewise(fill, sp.T, fine_steps, psi);
    return psi;
}

ExactEvolveResult exact_evolve_converged(const BinaryLinearProblem& p, const ScheduleParams& sp,
                                         const std::vector<LambdaScheduleParams>& lambda,
                                         double tol, int start_steps, int max_doublings,
                                         NormMode mode, NormTime when, int max_qubits) {
    int steps = start_steps;
    Statevector coarse = exact_evolve(p, sp, lambda, steps, mode, when, max_qubits);
    for (int round = 0; round < max_doublings; ++round) {
        Statevector fine = exact_evolve(p, sp, lambda, 2 * steps, mode, when, max_qubits);
        double diff_sq = 0.0;
        for (std::size_t i = 0; i < fine.dim(); ++i) {
            const auto d = fine.data()[i] - coarse.data()[i];
            diff_sq += std::norm(d);
        }
        steps *= 2;
        if (std::sqrt(diff_sq) < tol) return {std::move(fine), steps};
        coarse = std::move(fine);
    }
    throw std::runtime_error("exact_evolve_converged: did not converge within the doubling cap");
}

}  // namespace daqc
