#include "daqc/duality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace daqc {

namespace {

constexpr double kTieSlack = 1e-9;

void check_problem(const BinaryLinearProblem& p, std::size_t lambda_size) {
    if (p.n < 1) throw std::invalid_argument("duality: n must be >= 1");
    if (static_cast<int>(p.q0.size()) != p.n)
        throw std::invalid_argument("duality: objective length mismatch");
    if (lambda_size != p.q.size())
        throw std::invalid_argument("duality: lambda size must match constraint count");
}

}  // namespace

InnerSolution inner_minimize(const BinaryLinearProblem& p, const std::vector<Rational>& lambda) {
    check_problem(p, lambda.size());
    for (const Rational& l : lambda)
        if (l < Rational(0)) throw std::invalid_argument("inner_minimize: lambda must be nonnegative");

    InnerSolution sol;
    sol.value = Rational(0);
    for (std::size_t i = 0; i < p.q.size(); ++i) sol.value += lambda[i] * Rational(p.c[i]);
    for (int j = 0; j < p.n; ++j) {
        Rational coeff = p.q0[j];
        for (std::size_t i = 0; i < p.q.size(); ++i) coeff -= lambda[i] * Rational(p.q[i][j]);
        if (coeff < Rational(0)) {  // exact tie at zero stays unset
            sol.x |= 1ULL << j;
            sol.value += coeff;
        }
    }
    return sol;
}

DualCertificate subgradient_ascent(const BinaryLinearProblem& p, const std::vector<double>& lambda0,
                                   const AscentOptions& opt) {
    check_problem(p, lambda0.size());
    if (opt.eta0 <= 0.0) throw std::invalid_argument("subgradient_ascent: step size must be positive");
    if (opt.steps < 1) throw std::invalid_argument("subgradient_ascent: need at least one step");
    for (double l : lambda0)
        if (l < 0.0) throw std::invalid_argument("subgradient_ascent: lambda0 must be nonnegative");

    const std::size_t m = p.q.size();
    std::vector<double> q0(p.n);
    for (int j = 0; j < p.n; ++j) q0[j] = to_double(p.q0[j]);

    // Float evaluation of D(lambda) and the inner argmin, with the tie slack.
    std::vector<double> lam = lambda0;
    std::vector<double> best_lam = lam;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<long long> x_row(m);

    for (int t = 1; t <= opt.steps; ++t) {
        double val = 0.0;
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < m; ++i) {
            val += lam[i] * static_cast<double>(p.c[i]);
            x_row[i] = 0;
        }
        for (int j = 0; j < p.n; ++j) {
            double coeff = q0[j];
            for (std::size_t i = 0; i < m; ++i) coeff -= lam[i] * static_cast<double>(p.q[i][j]);
            if (coeff < -kTieSlack) {
                x |= 1ULL << j;
                val += coeff;
                for (std::size_t i = 0; i < m; ++i) x_row[i] += p.q[i][j];
            }
        }
        if (val > best_val) {
            best_val = val;
            best_lam = lam;
        }
        const double eta = opt.eta0 / std::sqrt(static_cast<double>(t));
        for (std::size_t i = 0; i < m; ++i) {
            const double g = static_cast<double>(p.c[i]) - static_cast<double>(x_row[i]);
            lam[i] = std::max(0.0, lam[i] + eta * g);
        }
    }

    DualCertificate cert;
    cert.lambda.reserve(m);
    for (double l : best_lam) {
        Rational r = rational_from_double(l, opt.certificate_bits);
        if (r < Rational(0)) r = Rational(0);
        cert.lambda.push_back(r);
    }
    InnerSolution inner = inner_minimize(p, cert.lambda);
    cert.x_inner = inner.x;
    cert.dual_value = inner.value;
    cert.inner_feasible = is_feasible(p, inner.x);
    if (cert.inner_feasible) {
        cert.primal_value = objective_value(p, inner.x);
        cert.epsilon = epsilon_gap(p, inner.x, cert.lambda);
    }
    return cert;
}

}  // namespace daqc
