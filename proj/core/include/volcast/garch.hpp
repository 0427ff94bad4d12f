#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace volcast::garch {

/// Model order: q ARCH lags of eps^2 (q >= 1), p lags of sigma^2 (p = 0
/// reduces to ARCH(q)).
struct GarchOrder {
    int p = 1;
    int q = 1;
};

struct GarchParams {
    double alpha0 = 0.0;
    std::vector<double> alphas;  // q entries
    std::vector<double> betas;   // p entries

    GarchOrder order() const { return {static_cast<int>(betas.size()), static_cast<int>(alphas.size())}; }
    double persistence() const;
    double unconditional_variance() const;  // alpha0 / (1 - persistence)
};

void validate(const GarchOrder& order);
void validate(const GarchParams& params);

struct FitOptions {
    int max_iterations = 4000;   // Nelder-Mead iterations per start
    double tolerance = 1e-12;    // simplex function-value spread
};

struct GarchFit {
    GarchParams params;
    double log_likelihood = 0.0;
    bool converged = false;
    int iterations = 0;  // objective evaluations across all starts
};

/// Conditional variances sigma^2_t for t = 0..n-1. Pre-sample sigma^2 and
/// eps^2 are initialized to the mean square of the input.
std::vector<double> conditional_variances(std::span<const double> eps, const GarchParams& params);

/// Gaussian negative log likelihood: 0.5 * sum[ln(2 pi) + ln s2_t + e2_t/s2_t].
double negative_log_likelihood(std::span<const double> eps, const GarchParams& params);

/// Maximum-likelihood fit via Nelder-Mead on an unconstrained
/// reparameterization (log alpha0, softmax over the stationarity simplex),
/// run from three documented starts; the best final point wins.
GarchFit fit_mle(std::span<const double> eps, GarchOrder order, const FitOptions& opts = {});

/// sigma^2_{T+1} given the in-sample recursion.
double forecast_one_step(std::span<const double> eps, const GarchParams& params);

/// One-step-ahead variances for indices [first_forecast, eps.size()), with the
/// pre-sample initialization taken from eps[0, first_forecast) only.
std::vector<double> rolling_one_step(std::span<const double> eps, std::size_t first_forecast,
                                     const GarchParams& params);

/// Simulated mean-deviation series eps_t = sigma_t z_t with standard Gaussian
/// innovations; deterministic for a fixed seed.
std::vector<double> simulate(const GarchParams& params, std::size_t n, std::uint64_t seed);

/// Key-value text form: order.p, order.q, alpha0, alpha[i], beta[j], loglik.
std::string to_text(const GarchFit& fit);

}  // namespace volcast::garch
