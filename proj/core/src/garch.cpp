#include "volcast/garch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "volcast/errors.hpp"
#include "volcast/rng.hpp"

namespace volcast::garch {

namespace {

constexpr double kStationarityMargin = 1e-6;
constexpr double kLog2Pi = 1.8378770664093454836;

double mean_square(std::span<const double> xs) {
    double acc = 0.0;
    for (double x : xs) acc += x * x;
    return xs.empty() ? 0.0 : acc / static_cast<double>(xs.size());
}

// sigma^2 recursion with explicit pre-sample value for indices before the
// start of eps.
std::vector<double> variances_with_presample(std::span<const double> eps, const GarchParams& params,
                                             double presample) {
    const auto order = params.order();
    const std::size_t n = eps.size();
    std::vector<double> s2(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = params.alpha0;
        for (int i = 1; i <= order.q; ++i) {
            const auto lag = static_cast<std::ptrdiff_t>(t) - i;
            const double e2 = lag >= 0 ? eps[static_cast<std::size_t>(lag)] * eps[static_cast<std::size_t>(lag)]
                                       : presample;
            v += params.alphas[static_cast<std::size_t>(i - 1)] * e2;
        }
        for (int j = 1; j <= order.p; ++j) {
            const auto lag = static_cast<std::ptrdiff_t>(t) - j;
            const double sp = lag >= 0 ? s2[static_cast<std::size_t>(lag)] : presample;
            v += params.betas[static_cast<std::size_t>(j - 1)] * sp;
        }
        s2[t] = v;
    }
    return s2;
}

// The pre-sample initialization covers every missing lag, so any nonempty
// series is well defined.
void check_length(std::span<const double> eps, const GarchOrder&) {
    if (eps.empty()) {
        throw Error::data("SeriesTooShort", "need at least one observation");
    }
}

// ---------------------------------------------------------------------------
// Unconstrained reparameterization.
//
// theta[0]        -> alpha0 = exp(theta[0])
// theta[1..q+p]   -> (alphas, betas) = (1 - margin) * softmax-with-slack,
//                    w_k = exp(u_k) / (1 + sum_j exp(u_j))
//
// Every theta maps to a valid parameter set, so the optimizer never leaves
// the feasible region.
// ---------------------------------------------------------------------------

GarchParams params_from_theta(const std::vector<double>& theta, const GarchOrder& order) {
    GarchParams params;
    params.alpha0 = std::exp(theta[0]);
    const int k = order.p + order.q;
    double m = 0.0;
    for (int i = 0; i < k; ++i) m = std::max(m, theta[static_cast<std::size_t>(i + 1)]);
    double denom = std::exp(-m);
    for (int i = 0; i < k; ++i) denom += std::exp(theta[static_cast<std::size_t>(i + 1)] - m);
    const double scale = (1.0 - kStationarityMargin) / denom;
    params.alphas.resize(static_cast<std::size_t>(order.q));
    params.betas.resize(static_cast<std::size_t>(order.p));
    for (int i = 0; i < order.q; ++i) {
        params.alphas[static_cast<std::size_t>(i)] = scale * std::exp(theta[static_cast<std::size_t>(i + 1)] - m);
    }
    for (int j = 0; j < order.p; ++j) {
        params.betas[static_cast<std::size_t>(j)] =
            scale * std::exp(theta[static_cast<std::size_t>(order.q + j + 1)] - m);
    }
    return params;
}

std::vector<double> theta_from_params(const GarchParams& params) {
    const auto order = params.order();
    std::vector<double> theta(static_cast<std::size_t>(1 + order.p + order.q));
    theta[0] = std::log(params.alpha0);
    double r = 0.0;
    auto weight = [&](double a) { return a / (1.0 - kStationarityMargin); };
    for (double a : params.alphas) r += weight(a);
    for (double b : params.betas) r += weight(b);
    const double log_slack = std::log1p(-r);
    for (int i = 0; i < order.q; ++i) {
        theta[static_cast<std::size_t>(i + 1)] = std::log(weight(params.alphas[static_cast<std::size_t>(i)])) - log_slack;
    }
    for (int j = 0; j < order.p; ++j) {
        theta[static_cast<std::size_t>(order.q + j + 1)] =
            std::log(weight(params.betas[static_cast<std::size_t>(j)])) - log_slack;
    }
    return theta;
}

// ---------------------------------------------------------------------------
// Nelder-Mead, deterministic. Returns (best point, best value, converged,
// evaluations).
// ---------------------------------------------------------------------------

struct NmResult {
    std::vector<double> x;
    double fx = 0.0;
    bool converged = false;
    int evaluations = 0;
};

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                     int max_iterations, double tolerance) {
    const std::size_t dim = x0.size();
    const double step = 0.5;

    std::vector<std::vector<double>> pts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step;

    NmResult result;
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        fv[i] = f(pts[i]);
        ++result.evaluations;
    }

    std::vector<std::size_t> idx(dim + 1);
    for (int iter = 0; iter < max_iterations; ++iter) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = idx[0], worst = idx[dim], second_worst = idx[dim - 1];

        if (std::fabs(fv[worst] - fv[best]) < tolerance * (std::fabs(fv[best]) + tolerance)) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            std::vector<double> p(dim);
            for (std::size_t d = 0; d < dim; ++d) p[d] = centroid[d] + coeff * (pts[worst][d] - centroid[d]);
            return p;
        };

        auto reflected = blend(-1.0);
        const double fr = f(reflected);
        ++result.evaluations;
        if (fr < fv[best]) {
            auto expanded = blend(-2.0);
            const double fe = f(expanded);
            ++result.evaluations;
            if (fe < fr) {
                pts[worst] = std::move(expanded);
                fv[worst] = fe;
            } else {
                pts[worst] = std::move(reflected);
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            pts[worst] = std::move(reflected);
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            auto contracted = blend(outside ? -0.5 : 0.5);
            const double fc = f(contracted);
            ++result.evaluations;
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = std::move(contracted);
                fv[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d) {
                        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
                    }
                    fv[i] = f(pts[i]);
                    ++result.evaluations;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= dim; ++i) {
        if (fv[i] < fv[best]) best = i;
    }
    result.x = pts[best];
    result.fx = fv[best];
    return result;
}

}  // namespace

double GarchParams::persistence() const {
    return std::accumulate(alphas.begin(), alphas.end(), 0.0) + std::accumulate(betas.begin(), betas.end(), 0.0);
}

double GarchParams::unconditional_variance() const { return alpha0 / (1.0 - persistence()); }

void validate(const GarchOrder& order) {
    if (order.q < 1 || order.p < 0) {
        throw Error::config("InvalidOrder", "GARCH order needs q >= 1 and p >= 0");
    }
}

void validate(const GarchParams& params) {
    validate(params.order());
    if (!(params.alpha0 > 0.0) || !std::isfinite(params.alpha0)) {
        throw Error::numeric("InvalidParams", "alpha0 must be positive and finite");
    }
    for (double a : params.alphas) {
        if (a < 0.0 || !std::isfinite(a)) throw Error::numeric("InvalidParams", "alpha coefficients must be >= 0");
    }
    for (double b : params.betas) {
        if (b < 0.0 || !std::isfinite(b)) throw Error::numeric("InvalidParams", "beta coefficients must be >= 0");
    }
    if (params.persistence() > 1.0 - kStationarityMargin + 1e-12) {
        throw Error::numeric("InvalidParams", "persistence must stay below 1 - 1e-6 (covariance stationarity)");
    }
}

std::vector<double> conditional_variances(std::span<const double> eps, const GarchParams& params) {
    validate(params);
    check_length(eps, params.order());
    return variances_with_presample(eps, params, mean_square(eps));
}

double negative_log_likelihood(std::span<const double> eps, const GarchParams& params) {
    const auto s2 = conditional_variances(eps, params);
    double nll = 0.0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        if (!(s2[t] > 0.0) || !std::isfinite(s2[t])) {
            throw Error::numeric("NonFiniteLikelihood", "conditional variance left the positive domain");
        }
        nll += kLog2Pi + std::log(s2[t]) + eps[t] * eps[t] / s2[t];
    }
    return 0.5 * nll;
}

GarchFit fit_mle(std::span<const double> eps, GarchOrder order, const FitOptions& opts) {
    validate(order);
    const auto min_len = static_cast<std::size_t>(10 * (order.p + order.q));
    if (eps.size() < min_len) {
        throw Error::data("SeriesTooShort", "MLE fit needs at least 10*(p+q) = " + std::to_string(min_len) +
                                                " observations, got " + std::to_string(eps.size()));
    }

    const double ms = mean_square(eps);
    if (!(ms > 0.0)) {
        throw Error::numeric("OptimizerDiverged", "input series has zero mean square; variance model is degenerate");
    }

    auto objective = [&](const std::vector<double>& theta) {
        const auto params = params_from_theta(theta, order);
        double nll;
        try {
            nll = negative_log_likelihood(eps, params);
        } catch (const Error&) {
            return 1e30;
        }
        return std::isfinite(nll) ? nll : 1e30;
    };

    // Documented starts: persistence split (sum alphas, sum betas) of
    // (0.05, 0.85), (0.10, 0.40), (0.05, 0.05); alpha0 always targets the
    // sample mean square as the unconditional variance. For p = 0 the beta
    // mass moves into the alphas.
    std::vector<std::pair<double, double>> starts = {{0.05, 0.85}, {0.10, 0.40}, {0.05, 0.05}};
    GarchFit fit;
    double best_nll = std::numeric_limits<double>::infinity();
    for (const auto& [alpha_mass, beta_mass] : starts) {
        GarchParams start;
        const double a_mass = order.p == 0 ? alpha_mass + beta_mass * 0.5 : alpha_mass;
        const double b_mass = order.p == 0 ? 0.0 : beta_mass;
        start.alphas.assign(static_cast<std::size_t>(order.q), a_mass / order.q);
        if (order.p > 0) start.betas.assign(static_cast<std::size_t>(order.p), b_mass / order.p);
        start.alpha0 = ms * (1.0 - a_mass - b_mass);

        const auto run = nelder_mead(objective, theta_from_params(start), opts.max_iterations, opts.tolerance);
        fit.iterations += run.evaluations;
        if (run.fx < best_nll) {
            best_nll = run.fx;
            fit.params = params_from_theta(run.x, order);
            fit.converged = run.converged;
        }
    }

    if (!std::isfinite(best_nll) || best_nll >= 1e30) {
        throw Error::numeric("OptimizerDiverged", "likelihood optimization failed to find a finite optimum");
    }
    fit.log_likelihood = -best_nll;
    return fit;
}

double forecast_one_step(std::span<const double> eps, const GarchParams& params) {
    const auto s2 = conditional_variances(eps, params);
    const auto order = params.order();
    const double presample = mean_square(eps);
    const auto n = static_cast<std::ptrdiff_t>(eps.size());
    double v = params.alpha0;
    for (int i = 1; i <= order.q; ++i) {
        const auto lag = n - i;
        const double e2 = lag >= 0 ? eps[static_cast<std::size_t>(lag)] * eps[static_cast<std::size_t>(lag)]
                                   : presample;
        v += params.alphas[static_cast<std::size_t>(i - 1)] * e2;
    }
    for (int j = 1; j <= order.p; ++j) {
        const auto lag = n - j;
        const double sp = lag >= 0 ? s2[static_cast<std::size_t>(lag)] : presample;
        v += params.betas[static_cast<std::size_t>(j - 1)] * sp;
    }
    return v;
}

std::vector<double> rolling_one_step(std::span<const double> eps, std::size_t first_forecast,
                                     const GarchParams& params) {
    validate(params);
    check_length(eps.subspan(0, first_forecast), params.order());
    if (first_forecast >= eps.size()) {
        throw Error::data("DegenerateSplit", "no observations left to forecast");
    }
    const double presample = mean_square(eps.subspan(0, first_forecast));
    const auto s2 = variances_with_presample(eps, params, presample);
    return {s2.begin() + static_cast<std::ptrdiff_t>(first_forecast), s2.end()};
}

std::vector<double> simulate(const GarchParams& params, std::size_t n, std::uint64_t seed) {
    validate(params);
    if (n == 0) {
        throw Error::config("InvalidCount", "simulate needs n >= 1");
    }
    const auto order = params.order();
    const double uncond = params.unconditional_variance();

    Rng rng(seed);
    std::vector<double> eps(n);
    std::vector<double> s2(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = params.alpha0;
        for (int i = 1; i <= order.q; ++i) {
            const auto lag = static_cast<std::ptrdiff_t>(t) - i;
            const double e2 = lag >= 0 ? eps[static_cast<std::size_t>(lag)] * eps[static_cast<std::size_t>(lag)]
                                       : uncond;
            v += params.alphas[static_cast<std::size_t>(i - 1)] * e2;
        }
        for (int j = 1; j <= order.p; ++j) {
            const auto lag = static_cast<std::ptrdiff_t>(t) - j;
            const double sp = lag >= 0 ? s2[static_cast<std::size_t>(lag)] : uncond;
            v += params.betas[static_cast<std::size_t>(j - 1)] * sp;
        }
        s2[t] = v;
        eps[t] = std::sqrt(v) * rng.gaussian();
    }
    return eps;
}

std::string to_text(const GarchFit& fit) {
    std::ostringstream out;
    const auto order = fit.params.order();
    char buf[64];
    out << "order.p = " << order.p << "\n";
    out << "order.q = " << order.q << "\n";
    std::snprintf(buf, sizeof(buf), "%.12g", fit.params.alpha0);
    out << "alpha0 = " << buf << "\n";
    for (int i = 0; i < order.q; ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g", fit.params.alphas[static_cast<std::size_t>(i)]);
        out << "alpha[" << (i + 1) << "] = " << buf << "\n";
    }
    for (int j = 0; j < order.p; ++j) {
        std::snprintf(buf, sizeof(buf), "%.12g", fit.params.betas[static_cast<std::size_t>(j)]);
        out << "beta[" << (j + 1) << "] = " << buf << "\n";
    }
    std::snprintf(buf, sizeof(buf), "%.12g", fit.log_likelihood);
    out << "loglik = " << buf << "\n";
    return out.str();
}

}  // namespace volcast::garch
