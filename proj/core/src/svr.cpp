#include "volcast/svr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "volcast/errors.hpp"

namespace volcast::svr {

namespace {

constexpr double kGapTolerance = 1e-6;
constexpr int kMaxIterations = 500000;
constexpr double kSupportCutoff = 1e-12;

void check_inputs(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys) {
    if (xs.empty()) {
        throw Error::data("DegenerateInput", "SVR fit needs at least one training point");
    }
    if (xs.size() != ys.size()) {
        throw Error::data("LengthMismatch", "SVR fit: xs and ys differ in length");
    }
    const std::size_t dim = xs.front().size();
    for (const auto& x : xs) {
        if (x.size() != dim) {
            throw Error::data("DimensionMismatch", "SVR fit: inconsistent input dimensions");
        }
        for (double v : x) {
            if (!std::isfinite(v)) throw Error::numeric("NonFiniteTarget", "SVR fit: non-finite input");
        }
    }
    for (double y : ys) {
        if (!std::isfinite(y)) throw Error::numeric("NonFiniteTarget", "SVR fit: non-finite target");
    }
}

std::vector<double> kernel_matrix(const std::vector<std::vector<double>>& xs, double gamma) {
    const std::size_t n = xs.size();
    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        k[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rbf_kernel(xs[i], xs[j], gamma);
            k[i * n + j] = v;
            k[j * n + i] = v;
        }
    }
    return k;
}

}  // namespace

void validate(const SvrHyperParams& hyper) {
    if (!(hyper.c > 0.0) || !(hyper.gamma > 0.0) || hyper.epsilon < 0.0) {
        throw Error::config("InvalidHyperParams", "SVR needs c > 0, gamma > 0, epsilon >= 0");
    }
}

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    if (a.size() != b.size()) {
        throw Error::data("DimensionMismatch", "rbf_kernel: input dimensions differ");
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

// ---------------------------------------------------------------------------
// SMO over the 2n-variable dual. Variables t < n are alpha (raises the
// prediction), t >= n are alpha-star (lowers it); sign(t) = +1 / -1. The
// dual coefficient of point i is beta_i = a[i] - a[n+i].
//
// Gradient: G_t = sign(t) * (K beta)_{i(t)} + epsilon - sign(t) * y_{i(t)}.
// Optimality: max_{t in I_up} -s_t G_t  <=  min_{t in I_low} -s_t G_t + tol.
// ---------------------------------------------------------------------------
SvrModel fit(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
             const SvrHyperParams& hyper, FitReport* report) {
    validate(hyper);
    check_inputs(xs, ys);

    const std::size_t n = xs.size();
    const double c_bound = hyper.c;
    const double eps_tube = hyper.epsilon;
    const auto kmat = kernel_matrix(xs, hyper.gamma);
    const auto kval = [&](std::size_t i, std::size_t j) { return kmat[i * n + j]; };

    std::vector<double> a(2 * n, 0.0);   // SMO variables
    std::vector<double> kb(n, 0.0);      // (K beta)_i, maintained incrementally
    const auto sign_of = [&](std::size_t t) { return t < n ? 1.0 : -1.0; };
    const auto point_of = [&](std::size_t t) { return t < n ? t : t - n; };
    const auto grad = [&](std::size_t t) {
        const double s = sign_of(t);
        const std::size_t i = point_of(t);
        return s * kb[i] + eps_tube - s * ys[i];
    };

    int iterations = 0;
    bool converged = false;
    double final_gap = 0.0;
    while (iterations < kMaxIterations) {
        // Maximal violating pair.
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        std::size_t i_up = 2 * n, i_low = 2 * n;
        for (std::size_t t = 0; t < 2 * n; ++t) {
            const double s = sign_of(t);
            const double v = -s * grad(t);
            const bool can_up = (s > 0.0 && a[t] < c_bound) || (s < 0.0 && a[t] > 0.0);
            const bool can_low = (s < 0.0 && a[t] < c_bound) || (s > 0.0 && a[t] > 0.0);
            if (can_up && v > m_up) {
                m_up = v;
                i_up = t;
            }
            if (can_low && v < m_low) {
                m_low = v;
                i_low = t;
            }
        }
        final_gap = m_up - m_low;
        if (i_up == 2 * n || i_low == 2 * n || final_gap <= kGapTolerance) {
            converged = true;
            break;
        }
        ++iterations;

        const std::size_t ti = i_up, tj = i_low;
        const std::size_t pi = point_of(ti), pj = point_of(tj);
        const double si = sign_of(ti), sj = sign_of(tj);

        // Move eta >= 0 along d = si*e_i - sj*e_j, which keeps the equality
        // constraint and increases a[ti] toward its headroom.
        double h = kval(pi, pi) + kval(pj, pj) - 2.0 * kval(pi, pj);
        h = std::max(h, 1e-12);
        double eta = final_gap / h;
        const double room_i = si > 0.0 ? c_bound - a[ti] : a[ti];
        const double room_j = sj > 0.0 ? a[tj] : c_bound - a[tj];
        eta = std::min(eta, std::min(room_i, room_j));

        a[ti] += si * eta;
        a[tj] -= sj * eta;
        a[ti] = std::clamp(a[ti], 0.0, c_bound);
        a[tj] = std::clamp(a[tj], 0.0, c_bound);

        // beta_{pi} += eta, beta_{pj} -= eta.
        if (pi == pj) continue;  // net-zero beta change between a pair of twins
        for (std::size_t r = 0; r < n; ++r) {
            kb[r] += eta * (kval(r, pi) - kval(r, pj));
        }
    }

    // Bias from the optimality interval midpoint (equals the free-variable
    // multiplier when free variables exist).
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < 2 * n; ++t) {
        const double s = sign_of(t);
        const double v = -s * grad(t);
        if ((s > 0.0 && a[t] < c_bound) || (s < 0.0 && a[t] > 0.0)) m_up = std::max(m_up, v);
        if ((s < 0.0 && a[t] < c_bound) || (s > 0.0 && a[t] > 0.0)) m_low = std::min(m_low, v);
    }
    double bias = 0.0;
    if (std::isfinite(m_up) && std::isfinite(m_low)) {
        bias = 0.5 * (m_up + m_low);
    } else if (std::isfinite(m_up)) {
        bias = m_up;
    } else if (std::isfinite(m_low)) {
        bias = m_low;
    }

    std::vector<double> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = a[i] - a[n + i];

    SvrModel model;
    model.hyper = hyper;
    model.bias = bias;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(coeffs[i]) > kSupportCutoff) {
            model.support_inputs.push_back(xs[i]);
            model.dual_coeffs.push_back(coeffs[i]);
        }
    }

    if (report) {
        report->dual_coeffs = coeffs;
        report->dual_objective = dual_objective(xs, ys, hyper, coeffs);
        report->iterations = iterations;
        report->converged = converged;
        report->max_kkt_violation = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = kb[i] + bias;
            const double above = ys[i] - f - eps_tube;  // > 0: point above the tube
            const double below = f - ys[i] - eps_tube;  // > 0: point below the tube
            double violation = 0.0;
            const double b = coeffs[i];
            if (std::fabs(b) <= kSupportCutoff) {
                violation = std::max({0.0, above, below});
            } else if (b > 0.0 && b < c_bound - kSupportCutoff) {
                violation = std::fabs(above);
            } else if (b >= c_bound - kSupportCutoff) {
                violation = std::max(0.0, -above);
            } else if (b < 0.0 && b > -c_bound + kSupportCutoff) {
                violation = std::fabs(below);
            } else {
                violation = std::max(0.0, -below);
            }
            report->max_kkt_violation = std::max(report->max_kkt_violation, violation);
        }
    }
    return model;
}

double predict(const SvrModel& model, std::span<const double> x) {
    double acc = model.bias;
    for (std::size_t i = 0; i < model.support_inputs.size(); ++i) {
        acc += model.dual_coeffs[i] * rbf_kernel(model.support_inputs[i], x, model.hyper.gamma);
    }
    return acc;
}

double dual_objective(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                      const SvrHyperParams& hyper, std::span<const double> coeffs) {
    const std::size_t n = xs.size();
    double quad = 0.0, l1 = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (coeffs[j] == 0.0) continue;
            quad += coeffs[i] * coeffs[j] * rbf_kernel(xs[i], xs[j], hyper.gamma);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        l1 += std::fabs(coeffs[i]);
        lin += ys[i] * coeffs[i];
    }
    return 0.5 * quad + hyper.epsilon * l1 - lin;
}

GridSearchResult grid_search_cv(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                                const GridSpec& grid, std::uint64_t /*seed*/) {
    check_inputs(xs, ys);
    if (grid.c_grid.empty() || grid.gamma_grid.empty() || grid.epsilon_grid.empty()) {
        throw Error::config("InvalidGrid", "grid search: all grids must be nonempty");
    }
    if (grid.folds < 2) {
        throw Error::config("InvalidGrid", "grid search: need at least 2 folds");
    }
    const std::size_t n = xs.size();
    if (n < static_cast<std::size_t>(grid.folds)) {
        throw Error::data("DegenerateInput", "grid search: fewer data points than folds");
    }

    // Contiguous chronological blocks; the first (n mod folds) blocks get one
    // extra point.
    const auto folds = static_cast<std::size_t>(grid.folds);
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    const std::size_t base = n / folds, extra = n % folds;
    std::size_t start = 0;
    for (std::size_t k = 0; k < folds; ++k) {
        const std::size_t len = base + (k < extra ? 1 : 0);
        blocks.emplace_back(start, start + len);
        start += len;
    }

    GridSearchResult result;
    double best_score = std::numeric_limits<double>::infinity();
    bool first = true;
    for (double c : grid.c_grid) {
        for (double gamma : grid.gamma_grid) {
            for (double epsilon : grid.epsilon_grid) {
                const SvrHyperParams hyper{c, epsilon, gamma};
                double sum_rmse = 0.0;
                for (const auto& [lo, hi] : blocks) {
                    std::vector<std::vector<double>> train_x;
                    std::vector<double> train_y;
                    train_x.reserve(n - (hi - lo));
                    train_y.reserve(n - (hi - lo));
                    for (std::size_t i = 0; i < n; ++i) {
                        if (i < lo || i >= hi) {
                            train_x.push_back(xs[i]);
                            train_y.push_back(ys[i]);
                        }
                    }
                    const auto model = fit(train_x, train_y, hyper);
                    double acc = 0.0;
                    for (std::size_t i = lo; i < hi; ++i) {
                        const double d = predict(model, xs[i]) - ys[i];
                        acc += d * d;
                    }
                    sum_rmse += std::sqrt(acc / static_cast<double>(hi - lo));
                }
                const double score = sum_rmse / static_cast<double>(folds);
                if (first || score < best_score) {
                    first = false;
                    best_score = score;
                    result.best = hyper;
                    result.cv_rmse = score;
                }
            }
        }
    }
    return result;
}

std::string to_text(const SvrModel& model) {
    std::ostringstream out;
    char buf[64];
    out << "kernel = rbf\n";
    std::snprintf(buf, sizeof(buf), "%.12g", model.hyper.c);
    out << "c = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.12g", model.hyper.epsilon);
    out << "epsilon = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.12g", model.hyper.gamma);
    out << "gamma = " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.12g", model.bias);
    out << "bias = " << buf << "\n";
    out << "support_vectors = " << model.support_inputs.size() << "\n";
    for (std::size_t i = 0; i < model.support_inputs.size(); ++i) {
        for (double v : model.support_inputs[i]) {
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            out << buf << " ";
        }
        std::snprintf(buf, sizeof(buf), "%.12g", model.dual_coeffs[i]);
        out << buf << "\n";
    }
    return out.str();
}

}  // namespace volcast::svr
