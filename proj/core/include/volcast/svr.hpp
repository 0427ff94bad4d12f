#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace volcast::svr {

struct SvrHyperParams {
    double c = 2.0;         // slack penalty
    double epsilon = 1e-3;  // tube half-width
    double gamma = 1e-3;    // RBF width
};

void validate(const SvrHyperParams& hyper);

/// Kernel-expansion model. Only support vectors (nonzero dual coefficient)
/// are stored.
struct SvrModel {
    std::vector<std::vector<double>> support_inputs;
    std::vector<double> dual_coeffs;  // alpha_i - alpha*_i per support vector
    double bias = 0.0;
    SvrHyperParams hyper;
};

struct GridSpec {
    std::vector<double> c_grid;
    std::vector<double> gamma_grid;
    std::vector<double> epsilon_grid;
    int folds = 20;
};

/// Solver diagnostics, mainly for verification against a reference QP solver.
struct FitReport {
    std::vector<double> dual_coeffs;  // all n coefficients, zeros included
    double dual_objective = 0.0;      // minimization form
    double max_kkt_violation = 0.0;
    int iterations = 0;
    bool converged = false;
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

/// Trains epsilon-insensitive SVR by sequential minimal optimization on the
/// dual, maximal-violating-pair selection.
SvrModel fit(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
             const SvrHyperParams& hyper, FitReport* report = nullptr);

double predict(const SvrModel& model, std::span<const double> x);

/// Minimization-form dual objective at the given coefficients:
///   0.5 b'Kb + epsilon |b|_1 - y'b.
/// Shared by the solver and by reference checks.
double dual_objective(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                      const SvrHyperParams& hyper, std::span<const double> coeffs);

struct GridSearchResult {
    SvrHyperParams best;
    double cv_rmse = 0.0;
};

/// Grid search over the Cartesian product of the grids, scored by mean RMSE
/// over contiguous chronological folds. The seed parameter is accepted for
/// interface stability but unused: folds are never shuffled.
GridSearchResult grid_search_cv(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                                const GridSpec& grid, std::uint64_t seed = 0);

/// Plain-text form: hyperparameters, bias, support vectors as
/// (input..., dual_coeff) rows.
std::string to_text(const SvrModel& model);

}  // namespace volcast::svr
