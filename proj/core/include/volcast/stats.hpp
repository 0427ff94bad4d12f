#pragma once

namespace volcast::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
/// Absolute error below 1e-12 over the tested domain.
double regularized_incomplete_beta(double x, double a, double b);

/// Upper tail P(F > x) of the F distribution with (d1, d2) degrees of freedom.
double f_upper_tail(double x, int d1, int d2);

}  // namespace volcast::stats
