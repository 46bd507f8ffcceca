#pragma once

#include <span>

namespace tdoslab {

double mean(std::span<const double> xs);

/// Sample standard deviation (n-1 denominator); 0 for fewer than 2 points.
double sample_std(std::span<const double> xs);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// Student-t CDF with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// Quantile t with P(T <= t) = p, solved by bisection on the CDF.
/// Good to ~1e-10 for df >= 1.
double student_t_quantile(double p, double df);

}  // namespace tdoslab
