#pragma once

#include <limits>

#include <Eigen/Core>

#include "fst/field.hpp"

namespace fst {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Pairwise (cascade) summation; the result does not depend on how callers
/// partition the work.
double pairwise_sum(const Eigen::Ref<const Eigen::ArrayXd>& values);

double mean(const RealField& f);

/// Rectangle-rule L^p norm over [0, 2pi)^d; p = infinity is the grid max.
double lp_norm(const RealField& f, double p);

/// Max over components of the component L^p norms.
double lp_norm(const VectorField& u, double p);

/// (2pi)^{d/2} * l2 norm of the coefficients; equals the quadrature L^2 norm.
double coefficient_l2_norm(const SpectralField& f);

/// max_x |grad f(x)| (Euclidean).
double gradient_linf(const RealField& f);

/// max_x of the Frobenius norm of the Jacobian of u.
double jacobian_linf(const VectorField& u);

}  // namespace fst
