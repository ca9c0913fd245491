#include "fst/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fst/operators.hpp"

namespace fst {

double pairwise_sum(const Eigen::Ref<const Eigen::ArrayXd>& values) {
  constexpr Eigen::Index kBase = 64;
  const Eigen::Index n = values.size();
  if (n <= kBase) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) acc += values(i);
    return acc;
  }
  const Eigen::Index half = n / 2;
  return pairwise_sum(values.head(half)) + pairwise_sum(values.tail(n - half));
}

double mean(const RealField& f) {
  return pairwise_sum(f.values) / static_cast<double>(f.values.size());
}

double lp_norm(const RealField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) return f.values.abs().maxCoeff();
  const double h = f.grid.cell_volume();
  if (p == 2.0) return std::sqrt(h * pairwise_sum(f.values.square()));
  // Scale by the max to keep large p from overflowing.
  const double peak = f.values.abs().maxCoeff();
  if (peak == 0.0) return 0.0;
  const Eigen::ArrayXd scaled = (f.values.abs() / peak).pow(p);
  return peak * std::pow(h * pairwise_sum(scaled), 1.0 / p);
}

double lp_norm(const VectorField& u, double p) {
  double worst = 0.0;
  for (const auto& c : u) worst = std::max(worst, lp_norm(c, p));
  return worst;
}

double coefficient_l2_norm(const SpectralField& f) {
  return std::sqrt(f.grid.volume() * pairwise_sum(f.coeffs.abs2()));
}

double gradient_linf(const RealField& f) {
  const VectorField g = gradient(f);
  Eigen::ArrayXd mag2 = Eigen::ArrayXd::Zero(f.values.size());
  for (const auto& c : g) mag2 += c.values.square();
  return std::sqrt(mag2.maxCoeff());
}

double jacobian_linf(const VectorField& u) {
  require_vector_field(u, "jacobian_linf");
  Eigen::ArrayXd frob2 = Eigen::ArrayXd::Zero(u.front().values.size());
  for (const auto& c : u) {
    for (const auto& g : gradient(c)) frob2 += g.values.square();
  }
  return std::sqrt(frob2.maxCoeff());
}

}  // namespace fst
