#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fst/field.hpp"

namespace fst {

enum class RegularizationKind { none, friedrichs, bandpass };

/// Approximation schemes for the velocity law.
///  - friedrichs: spectral projector onto the ball |k| <= n_cut.
///  - bandpass: Littlewood-Paley blocks -1 ... N only.
struct Regularization {
  RegularizationKind kind = RegularizationKind::none;
  double n_cut = 0.0;
  int bandpass_n = 0;

  static Regularization none() { return {}; }
  static Regularization friedrichs(double n_cut) { return {RegularizationKind::friedrichs, n_cut, 0}; }
  static Regularization bandpass(int n) { return {RegularizationKind::bandpass, 0.0, n}; }

  friend bool operator==(const Regularization&, const Regularization&) = default;
};

/// u = (-Delta)^{-alpha/2} P(rho e_d) with gravity along the last axis.
///
/// Per mode k != 0 the velocity symbol is |k|^{-alpha} (e_d - k k_d / |k|^2),
/// times the regularization filter; the k = 0 mode of rho produces no flow.
/// Immutable after construction.
class StokesOperator {
 public:
  StokesOperator(const Grid& grid, double alpha, Regularization regularization = {});

  const Grid& grid() const { return grid_; }
  double alpha() const { return alpha_; }
  const Regularization& regularization() const { return regularization_; }

  /// Real symbol of velocity component `axis`, filter included.
  const Eigen::ArrayXd& velocity_symbol(int axis) const { return velocity_symbols_[static_cast<std::size_t>(axis)]; }
  /// Filter applied to rho before the solve (ones when unregularized).
  const Eigen::ArrayXd& density_filter() const { return density_filter_; }
  /// Filter applied outermost to the transport right-hand side: A_n in
  /// friedrichs mode, ones otherwise.
  const Eigen::ArrayXd& outer_filter() const { return outer_filter_; }

 private:
  Grid grid_;
  double alpha_;
  Regularization regularization_;
  Eigen::ArrayXd density_filter_;
  Eigen::ArrayXd outer_filter_;
  std::vector<Eigen::ArrayXd> velocity_symbols_;
};

/// Stratified background R(x_d) and its vertical derivative.
struct EquilibriumProfile {
  RealField R;
  RealField dR;

  /// Throws if R varies along any axis other than the last.
  explicit EquilibriumProfile(RealField R);

  static EquilibriumProfile from_function(const Grid& grid, const std::function<double(double)>& profile);
};

VectorField stokes_velocity(const StokesOperator& op, const RealField& rho);

/// grad pi = (Id - P)(rho e_d), so that (-Delta)^{alpha/2} u + grad pi equals
/// rho e_d minus its mean (filtered rho when regularized).
VectorField pressure_gradient(const StokesOperator& op, const RealField& rho);

/// div(rho u) with u = stokes_velocity(op, rho); product dealiased.
RealField advection_term(const StokesOperator& op, const RealField& rho);

/// The two factors of u . grad rho that are linear in d_d rho:
///   term1 = (-Delta)^{-alpha/2} rho * d_d rho
///   term2 = grad rho . grad (-Delta)^{-1-alpha/2} d_d rho
/// each dealiased.
std::pair<RealField, RealField> structure_split(const StokesOperator& op, const RealField& rho);

namespace detail {
/// Velocity components from rho coefficients.
std::vector<Eigen::ArrayXd> velocity_from_coeffs(const StokesOperator& op, const Eigen::ArrayXcd& rho_hat);
/// i k . F(products), dealiased; returns coefficients.
Eigen::ArrayXcd dealiased_divergence(const Grid& grid, const std::vector<Eigen::ArrayXd>& flux);
}  // namespace detail

}  // namespace fst
