#include "fst/velocity_law.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fst/fft.hpp"
#include "fst/littlewood_paley.hpp"
#include "fst/operators.hpp"

namespace fst {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

Eigen::ArrayXd regularization_filter(const Grid& grid, const Regularization& reg) {
  const Lattice& lat = lattice(grid);
  switch (reg.kind) {
    case RegularizationKind::none:
      return Eigen::ArrayXd::Ones(static_cast<Eigen::Index>(grid.size()));
    case RegularizationKind::friedrichs:
      if (!(reg.n_cut > 0.0)) throw std::invalid_argument("friedrichs cutoff must be positive");
      return (lat.kabs <= reg.n_cut).cast<double>();
    case RegularizationKind::bandpass: {
      const DyadicFilterBank bank(grid);
      if (reg.bandpass_n < 0 || reg.bandpass_n > bank.j_max()) {
        throw std::invalid_argument("bandpass level must lie in [0, " + std::to_string(bank.j_max()) + "]");
      }
      return bank.partial_sum_symbol(reg.bandpass_n + 1);
    }
  }
  throw std::logic_error("unknown regularization");
}

}  // namespace

StokesOperator::StokesOperator(const Grid& grid, double alpha, Regularization regularization)
    : grid_(grid), alpha_(alpha), regularization_(regularization) {
  if (!(alpha >= 0.0 && alpha <= grid.d)) {
    throw std::invalid_argument("alpha must lie in [0, d]; got " + std::to_string(alpha));
  }
  const Lattice& lat = lattice(grid);
  density_filter_ = regularization_filter(grid, regularization);
  outer_filter_ = regularization.kind == RegularizationKind::friedrichs
                      ? density_filter_
                      : Eigen::ArrayXd::Ones(static_cast<Eigen::Index>(grid.size()));

  const Eigen::ArrayXd fractional = fractional_symbol(grid, -alpha, 0.0);
  const int g = grid.gravity_axis();
  const Eigen::ArrayXd inv_k2 = (lat.k2_odd > 0.0).select(lat.k2_odd.inverse(), 0.0);
  for (int a = 0; a < grid.d; ++a) {
    Eigen::ArrayXd leray = -lat.k_odd[a] * lat.k_odd[g] * inv_k2;
    if (a == g) leray += 1.0;
    Eigen::ArrayXd sym = fractional * leray * density_filter_;
    sym(0) = 0.0;
    velocity_symbols_.push_back(std::move(sym));
  }
}

EquilibriumProfile::EquilibriumProfile(RealField r) : R(std::move(r)) {
  const Grid& grid = R.grid;
  const auto n = static_cast<Eigen::Index>(grid.n);
  const Eigen::Index columns = static_cast<Eigen::Index>(grid.size()) / n;
  // Row-major: the last axis is contiguous, so every column of length n must
  // repeat the first one.
  double worst = 0.0;
  for (Eigen::Index c = 1; c < columns; ++c) {
    worst = std::max(worst, (R.values.segment(c * n, n) - R.values.head(n)).abs().maxCoeff());
  }
  if (worst > 1e-12 * (1.0 + R.values.abs().maxCoeff())) {
    throw std::invalid_argument("equilibrium profile must depend on the last coordinate only");
  }
  dR = partial_derivative(R, grid.gravity_axis());
}

EquilibriumProfile EquilibriumProfile::from_function(const Grid& grid,
                                                     const std::function<double(double)>& profile) {
  const int g = grid.gravity_axis();
  return EquilibriumProfile(sample_function(grid, [&](const auto& x) { return profile(x[g]); }));
}

namespace detail {

std::vector<Eigen::ArrayXd> velocity_from_coeffs(const StokesOperator& op, const Eigen::ArrayXcd& rho_hat) {
  std::vector<Eigen::ArrayXd> u;
  for (int a = 0; a < op.grid().d; ++a) {
    u.push_back(inverse_real(op.grid(), rho_hat * op.velocity_symbol(a)));
  }
  return u;
}

Eigen::ArrayXcd dealiased_divergence(const Grid& grid, const std::vector<Eigen::ArrayXd>& flux) {
  const Lattice& lat = lattice(grid);
  Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (int a = 0; a < grid.d; ++a) acc += kI * lat.k_odd[a] * forward(grid, flux[static_cast<std::size_t>(a)]);
  return acc * lat.dealias_mask;
}

}  // namespace detail

VectorField stokes_velocity(const StokesOperator& op, const RealField& rho) {
  require_same_grid(op.grid(), rho.grid, "stokes_velocity");
  const SpectralField rho_hat = forward_transform(rho);
  VectorField u;
  for (auto& c : detail::velocity_from_coeffs(op, rho_hat.coeffs)) u.emplace_back(rho.grid, std::move(c));
  return u;
}

VectorField pressure_gradient(const StokesOperator& op, const RealField& rho) {
  require_same_grid(op.grid(), rho.grid, "pressure_gradient");
  const Grid& grid = rho.grid;
  const Lattice& lat = lattice(grid);
  const int g = grid.gravity_axis();
  const Eigen::ArrayXcd rho_hat = forward_transform(rho).coeffs * op.density_filter();
  const Eigen::ArrayXd inv_k2 = (lat.k2_odd > 0.0).select(lat.k2_odd.inverse(), 0.0);
  VectorField out;
  for (int a = 0; a < grid.d; ++a) {
    Eigen::ArrayXcd ga = rho_hat * (lat.k_odd[a] * lat.k_odd[g] * inv_k2);
    // Nyquist modes with k_odd = 0 are untouched by P; any k_d-free mode of
    // rho e_d is already divergence-free.
    ga(0) = 0.0;
    out.emplace_back(grid, detail::inverse_real(grid, ga));
  }
  return out;
}

RealField advection_term(const StokesOperator& op, const RealField& rho) {
  require_same_grid(op.grid(), rho.grid, "advection_term");
  const SpectralField rho_hat = forward_transform(rho);
  std::vector<Eigen::ArrayXd> flux = detail::velocity_from_coeffs(op, rho_hat.coeffs);
  for (auto& c : flux) c *= rho.values;
  return RealField(rho.grid, detail::inverse_real(rho.grid, detail::dealiased_divergence(rho.grid, flux)));
}

std::pair<RealField, RealField> structure_split(const StokesOperator& op, const RealField& rho) {
  require_same_grid(op.grid(), rho.grid, "structure_split");
  const Grid& grid = rho.grid;
  const Lattice& lat = lattice(grid);
  const int g = grid.gravity_axis();
  const Eigen::ArrayXcd rho_hat = forward_transform(rho).coeffs;
  const Eigen::ArrayXcd filtered = rho_hat * op.density_filter();

  const Eigen::ArrayXd d_rho = detail::inverse_real(grid, kI * lat.k_odd[g] * rho_hat);
  const Eigen::ArrayXd smoothed = detail::inverse_real(grid, filtered * fractional_symbol(grid, -op.alpha()));
  const auto dealiased = [&](const Eigen::ArrayXd& values) {
    return RealField(grid, detail::inverse_real(grid, detail::forward(grid, values) * lat.dealias_mask));
  };

  // (-Delta)^{-1-alpha/2} d_d rho, then its gradient dotted with grad rho.
  const Eigen::ArrayXd inv_k2 = (lat.k2_odd > 0.0).select(lat.k2_odd.inverse(), 0.0);
  const Eigen::ArrayXcd potential =
      filtered * (kI * lat.k_odd[g]) * inv_k2 * fractional_symbol(grid, -op.alpha());
  Eigen::ArrayXd dot = Eigen::ArrayXd::Zero(rho.values.size());
  for (int a = 0; a < grid.d; ++a) {
    const Eigen::ArrayXd grad_rho = detail::inverse_real(grid, kI * lat.k_odd[a] * rho_hat);
    const Eigen::ArrayXd grad_pot = detail::inverse_real(grid, kI * lat.k_odd[a] * potential);
    dot += grad_rho * grad_pot;
  }
  return {dealiased(smoothed * d_rho), dealiased(dot)};
}

}  // namespace fst
