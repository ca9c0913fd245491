#include "fst/operators.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "fst/fft.hpp"

namespace fst {

void require_vector_field(const VectorField& u, const char* context) {
  if (u.empty()) throw std::invalid_argument(std::string(context) + ": empty vector field");
  const Grid& grid = u.front().grid;
  if (static_cast<int>(u.size()) != grid.d) {
    throw std::invalid_argument(std::string(context) + ": expected " + std::to_string(grid.d) +
                                " components, got " + std::to_string(u.size()));
  }
  for (const auto& c : u) require_same_grid(grid, c.grid, context);
}

Eigen::ArrayXd fractional_symbol(const Grid& grid, double s, double zero_mode) {
  const Lattice& lat = lattice(grid);
  Eigen::ArrayXd symbol = lat.k2.pow(s / 2.0);
  symbol(0) = zero_mode;
  return symbol;
}

RealField fractional_laplacian(const RealField& f, double s) {
  if (std::abs(s) > f.grid.d) {
    std::cerr << "warning: fractional order " << s << " outside [-d, d]\n";
  }
  SpectralField fh = forward_transform(f);
  fh.coeffs *= fractional_symbol(f.grid, s, s == 0.0 ? 1.0 : 0.0);
  return inverse_transform(fh);
}

VectorField leray_project(const VectorField& u) {
  require_vector_field(u, "leray_project");
  const Grid& grid = u.front().grid;
  const Lattice& lat = lattice(grid);
  const int d = grid.d;

  std::vector<Eigen::ArrayXcd> uh;
  for (const auto& c : u) uh.push_back(forward_transform(c).coeffs);

  // k . u_hat / |k|^2 with Nyquist-safe wavenumbers, so the projector stays
  // Hermitian and matches divergence(). Modes with k_odd = 0 pass through.
  Eigen::ArrayXcd kdotu = Eigen::ArrayXcd::Zero(uh.front().size());
  for (int a = 0; a < d; ++a) kdotu += lat.k_odd[a] * uh[a];
  const Eigen::ArrayXd inv_k2 = (lat.k2_odd > 0.0).select(lat.k2_odd.inverse(), 0.0);
  kdotu *= inv_k2;

  VectorField out;
  for (int a = 0; a < d; ++a) {
    Eigen::ArrayXcd pa = uh[a] - lat.k_odd[a] * kdotu;
    out.emplace_back(grid, detail::inverse_real(grid, pa));
  }
  return out;
}

RealField partial_derivative(const RealField& f, int axis) {
  if (axis < 0 || axis >= f.grid.d) {
    throw std::invalid_argument("partial_derivative: axis " + std::to_string(axis) + " out of range");
  }
  SpectralField fh = forward_transform(f);
  fh.coeffs *= std::complex<double>(0.0, 1.0) * lattice(f.grid).k_odd[axis];
  return inverse_transform(fh);
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  out.coeffs *= lattice(f.grid).dealias_mask;
  return out;
}

VectorField gradient(const RealField& f) {
  const Lattice& lat = lattice(f.grid);
  const SpectralField fh = forward_transform(f);
  VectorField out;
  for (int a = 0; a < f.grid.d; ++a) {
    Eigen::ArrayXcd da = std::complex<double>(0.0, 1.0) * lat.k_odd[a] * fh.coeffs;
    out.emplace_back(f.grid, detail::inverse_real(f.grid, da));
  }
  return out;
}

RealField divergence(const VectorField& u) {
  require_vector_field(u, "divergence");
  const Grid& grid = u.front().grid;
  const Lattice& lat = lattice(grid);
  Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (int a = 0; a < grid.d; ++a) {
    acc += std::complex<double>(0.0, 1.0) * lat.k_odd[a] * forward_transform(u[a]).coeffs;
  }
  return RealField(grid, detail::inverse_real(grid, acc));
}

}  // namespace fst
