#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fst/grid.hpp"

namespace fst {

/// Real samples on the grid, row-major.
struct RealField {
  Grid grid;
  Eigen::ArrayXd values;

  RealField() = default;
  explicit RealField(const Grid& g) : grid(g), values(Eigen::ArrayXd::Zero(g.size())) {}
  RealField(const Grid& g, Eigen::ArrayXd v);
};

/// Fourier coefficients on the full lattice, normalized so that a constant
/// field c has coefficient c at k = 0.
struct SpectralField {
  Grid grid;
  Eigen::ArrayXcd coeffs;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeffs(Eigen::ArrayXcd::Zero(g.size())) {}
  SpectralField(const Grid& g, Eigen::ArrayXcd c);

  std::complex<double> coeff(const Wavevector& k) const { return coeffs(flat_index(grid, k)); }
  std::complex<double>& coeff(const Wavevector& k) { return coeffs(flat_index(grid, k)); }
};

/// d components on a common grid.
using VectorField = std::vector<RealField>;

/// Thrown when a field that must be finite is not; carries the flat index.
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Samples `fn(x)` at every grid point; x is a std::array<double, kMaxDim>.
template <typename Fn>
RealField sample_function(const Grid& grid, Fn&& fn) {
  const Lattice& lat = lattice(grid);
  RealField f(grid);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    std::array<double, kMaxDim> x{lat.x[0](i), lat.x[1](i), lat.x[2](i)};
    f.values(i) = fn(x);
  }
  return f;
}

/// Throws NonFiniteError naming the first non-finite sample.
void require_finite(const RealField& f, const char* context);

void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace fst
