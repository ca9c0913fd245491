#pragma once

#include <Eigen/Core>

#include "fst/field.hpp"

namespace fst {

/// Forward DFT normalized by 1/N. Rejects non-finite input with the offending
/// grid index.
SpectralField forward_transform(const RealField& f);

/// Inverse DFT; returns the real part (exact for Hermitian coefficients).
RealField inverse_transform(const SpectralField& f);

/// Inverse DFT keeping the imaginary part.
Eigen::ArrayXcd inverse_transform_complex(const SpectralField& f);

namespace detail {
// Raw transforms for hot loops; no finiteness check.
Eigen::ArrayXcd forward(const Grid& grid, const Eigen::ArrayXd& values);
Eigen::ArrayXd inverse_real(const Grid& grid, const Eigen::ArrayXcd& coeffs);
}  // namespace detail

}  // namespace fst
