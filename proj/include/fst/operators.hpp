#pragma once

#include <Eigen/Core>

#include "fst/field.hpp"

namespace fst {

/// (-Delta)^{s/2}. Negative orders annihilate the mean; s = 0 is the identity.
/// Orders outside [-d, d] are accepted with a warning on stderr.
RealField fractional_laplacian(const RealField& f, double s);

/// Leray projection onto divergence-free fields; the mean of each component
/// passes through unchanged.
VectorField leray_project(const VectorField& u);

/// Spectral derivative along `axis` (Nyquist plane dropped).
RealField partial_derivative(const RealField& f, int axis);

/// 2/3-rule truncation: zero every coefficient with some |k_a| > n/3.
SpectralField dealias(const SpectralField& f);

VectorField gradient(const RealField& f);
RealField divergence(const VectorField& u);

/// Symbol |k|^s on the lattice with the k = 0 entry set to `zero_mode`.
Eigen::ArrayXd fractional_symbol(const Grid& grid, double s, double zero_mode = 0.0);

/// Throws unless u has d components on a common grid.
void require_vector_field(const VectorField& u, const char* context);

}  // namespace fst
