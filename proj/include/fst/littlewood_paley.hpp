#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "fst/field.hpp"
#include "fst/norms.hpp"

namespace fst {

/// Radial low-pass profile: 1 on [0, 1], exp(1 - 1/(1 - t^2)) with t = r - 1
/// on (1, 2), 0 from 2 on.
double lp_cutoff(double r);

/// Littlewood-Paley blocks on the lattice of one grid.
///
/// Block -1 is chi(|k|); block j >= 0 is phi(2^-j k) with
/// phi(xi) = chi(xi / 2) - chi(xi), supported in 2^j <= |k| <= 2^{j+2}. The
/// top block j_max is renormalized so the blocks sum to one on every lattice
/// point. Immutable after construction.
class DyadicFilterBank {
 public:
  explicit DyadicFilterBank(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return -1; }
  int j_max() const { return j_max_; }
  int block_count() const { return j_max_ + 2; }

  /// Symbol of Delta_j, -1 <= j <= j_max.
  const Eigen::ArrayXd& symbol(int j) const;

  /// Symbol of S_j = sum_{j' < j} Delta_{j'}; S_{-1} = 0, S_{j_max + 1} = 1.
  Eigen::ArrayXd partial_sum_symbol(int j) const;

 private:
  Grid grid_;
  int j_max_;
  std::vector<Eigen::ArrayXd> symbols_;
};

struct BesovParams {
  double s = 0.0;
  double p = kInfinity;
  double r = 1.0;
  bool homogeneous = false;

  /// Range checks, plus the subcriticality condition s < d/p (or s = d/p with
  /// r = 1) for homogeneous norms.
  void validate(int d) const;

  friend bool operator==(const BesovParams&, const BesovParams&) = default;
};

RealField dyadic_block(const DyadicFilterBank& bank, int j, const RealField& f);

/// All blocks j = -1 ... j_max from one forward transform.
std::vector<RealField> dyadic_blocks(const DyadicFilterBank& bank, const RealField& f);

/// S_j f.
RealField low_pass(const DyadicFilterBank& bank, int j, const RealField& f);

/// L^p norm of each block, index 0 holding j = -1.
std::vector<double> block_norms(const DyadicFilterBank& bank, const RealField& f, double p);

/// l^r aggregation of 2^{js} * norms[j + 1].
double besov_from_block_norms(std::span<const double> norms, double s, double r);

/// ||f||_{B^s_{p,r}}. Homogeneous norms require a zero-mean field (the torus
/// stand-in for S'_h) and a subcritical triple.
double besov_norm(const DyadicFilterBank& bank, const BesovParams& params, const RealField& f);

/// Max over components.
double besov_norm(const DyadicFilterBank& bank, const BesovParams& params, const VectorField& u);

/// ||f||_inf + sup_{j >= -1} ||grad S_j f||_inf / (j + 2)^alpha.
double log_lipschitz_norm(const DyadicFilterBank& bank, double alpha_ll, const RealField& f);

struct BonyParts {
  RealField paraproduct_uv;  // T_u(v) = sum_j S_{j-1} u Delta_j v
  RealField paraproduct_vu;  // T_v(u)
  RealField remainder;       // sum_{|j - j'| <= 1} Delta_j u Delta_j' v
};

/// Paraproduct split of u v; each part is dealiased, so the parts sum to the
/// dealiased product.
BonyParts bony_decompose(const DyadicFilterBank& bank, const RealField& u, const RealField& v);

}  // namespace fst
