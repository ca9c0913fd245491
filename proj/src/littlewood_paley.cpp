#include "fst/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fst/fft.hpp"
#include "fst/operators.hpp"

namespace fst {

double lp_cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double t = r - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

DyadicFilterBank::DyadicFilterBank(const Grid& grid)
    : grid_(grid), j_max_(static_cast<int>(std::ceil(std::log2(grid.n / 2.0)))) {
  const Eigen::ArrayXd& kabs = lattice(grid).kabs;
  const auto chi = [&](double scale) { return kabs.unaryExpr([scale](double r) { return lp_cutoff(r * scale); }).eval(); };

  symbols_.push_back(chi(1.0));
  Eigen::ArrayXd covered = symbols_.back();
  for (int j = 0; j < j_max_; ++j) {
    symbols_.push_back(chi(std::ldexp(1.0, -(j + 1))) - chi(std::ldexp(1.0, -j)));
    covered += symbols_.back();
  }
  symbols_.push_back(1.0 - covered);
}

const Eigen::ArrayXd& DyadicFilterBank::symbol(int j) const {
  if (j < -1 || j > j_max_) {
    throw std::out_of_range("dyadic block " + std::to_string(j) + " outside [-1, " +
                            std::to_string(j_max_) + "]");
  }
  return symbols_[static_cast<std::size_t>(j + 1)];
}

Eigen::ArrayXd DyadicFilterBank::partial_sum_symbol(int j) const {
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(grid_.size()));
  for (int jp = -1; jp < std::min(j, j_max_ + 1); ++jp) acc += symbol(jp);
  return acc;
}

void BesovParams::validate(int d) const {
  if (!(p >= 1.0) || !(r >= 1.0)) {
    throw std::invalid_argument("Besov exponents p and r must lie in [1, inf]");
  }
  if (!std::isfinite(s)) throw std::invalid_argument("Besov regularity must be finite");
  if (homogeneous) {
    const double critical = std::isinf(p) ? 0.0 : d / p;
    if (!(s < critical || (s == critical && r == 1.0))) {
      throw std::invalid_argument("homogeneous Besov triple is not subcritical: need s < d/p, or s = d/p and r = 1");
    }
  }
}

RealField dyadic_block(const DyadicFilterBank& bank, int j, const RealField& f) {
  require_same_grid(bank.grid(), f.grid, "dyadic_block");
  const Eigen::ArrayXd& sym = bank.symbol(j);
  Eigen::ArrayXcd fh = detail::forward(f.grid, f.values);
  return RealField(f.grid, detail::inverse_real(f.grid, fh * sym));
}

std::vector<RealField> dyadic_blocks(const DyadicFilterBank& bank, const RealField& f) {
  require_same_grid(bank.grid(), f.grid, "dyadic_blocks");
  const Eigen::ArrayXcd fh = detail::forward(f.grid, f.values);
  std::vector<RealField> blocks;
  blocks.reserve(static_cast<std::size_t>(bank.block_count()));
  for (int j = -1; j <= bank.j_max(); ++j) {
    blocks.emplace_back(f.grid, detail::inverse_real(f.grid, fh * bank.symbol(j)));
  }
  return blocks;
}

RealField low_pass(const DyadicFilterBank& bank, int j, const RealField& f) {
  require_same_grid(bank.grid(), f.grid, "low_pass");
  const Eigen::ArrayXcd fh = detail::forward(f.grid, f.values);
  return RealField(f.grid, detail::inverse_real(f.grid, fh * bank.partial_sum_symbol(j)));
}

std::vector<double> block_norms(const DyadicFilterBank& bank, const RealField& f, double p) {
  std::vector<double> norms;
  for (const auto& block : dyadic_blocks(bank, f)) norms.push_back(lp_norm(block, p));
  return norms;
}

double besov_from_block_norms(std::span<const double> norms, double s, double r) {
  double acc = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const double term = std::pow(2.0, s * (static_cast<double>(i) - 1.0)) * norms[i];
    if (std::isinf(r)) {
      acc = std::max(acc, term);
    } else {
      acc += std::pow(term, r);
    }
  }
  return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

double besov_norm(const DyadicFilterBank& bank, const BesovParams& params, const RealField& f) {
  params.validate(f.grid.d);
  if (params.homogeneous) {
    const double m = mean(f);
    if (std::abs(m) > 1e-12 * (1.0 + lp_norm(f, kInfinity))) {
      throw std::invalid_argument("homogeneous Besov norm needs a zero-mean field (mean = " +
                                  std::to_string(m) + ")");
    }
  }
  // On the integer lattice the homogeneous blocks of a zero-mean field coincide
  // with the non-homogeneous ones (all blocks below j = -1 vanish for |k| >= 1).
  const std::vector<double> norms = block_norms(bank, f, params.p);
  return besov_from_block_norms(norms, params.s, params.r);
}

double besov_norm(const DyadicFilterBank& bank, const BesovParams& params, const VectorField& u) {
  double worst = 0.0;
  for (const auto& c : u) worst = std::max(worst, besov_norm(bank, params, c));
  return worst;
}

double log_lipschitz_norm(const DyadicFilterBank& bank, double alpha_ll, const RealField& f) {
  if (!(alpha_ll >= 0.0)) throw std::invalid_argument("log-Lipschitz exponent must be >= 0");
  require_same_grid(bank.grid(), f.grid, "log_lipschitz_norm");
  const Lattice& lat = lattice(f.grid);
  const Eigen::ArrayXcd fh = detail::forward(f.grid, f.values);
  double sup = 0.0;
  // S_{-1} = 0, so the sweep starts at j = 0; S_{j_max + 1} = Id closes it.
  for (int j = 0; j <= bank.j_max() + 1; ++j) {
    const Eigen::ArrayXcd sj = fh * bank.partial_sum_symbol(j);
    Eigen::ArrayXd mag2 = Eigen::ArrayXd::Zero(f.values.size());
    for (int a = 0; a < f.grid.d; ++a) {
      const Eigen::ArrayXcd da = std::complex<double>(0.0, 1.0) * lat.k_odd[a] * sj;
      mag2 += detail::inverse_real(f.grid, da).square();
    }
    sup = std::max(sup, std::sqrt(mag2.maxCoeff()) / std::pow(j + 2.0, alpha_ll));
  }
  return lp_norm(f, kInfinity) + sup;
}

namespace {

RealField dealiased(const RealField& f) {
  const Eigen::ArrayXcd fh = detail::forward(f.grid, f.values);
  return RealField(f.grid, detail::inverse_real(f.grid, fh * lattice(f.grid).dealias_mask));
}

}  // namespace

BonyParts bony_decompose(const DyadicFilterBank& bank, const RealField& u, const RealField& v) {
  require_same_grid(u.grid, v.grid, "bony_decompose");
  const std::vector<RealField> bu = dyadic_blocks(bank, u);
  const std::vector<RealField> bv = dyadic_blocks(bank, v);
  const Grid& grid = u.grid;
  const auto count = bu.size();

  // low_u[i] = S_{j-1} u for block index i = j + 1, i.e. the sum of blocks
  // strictly below i - 1.
  RealField tuv(grid), tvu(grid), rem(grid);
  Eigen::ArrayXd low_u = Eigen::ArrayXd::Zero(u.values.size());
  Eigen::ArrayXd low_v = Eigen::ArrayXd::Zero(v.values.size());
  for (std::size_t i = 0; i < count; ++i) {
    if (i >= 2) {
      low_u += bu[i - 2].values;
      low_v += bv[i - 2].values;
    }
    tuv.values += low_u * bv[i].values;
    tvu.values += low_v * bu[i].values;
    for (std::size_t ip = (i == 0 ? 0 : i - 1); ip <= std::min(i + 1, count - 1); ++ip) {
      rem.values += bu[i].values * bv[ip].values;
    }
  }
  return {dealiased(tuv), dealiased(tvu), dealiased(rem)};
}

}  // namespace fst
