#include "fst/grid.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace fst {

Grid::Grid(int d_, int n_) : d(d_), n(n_) {
  if (d < 2 || d > kMaxDim) {
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(d));
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("points per axis must be a power of two >= 8, got " +
                                std::to_string(n));
  }
}

std::size_t Grid::size() const {
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
  return total;
}

double Grid::cell_volume() const { return std::pow(spacing(), d); }

double Grid::volume() const { return std::pow(kTwoPi, d); }

Wavevector wavevector(const Grid& grid, std::size_t flat) {
  Wavevector k{0, 0, 0};
  const auto n = static_cast<std::size_t>(grid.n);
  for (int a = grid.d - 1; a >= 0; --a) {
    const int i = static_cast<int>(flat % n);
    flat /= n;
    k[a] = i < grid.n / 2 ? i : i - grid.n;
  }
  return k;
}

std::size_t flat_index(const Grid& grid, const Wavevector& k) {
  std::size_t flat = 0;
  for (int a = 0; a < grid.d; ++a) {
    const int i = ((k[a] % grid.n) + grid.n) % grid.n;
    flat = flat * static_cast<std::size_t>(grid.n) + static_cast<std::size_t>(i);
  }
  return flat;
}

namespace {

std::unique_ptr<Lattice> build_lattice(const Grid& grid) {
  auto lat = std::make_unique<Lattice>();
  const auto size = static_cast<Eigen::Index>(grid.size());
  const double cut = grid.n / 3.0;
  lat->k2 = Eigen::ArrayXd::Zero(size);
  lat->k2_odd = Eigen::ArrayXd::Zero(size);
  lat->dealias_mask = Eigen::ArrayXd::Ones(size);
  for (int a = 0; a < kMaxDim; ++a) {
    lat->k[a] = Eigen::ArrayXd::Zero(size);
    lat->k_odd[a] = Eigen::ArrayXd::Zero(size);
    lat->x[a] = Eigen::ArrayXd::Zero(size);
  }
  for (Eigen::Index idx = 0; idx < size; ++idx) {
    const Wavevector k = wavevector(grid, static_cast<std::size_t>(idx));
    for (int a = 0; a < grid.d; ++a) {
      lat->k[a](idx) = k[a];
      lat->k_odd[a](idx) = k[a] == -grid.n / 2 ? 0.0 : k[a];
      const int i = k[a] < 0 ? k[a] + grid.n : k[a];
      lat->x[a](idx) = i * grid.spacing();
      lat->k2(idx) += static_cast<double>(k[a]) * k[a];
      lat->k2_odd(idx) += lat->k_odd[a](idx) * lat->k_odd[a](idx);
      if (std::abs(k[a]) > cut) lat->dealias_mask(idx) = 0.0;
    }
  }
  lat->kabs = lat->k2.sqrt();
  return lat;
}

}  // namespace

const Lattice& lattice(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Lattice>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{grid.d, grid.n}];
  if (!slot) slot = build_lattice(grid);
  return *slot;
}

}  // namespace fst
