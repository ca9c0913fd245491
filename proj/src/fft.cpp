#include "fst/fft.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace fst {

void require_finite(const RealField& f, const char* context) {
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    if (!std::isfinite(f.values(i))) {
      throw NonFiniteError(std::string(context) + ": non-finite sample at grid index " +
                               std::to_string(i),
                           static_cast<std::size_t>(i));
    }
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) throw std::invalid_argument(std::string(context) + ": mismatched grids");
}

RealField::RealField(const Grid& g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<Eigen::Index>(grid.size())) {
    throw std::invalid_argument("RealField: value count does not match grid");
  }
}

SpectralField::SpectralField(const Grid& g, Eigen::ArrayXcd c) : grid(g), coeffs(std::move(c)) {
  if (coeffs.size() != static_cast<Eigen::Index>(grid.size())) {
    throw std::invalid_argument("SpectralField: coefficient count does not match grid");
  }
}

namespace {

// fftw_plan_* and fftw_destroy_plan are not thread-safe; fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Plans live for the whole process. The real transforms work on the half
// spectrum (last axis 0..n/2); the full spectrum is recovered by Hermitian
// symmetry.
struct PlanSet {
  fftw_plan forward = nullptr;   // c2c
  fftw_plan backward = nullptr;  // c2c
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  std::size_t rows = 0;          // n^(d-1)
  std::size_t half = 0;          // n/2 + 1
  std::vector<std::size_t> mirror_row;  // row index of -k in the leading axes
};

const PlanSet& plans(const Grid& grid) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<PlanSet>> cache;
  std::lock_guard cache_lock(cache_mutex);
  auto& slot = cache[{grid.d, grid.n}];
  if (!slot) {
    auto set = std::make_unique<PlanSet>();
    const std::size_t n = static_cast<std::size_t>(grid.n);
    set->half = n / 2 + 1;
    set->rows = grid.size() / n;
    set->mirror_row.resize(set->rows);
    for (std::size_t r = 0; r < set->rows; ++r) {
      std::size_t rest = r, mirrored = 0, scale = 1;
      for (int a = 0; a < grid.d - 1; ++a) {
        const std::size_t i = rest % n;
        rest /= n;
        mirrored += ((n - i) % n) * scale;
        scale *= n;
      }
      set->mirror_row[r] = mirrored;
    }

    std::array<int, kMaxDim> dims{grid.n, grid.n, grid.n};
    Eigen::ArrayXcd in(static_cast<Eigen::Index>(grid.size()));
    Eigen::ArrayXcd out(static_cast<Eigen::Index>(grid.size()));
    Eigen::ArrayXd real(static_cast<Eigen::Index>(grid.size()));
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    // ESTIMATE planning is deterministic, so reruns are bit-identical.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    set->forward = fftw_plan_dft(grid.d, dims.data(), pin, pout, FFTW_FORWARD, flags);
    set->backward = fftw_plan_dft(grid.d, dims.data(), pin, pout, FFTW_BACKWARD, flags);
    set->r2c = fftw_plan_dft_r2c(grid.d, dims.data(), real.data(), pout, flags);
    set->c2r = fftw_plan_dft_c2r(grid.d, dims.data(), pin, real.data(), flags | FFTW_DESTROY_INPUT);
    slot = std::move(set);
  }
  return *slot;
}

}  // namespace

namespace detail {

Eigen::ArrayXcd forward(const Grid& grid, const Eigen::ArrayXd& values) {
  const PlanSet& p = plans(grid);
  const std::size_t n = static_cast<std::size_t>(grid.n);
  Eigen::ArrayXcd half(static_cast<Eigen::Index>(p.rows * p.half));
  // out-of-place r2c leaves its input untouched
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(values.data()), reinterpret_cast<fftw_complex*>(half.data()));

  const double scale = 1.0 / static_cast<double>(grid.size());
  Eigen::ArrayXcd out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t r = 0; r < p.rows; ++r) {
    const std::complex<double>* src = half.data() + r * p.half;
    const std::complex<double>* mirror = half.data() + p.mirror_row[r] * p.half;
    std::complex<double>* dst = out.data() + r * n;
    for (std::size_t m = 0; m < p.half; ++m) dst[m] = src[m] * scale;
    for (std::size_t m = p.half; m < n; ++m) dst[m] = std::conj(mirror[n - m]) * scale;
  }
  return out;
}

Eigen::ArrayXd inverse_real(const Grid& grid, const Eigen::ArrayXcd& coeffs) {
  // Re(inverse(c)) is the inverse of the Hermitian part (c(k) + conj(c(-k))) / 2.
  const PlanSet& p = plans(grid);
  const std::size_t n = static_cast<std::size_t>(grid.n);
  Eigen::ArrayXcd half(static_cast<Eigen::Index>(p.rows * p.half));
  for (std::size_t r = 0; r < p.rows; ++r) {
    const std::complex<double>* src = coeffs.data() + r * n;
    const std::complex<double>* mirror = coeffs.data() + p.mirror_row[r] * n;
    std::complex<double>* dst = half.data() + r * p.half;
    for (std::size_t m = 0; m < p.half; ++m) dst[m] = 0.5 * (src[m] + std::conj(mirror[(n - m) % n]));
  }
  Eigen::ArrayXd out(static_cast<Eigen::Index>(grid.size()));
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(half.data()), out.data());
  return out;
}

}  // namespace detail

SpectralField forward_transform(const RealField& f) {
  require_finite(f, "forward_transform");
  return SpectralField(f.grid, detail::forward(f.grid, f.values));
}

RealField inverse_transform(const SpectralField& f) {
  return RealField(f.grid, detail::inverse_real(f.grid, f.coeffs));
}

Eigen::ArrayXcd inverse_transform_complex(const SpectralField& f) {
  Eigen::ArrayXcd in = f.coeffs;
  Eigen::ArrayXcd out(in.size());
  fftw_execute_dft(plans(f.grid).backward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace fst
