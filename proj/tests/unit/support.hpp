#pragma once

// Test helpers that deliberately avoid the library's FFT path: fields are
// built as explicit trigonometric sums and spectra come from a direct DFT.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "fst/field.hpp"
#include "fst/grid.hpp"

namespace fst::test {

using cplx = std::complex<double>;

inline std::vector<Wavevector> modes_up_to(const Grid& grid, int kmax) {
  std::vector<Wavevector> out;
  const int k3 = grid.d == 3 ? kmax : 0;
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = -kmax; b <= kmax; ++b)
      for (int c = -k3; c <= k3; ++c) out.push_back({a, b, c});
  return out;
}

inline std::array<double, 3> point(const Grid& grid, std::size_t flat) {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const double h = grid.spacing();
  for (int a = grid.d - 1; a >= 0; --a) {
    x[static_cast<std::size_t>(a)] = h * static_cast<double>(flat % static_cast<std::size_t>(grid.n));
    flat /= static_cast<std::size_t>(grid.n);
  }
  return x;
}

inline double dot(const Wavevector& k, const std::array<double, 3>& x) {
  return k[0] * x[0] + k[1] * x[1] + k[2] * x[2];
}

/// Real trigonometric polynomial with random coefficients on |k_a| <= kmax,
/// built pointwise as a sum of cos and sin terms.
inline RealField random_trig_field(const Grid& grid, int kmax, unsigned seed, bool zero_mean = false) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  struct Term {
    Wavevector k;
    double a, b;
  };
  std::vector<Term> terms;
  for (const auto& k : modes_up_to(grid, kmax)) {
    // one representative of each {k, -k} pair
    const bool positive = k[0] > 0 || (k[0] == 0 && (k[1] > 0 || (k[1] == 0 && k[2] >= 0)));
    if (!positive) continue;
    const bool is_zero = k[0] == 0 && k[1] == 0 && k[2] == 0;
    const double decay = 1.0 / (1.0 + std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])));
    Term t{k, coef(gen) * decay, coef(gen) * decay};
    if (is_zero) {
      t.b = 0.0;
      if (zero_mean) t.a = 0.0;
    }
    terms.push_back(t);
  }
  RealField f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = point(grid, i);
    double v = 0.0;
    for (const auto& t : terms) v += t.a * std::cos(dot(t.k, x)) + t.b * std::sin(dot(t.k, x));
    f.values(static_cast<Eigen::Index>(i)) = v;
  }
  return f;
}

/// Direct DFT: c_k = (1/N) sum_x f(x) exp(-i k.x), in the library's flat order.
inline std::vector<cplx> direct_dft(const RealField& f) {
  const Grid& g = f.grid;
  std::vector<cplx> out(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    const Wavevector k = wavevector(g, m);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) acc += f.values(Eigen::Index(i)) * std::polar(1.0, -dot(k, point(g, i)));
    out[m] = acc / double(g.size());
  }
  return out;
}

/// Real part of sum_k c_k exp(i k.x).
inline RealField direct_inverse(const Grid& g, const std::vector<cplx>& c) {
  RealField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = point(g, i);
    cplx acc = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) acc += c[m] * std::polar(1.0, dot(wavevector(g, m), x));
    f.values(Eigen::Index(i)) = acc.real();
  }
  return f;
}

inline double max_abs(const Eigen::ArrayXd& a) { return a.abs().maxCoeff(); }

inline double max_diff(const RealField& a, const RealField& b) { return max_abs(a.values - b.values); }

inline double rel_diff(const RealField& a, const RealField& b) {
  const double scale = std::max(max_abs(b.values), 1e-300);
  return max_diff(a, b) / scale;
}

}  // namespace fst::test
