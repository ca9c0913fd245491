#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "fst/fft.hpp"
#include "fst/multiplier.hpp"
#include "fst/norms.hpp"
#include "fst/operators.hpp"
#include "fst/snapshot.hpp"
#include "support.hpp"

using namespace fst;
using namespace fst::test;

namespace {

RealField leray_oracle_component(const VectorField& u, int i) {
  const Grid& g = u[0].grid;
  std::vector<std::vector<cplx>> hats;
  for (const auto& c : u) hats.push_back(direct_dft(c));
  std::vector<cplx> out(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    const Wavevector k = wavevector(g, m);
    const double k2 = double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    cplx acc = 0.0;
    for (int j = 0; j < g.d; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      const double m_ij = k2 == 0.0 ? delta : delta - k[std::size_t(i)] * k[std::size_t(j)] / k2;
      acc += m_ij * hats[std::size_t(j)][m];
    }
    out[m] = acc;
  }
  return direct_inverse(g, out);
}

RealField fraclap_oracle(const RealField& f, double s) {
  auto c = direct_dft(f);
  for (std::size_t m = 0; m < c.size(); ++m) {
    const Wavevector k = wavevector(f.grid, m);
    const double k2 = double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    c[m] *= k2 == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k2, s / 2.0);
  }
  return direct_inverse(f.grid, c);
}

VectorField random_vector(const Grid& g, int kmax, unsigned seed) {
  VectorField u;
  for (int a = 0; a < g.d; ++a) u.push_back(random_trig_field(g, kmax, seed * 31 + unsigned(a)));
  return u;
}

double inner(const VectorField& a, const VectorField& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += pairwise_sum(a[i].values * b[i].values);
  return acc * a[0].grid.cell_volume();
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(Grid(2, 8));
  CHECK_NOTHROW(Grid(3, 16));
  CHECK_THROWS(Grid(2, 4));
  CHECK_THROWS(Grid(2, 12));
  CHECK_THROWS(Grid(1, 16));
  CHECK_THROWS(Grid(4, 16));
  const Grid g(2, 16);
  CHECK(g.size() == 256);
  CHECK(g.volume() == doctest::Approx(4 * M_PI * M_PI));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(flat_index(g, wavevector(g, i)) == i);
  CHECK(wavevector(g, 8 * 16)[0] == -8);
}

TEST_CASE("forward transform of a constant has only the mean mode") {
  const Grid g(2, 16);
  RealField f(g);
  f.values.setConstant(2.5);
  const SpectralField c = forward_transform(f);
  CHECK(std::abs(c.coeffs(0) - cplx(2.5, 0.0)) < 1e-14);
  CHECK(c.coeffs.tail(c.coeffs.size() - 1).abs().maxCoeff() < 1e-14);
}

TEST_CASE("forward transform of sin(x1) on 16^2") {
  const Grid g(2, 16);
  const RealField f = sample_function(g, [](const auto& x) { return std::sin(x[0]); });
  SpectralField c = forward_transform(f);
  CHECK(std::abs(c.coeff({1, 0, 0}) - cplx(0.0, -0.5)) < 1e-13);
  CHECK(std::abs(c.coeff({-1, 0, 0}) - cplx(0.0, 0.5)) < 1e-13);
  c.coeff({1, 0, 0}) = 0.0;
  c.coeff({-1, 0, 0}) = 0.0;
  CHECK(c.coeffs.abs().maxCoeff() < 1e-13);
}

TEST_CASE("forward transform matches a direct DFT and is Hermitian") {
  const Grid g(2, 16);
  const RealField f = random_trig_field(g, 7, 3);
  const SpectralField c = forward_transform(f);
  const auto oracle = direct_dft(f);
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(std::abs(c.coeffs(Eigen::Index(m)) - oracle[m]) < 1e-13);
    Wavevector k = wavevector(g, m);
    const Wavevector minus{-k[0], -k[1], -k[2]};
    CHECK(std::abs(c.coeff(minus) - std::conj(c.coeffs(Eigen::Index(m)))) < 1e-14);
  }
}

TEST_CASE("round trip and Parseval on random fields") {
  for (const Grid& g : {Grid(2, 32), Grid(3, 16)}) {
    for (unsigned seed = 0; seed < 5; ++seed) {
      const RealField f = random_trig_field(g, g.n / 2 - 1, seed);
      const SpectralField c = forward_transform(f);
      CHECK(rel_diff(inverse_transform(c), f) < 1e-12);
      const double quad = lp_norm(f, 2.0);
      CHECK(std::abs(quad - coefficient_l2_norm(c)) <= 1e-12 * quad);
    }
  }
}

TEST_CASE("non-finite input is rejected with its location") {
  const Grid g(2, 16);
  RealField f(g);
  f.values(37) = std::numeric_limits<double>::quiet_NaN();
  try {
    (void)forward_transform(f);
    FAIL("expected NonFiniteError");
  } catch (const NonFiniteError& e) {
    CHECK(e.index() == 37);
  }
}

TEST_CASE("apply_multiplier examples") {
  const Grid g(2, 16);
  const RealField f = random_trig_field(g, 6, 11);
  const SpectralField c = forward_transform(f);

  SUBCASE("order zero is the identity") {
    const SpectralField out = apply_multiplier(MultiplierSpec::fractional_laplacian(0.0), c);
    CHECK((out.coeffs - c.coeffs).abs().maxCoeff() == 0.0);
  }
  SUBCASE("mode (3,4) at order 2 is scaled by 25") {
    const SpectralField out = apply_multiplier(MultiplierSpec::fractional_laplacian(2.0), c);
    CHECK(std::abs(out.coeff({3, 4, 0}) - 25.0 * c.coeff({3, 4, 0})) < 1e-13);
  }
  SUBCASE("half orders compose to the mean-free field") {
    const SpectralField out = apply_multiplier(MultiplierSpec::fractional_laplacian(-0.5),
                                               apply_multiplier(MultiplierSpec::fractional_laplacian(0.5), c));
    RealField expected = f;
    expected.values -= mean(f);
    CHECK(rel_diff(inverse_transform(out), expected) < 1e-12);
  }
  SUBCASE("zero mode rules") {
    MultiplierSpec spec = MultiplierSpec::fractional_laplacian(1.0);
    spec.zero_mode_rule = ZeroModeRule::explicit_value;
    spec.zero_mode_value = 3.0;
    CHECK(std::abs(apply_multiplier(spec, c).coeffs(0) - 3.0 * c.coeffs(0)) < 1e-14);
    spec.zero_mode_rule = ZeroModeRule::identity;
    CHECK(apply_multiplier(spec, c).coeffs(0) == c.coeffs(0));
  }
  SUBCASE("non-finite symbol names the wavevector") {
    MultiplierSpec bad;
    bad.symbol = [](const Wavevector& k) {
      return k[0] == 2 && k[1] == -3 ? cplx(std::numeric_limits<double>::infinity()) : cplx(1.0);
    };
    try {
      (void)apply_multiplier(bad, c);
      FAIL("expected an error");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("(2,-3)") != std::string::npos);
    }
  }
}

TEST_CASE("multiplier composition equals the product symbol") {
  const Grid g(2, 16);
  const SpectralField c = forward_transform(random_trig_field(g, 7, 5));
  const std::vector<MultiplierSpec> specs = {
      MultiplierSpec::fractional_laplacian(0.7), MultiplierSpec::fractional_laplacian(-1.3),
      MultiplierSpec::derivative(0, g.n), MultiplierSpec::derivative(1, g.n),
      MultiplierSpec::leray_entry(0, 0), MultiplierSpec::leray_entry(0, 1), MultiplierSpec::leray_entry(1, 1)};
  for (const auto& a : specs) {
    for (const auto& b : specs) {
      const SpectralField seq = apply_multiplier(b, apply_multiplier(a, c));
      const SpectralField joint = apply_multiplier(compose(a, b), c);
      const double scale = std::max(seq.coeffs.abs().maxCoeff(), 1e-300);
      CHECK((seq.coeffs - joint.coeffs).abs().maxCoeff() <= 1e-12 * scale);
    }
  }
}

TEST_CASE("fractional Laplacian examples") {
  const Grid g(2, 32);
  const RealField s1 = sample_function(g, [](const auto& x) { return std::sin(x[0]); });
  for (double s : {-2.0, -0.5, 0.0, 0.7, 2.0}) CHECK(max_diff(fractional_laplacian(s1, s), s1) < 1e-13);
  const RealField c2 = sample_function(g, [](const auto& x) { return std::cos(2 * x[1]); });
  RealField twice = c2;
  twice.values *= 2.0;
  CHECK(max_diff(fractional_laplacian(c2, 1.0), twice) < 1e-13);

  RealField f = random_trig_field(g, 10, 1);
  CHECK(std::abs(mean(fractional_laplacian(f, -0.5))) < 1e-15);
  CHECK(std::abs(mean(fractional_laplacian(f, 0.5))) < 1e-15);
  CHECK(std::abs(mean(fractional_laplacian(f, 0.0)) - mean(f)) < 1e-15);
}

TEST_CASE("fractional Laplacian and Leray match the direct DFT oracle") {
  const Grid g(2, 16);
  for (unsigned seed = 0; seed < 20; ++seed) {
    const RealField f = random_trig_field(g, 7, 100 + seed);
    for (double s : {-1.5, 0.7, 2.0}) CHECK(rel_diff(fractional_laplacian(f, s), fraclap_oracle(f, s)) <= 1e-12);
    const VectorField u = random_vector(g, 7, 200 + seed);
    const VectorField pu = leray_project(u);
    for (int i = 0; i < g.d; ++i) CHECK(rel_diff(pu[std::size_t(i)], leray_oracle_component(u, i)) <= 1e-12);
  }
}

TEST_CASE("Leray projection examples and invariants") {
  const Grid g(2, 32);
  SUBCASE("gradients are annihilated") {
    const RealField phi = sample_function(g, [](const auto& x) { return std::sin(x[0]) * std::sin(x[1]); });
    for (const auto& c : leray_project(gradient(phi))) CHECK(max_abs(c.values) < 1e-13);
  }
  SUBCASE("divergence-free fields are fixed") {
    const RealField psi = random_trig_field(g, 12, 4);
    RealField a = partial_derivative(psi, 1);
    a.values = -a.values;
    const VectorField u = {a, partial_derivative(psi, 0)};
    const VectorField pu = leray_project(u);
    for (int i = 0; i < 2; ++i) CHECK(rel_diff(pu[std::size_t(i)], u[std::size_t(i)]) < 1e-12);
  }
  SUBCASE("idempotent, orthogonal, divergence-free, mean preserved") {
    for (const Grid& gg : {Grid(2, 32), Grid(3, 16)}) {
      for (unsigned seed = 0; seed < 4; ++seed) {
        const VectorField u = random_vector(gg, gg.n / 2 - 1, seed);
        const VectorField p1 = leray_project(u);
        const VectorField p2 = leray_project(p1);
        VectorField rest = u;
        for (std::size_t i = 0; i < u.size(); ++i) {
          CHECK(rel_diff(p2[i], p1[i]) < 1e-12);
          CHECK(std::abs(mean(p1[i]) - mean(u[i])) < 1e-14);
          rest[i].values -= p1[i].values;
        }
        CHECK(std::abs(inner(p1, rest)) <= 1e-10 * inner(u, u));
        CHECK(max_abs(divergence(p1).values) < 1e-12 * lp_norm(u, kInfinity) * gg.n);
      }
    }
  }
  SUBCASE("derivatives commute with the projection") {
    const VectorField u = random_vector(g, 15, 9);
    const VectorField pu = leray_project(u);
    for (int j = 0; j < 2; ++j) {
      VectorField du;
      for (const auto& c : u) du.push_back(partial_derivative(c, j));
      const VectorField pdu = leray_project(du);
      for (std::size_t i = 0; i < 2; ++i) CHECK(rel_diff(partial_derivative(pu[i], j), pdu[i]) < 1e-12);
    }
  }
  SUBCASE("mismatched grids are rejected") {
    const VectorField u = {RealField(Grid(2, 16)), RealField(Grid(2, 32))};
    CHECK_THROWS(leray_project(u));
    CHECK_THROWS(leray_project(VectorField{RealField(Grid(2, 16))}));
  }
}

TEST_CASE("partial derivative") {
  const Grid g(2, 32);
  const RealField s = sample_function(g, [](const auto& x) { return std::sin(x[0]); });
  const RealField c = sample_function(g, [](const auto& x) { return std::cos(x[0]); });
  CHECK(max_diff(partial_derivative(s, 0), c) < 1e-13);
  const RealField x1_only = sample_function(g, [](const auto& x) { return std::exp(std::sin(x[0])); });
  CHECK(max_abs(partial_derivative(x1_only, 1).values) < 1e-13);
  CHECK_THROWS(partial_derivative(s, 2));
}

TEST_CASE("spectral derivative agrees with centered differences at order h^2") {
  std::vector<double> errors;
  for (int n : {32, 64, 128}) {
    const Grid g(2, n);
    const RealField f = random_trig_field(g, 3, 77);
    const RealField d = partial_derivative(f, 0);
    const double h = g.spacing();
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto at = [&](int a) { return f.values(((a + n) % n) * n + j); };
        const double fd = (at(i + 1) - at(i - 1)) / (2 * h);
        err = std::max(err, std::abs(fd - d.values(i * n + j)));
      }
    }
    errors.push_back(err);
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double order = std::log2(errors[i - 1] / errors[i]);
    CHECK(order == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("dealias") {
  const Grid g(2, 16);
  SUBCASE("band-limited field unchanged") {
    const SpectralField c = forward_transform(random_trig_field(g, 5, 2));
    CHECK((dealias(c).coeffs - c.coeffs).abs().maxCoeff() <= 1e-15 * c.coeffs.abs().maxCoeff());
  }
  SUBCASE("high mode removed") {
    SpectralField c(g);
    c.coeff({g.n / 2 - 1, 0, 0}) = 1.0;
    CHECK(dealias(c).coeffs.abs().maxCoeff() == 0.0);
  }
  SUBCASE("dealiased product is grid independent") {
    const auto product = [](const Grid& gg) {
      const RealField s = sample_function(gg, [](const auto& x) { return std::sin(x[0]); });
      RealField p(gg, s.values * s.values);
      return dealias(forward_transform(p));
    };
    const SpectralField coarse = product(Grid(2, 16));
    const SpectralField fine = product(Grid(2, 64));
    double diff = 0.0;
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b) diff = std::max(diff, std::abs(coarse.coeff({a, b, 0}) - fine.coeff({a, b, 0})));
    CHECK(diff * std::sqrt(g.volume()) <= 1e-12);
  }
}

TEST_CASE("snapshot format") {
  const auto dir = std::filesystem::temp_directory_path() / "fst_snapshot_test";
  std::filesystem::create_directories(dir);
  const Grid g(3, 8);
  const RealField f = random_trig_field(g, 3, 8);
  const auto path = dir / "f.fstf";
  write_snapshot(path, f);

  SUBCASE("layout") {
    std::ifstream in(path, std::ios::binary);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(bytes.size() == 4 + 4 * 5 + 8 * g.size());
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "FSTF");
    CHECK(bytes[4] == 1);
    CHECK(bytes[8] == 3);
    CHECK(bytes[12] == 8);
  }
  SUBCASE("round trip is bit-exact") {
    const RealField back = read_snapshot(path);
    CHECK(back.grid == g);
    CHECK((back.values == f.values).all());
  }
  SUBCASE("corrupt files are rejected") {
    const auto mutate = [&](auto&& edit) {
      std::ifstream in(path, std::ios::binary);
      std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      edit(bytes);
      const auto bad = dir / "bad.fstf";
      std::ofstream(bad, std::ios::binary) << bytes;
      return bad;
    };
    CHECK_THROWS(read_snapshot(mutate([](std::string& b) { b[0] = 'X'; })));
    CHECK_THROWS(read_snapshot(mutate([](std::string& b) { b[4] = 2; })));
    CHECK_THROWS(read_snapshot(mutate([](std::string& b) { b.pop_back(); })));
    CHECK_THROWS(read_snapshot(mutate([](std::string& b) { b.push_back('\0'); })));
    CHECK_THROWS(read_snapshot(dir / "missing.fstf"));
  }
}
