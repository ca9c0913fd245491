#include <doctest.h>

#include <cmath>

#include "fst/fft.hpp"
#include "fst/norms.hpp"
#include "fst/operators.hpp"
#include "fst/transport.hpp"
#include "support.hpp"

using namespace fst;
using namespace fst::test;

namespace {

SolverState initial_state(RealField rho) {
  SolverState s;
  s.rho = std::move(rho);
  return s;
}

SchemeConfig fixed_dt(double dt) {
  SchemeConfig c;
  c.dt_rule = DtRule::fixed;
  c.dt = dt;
  return c;
}

template <typename Velocity>
SolverState integrate(SolverState s, const SchemeConfig& scheme, const Velocity& v, double t_end) {
  while (s.t < t_end - 1e-12) s = step(s, scheme, v, t_end - s.t);
  return s;
}

// exact solution of rho_t + d_1 rho = 0: shift every mode by exp(-i k_1 t)
RealField translated(const RealField& f, double t) {
  auto c = direct_dft(f);
  for (std::size_t m = 0; m < c.size(); ++m) c[m] *= std::polar(1.0, -wavevector(f.grid, m)[0] * t);
  return direct_inverse(f.grid, c);
}

RealField sin_axis(const Grid& g, int axis) {
  return sample_function(g, [axis](const auto& x) { return std::sin(x[std::size_t(axis)]); });
}

}  // namespace

TEST_CASE("scheme validation") {
  SchemeConfig c;
  c.cfl = 0.0;
  CHECK_THROWS(c.validate());
  c.cfl = 1.5;
  CHECK_THROWS(c.validate());
  c.cfl = 1.0;
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS(fixed_dt(0.0).validate());
  CHECK_THROWS(fixed_dt(-1.0).validate());
}

TEST_CASE("right-hand side examples") {
  const Grid g(2, 32);
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    const StokesOperator op(g, alpha);
    const SchemeConfig plain;
    CHECK(max_abs(rhs(initial_state(sin_axis(g, 1)), plain, op).values) < 1e-14);
    CHECK(max_abs(rhs(initial_state(sin_axis(g, 0)), plain, op).values) < 1e-14);

    SchemeConfig eq;
    eq.equilibrium = EquilibriumProfile::from_function(g, [](double z) { return std::sin(z); });
    CHECK(max_abs(rhs(initial_state(RealField(g)), eq, op).values) == 0.0);

    // rho = cos(x1) gives u = cos(x1) e_2 and no advection; the source is -cos(x2) cos(x1)
    const RealField c1 = sample_function(g, [](const auto& x) { return std::cos(x[0]); });
    const RealField expected = sample_function(g, [](const auto& x) { return -std::cos(x[1]) * std::cos(x[0]); });
    CHECK(max_diff(rhs(initial_state(c1), eq, op), expected) < 1e-14);

    const RealField rho = random_trig_field(g, 10, 3);
    RealField minus_adv = advection_term(op, rho);
    minus_adv.values = -minus_adv.values;
    CHECK(max_diff(rhs(initial_state(rho), plain, op), minus_adv) < 1e-13);
    CHECK(std::abs(mean(rhs(initial_state(rho), plain, op))) < 1e-16);
  }
}

TEST_CASE("diverged states are rejected") {
  const Grid g(2, 16);
  const StokesOperator op(g, 1.0);
  SolverState s = initial_state(sin_axis(g, 0));
  s.diverged = true;
  CHECK_THROWS(rhs(s, SchemeConfig{}, op));
  CHECK_THROWS(step(s, SchemeConfig{}, op));
}

TEST_CASE("step size rules") {
  const Grid g(2, 32);
  const StokesOperator op(g, 1.0);
  const RealField rho = random_trig_field(g, 10, 8);
  SchemeConfig cfl;
  cfl.cfl = 0.4;
  const SolverState s = step(initial_state(rho), cfl, op);
  CHECK(s.dt == doctest::Approx(0.4 * g.spacing() / lp_norm(stokes_velocity(op, rho), kInfinity)).epsilon(1e-14));
  CHECK(s.step_count == 1);
  CHECK(s.t == s.dt);

  // zero velocity: the floor keeps dt finite and max_dt clips it
  const SolverState still = step(initial_state(sin_axis(g, 1)), cfl, op);
  CHECK(still.dt == doctest::Approx(0.4 * g.spacing() / kVelocityFloor));
  CHECK(step(initial_state(sin_axis(g, 1)), cfl, op, 0.25).dt == 0.25);
  CHECK(step(initial_state(rho), fixed_dt(0.01), op, 0.003).dt == 0.003);
}

TEST_CASE("stationary stratification over 1000 steps") {
  const Grid g(2, 32);
  for (double alpha : {0.0, 1.0, 2.0}) {
    const StokesOperator op(g, alpha);
    SolverState s = initial_state(sin_axis(g, 1));
    for (int i = 0; i < 1000; ++i) s = step(s, fixed_dt(0.005), op);
    CHECK(s.t == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(max_diff(s.rho, sin_axis(g, 1)) <= 1e-10);
  }
}

TEST_CASE("frozen unit velocity translates the field") {
  const Grid g(2, 32);
  const RealField rho = random_trig_field(g, 6, 4);
  FrozenVelocity v{{RealField(g), RealField(g)}};
  v.u[0].values.setConstant(1.0);
  const SolverState end = integrate(initial_state(rho), fixed_dt(0.0025), v, 1.0);
  CHECK(end.t == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_diff(end.rho, translated(rho, 1.0)) <= 1e-8);
}

TEST_CASE("stage failures flag divergence with the stage time") {
  const Grid g(2, 16);
  const StokesOperator op(g, 0.0);
  const RealField base = random_trig_field(g, 4, 2);

  RealField huge = base;
  huge.values *= 1e200;
  SolverState s = initial_state(huge);
  s.t = 2.0;
  const SolverState first = step(s, fixed_dt(0.1), op);
  CHECK(first.diverged);
  CHECK(first.diverged_time == 2.0);

  RealField big = base;
  big.values *= 1e150;
  s = initial_state(big);
  s.t = 1.0;
  const SolverState second = step(s, fixed_dt(1e200), op);
  CHECK(second.diverged);
  CHECK(second.diverged_time == doctest::Approx(1.0 + 0.5e200));
}

TEST_CASE("RK4 self-convergence") {
  const Grid g(2, 32);
  const StokesOperator op(g, 1.0);
  const RealField rho = random_trig_field(g, 4, 12);
  std::vector<RealField> finals;
  for (int steps : {20, 40, 80}) finals.push_back(integrate(initial_state(rho), fixed_dt(0.5 / steps), op, 0.5).rho);
  const double e1 = max_diff(finals[0], finals[1]);
  const double e2 = max_diff(finals[1], finals[2]);
  MESSAGE("self-convergence factor " << e1 / e2);
  CHECK(e1 / e2 >= 14.0);
  CHECK(e1 / e2 <= 18.0);
}

TEST_CASE("conservation on a short run") {
  const Grid g(2, 64);
  const StokesOperator op(g, 1.0);
  const RealField rho = random_trig_field(g, 8, 21);
  const SolverState end = integrate(initial_state(rho), SchemeConfig{}, op, 0.5);
  CHECK(std::abs(mean(end.rho) - mean(rho)) <= 1e-14);
  CHECK(std::abs(lp_norm(end.rho, 2.0) / lp_norm(rho, 2.0) - 1.0) <= 1e-6);
}

TEST_CASE("Friedrichs mode at full resolution follows the plain trajectory") {
  const Grid g(2, 32);
  const StokesOperator plain(g, 1.0);
  const StokesOperator fried(g, 1.0, Regularization::friedrichs(g.n / 2));
  const RealField rho = random_trig_field(g, 10, 6);
  const SolverState a = integrate(initial_state(rho), fixed_dt(0.01), plain, 1.0);
  const SolverState b = integrate(initial_state(rho), fixed_dt(0.01), fried, 1.0);
  CHECK(max_diff(a.rho, b.rho) <= 1e-10);
}

TEST_CASE("Friedrichs mode keeps the state inside the cut-off ball") {
  const Grid g(2, 32);
  const StokesOperator fried(g, 0.5, Regularization::friedrichs(5));
  const RealField rho = inverse_transform([&] {
    SpectralField c = forward_transform(random_trig_field(g, 10, 7));
    const Lattice& lat = lattice(g);
    c.coeffs = (lat.kabs <= 5.0).select(c.coeffs, std::complex<double>(0.0));
    return c;
  }());
  const SolverState end = integrate(initial_state(rho), fixed_dt(0.01), fried, 0.5);
  const SpectralField c = forward_transform(end.rho);
  const Lattice& lat = lattice(g);
  CHECK((lat.kabs > 5.0).select(c.coeffs.abs(), 0.0).maxCoeff() < 1e-15);
}
