#include "fst/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fst/fft.hpp"
#include "fst/operators.hpp"

namespace fst {

void SchemeConfig::validate() const {
  if (dt_rule == DtRule::fixed && !(dt > 0.0)) throw std::invalid_argument("fixed dt must be positive");
  if (dt_rule == DtRule::cfl_adaptive && !(cfl > 0.0 && cfl <= 1.0)) {
    throw std::invalid_argument("CFL target must lie in (0, 1]");
  }
}

namespace {

struct Evaluation {
  Eigen::ArrayXd rhs;
  double u_max = 0.0;
  bool finite = true;
};

Evaluation evaluate(const Grid& grid, const Eigen::ArrayXd& rho, const StokesOperator& op,
                    const SchemeConfig& scheme) {
  const Eigen::ArrayXcd rho_hat = detail::forward(grid, rho);
  std::vector<Eigen::ArrayXd> u = detail::velocity_from_coeffs(op, rho_hat);
  Evaluation ev;
  for (const auto& c : u) ev.u_max = std::max(ev.u_max, c.abs().maxCoeff());

  const Eigen::ArrayXd u_gravity = u[static_cast<std::size_t>(grid.gravity_axis())];
  for (auto& c : u) c *= rho;
  Eigen::ArrayXcd out = -detail::dealiased_divergence(grid, u);
  if (scheme.equilibrium) {
    const Eigen::ArrayXd source = scheme.equilibrium->dR.values * u_gravity;
    out -= detail::forward(grid, source) * lattice(grid).dealias_mask;
  }
  out *= op.outer_filter();
  out(0) = 0.0;
  ev.rhs = detail::inverse_real(grid, out);
  ev.finite = ev.rhs.allFinite() && std::isfinite(ev.u_max);
  return ev;
}

Evaluation evaluate(const Grid& grid, const Eigen::ArrayXd& rho, const FrozenVelocity& velocity,
                    const SchemeConfig& scheme) {
  Evaluation ev;
  std::vector<Eigen::ArrayXd> flux;
  for (const auto& c : velocity.u) {
    ev.u_max = std::max(ev.u_max, c.values.abs().maxCoeff());
    flux.push_back(c.values * rho);
  }
  Eigen::ArrayXcd out = -detail::dealiased_divergence(grid, flux);
  if (scheme.equilibrium) {
    const Eigen::ArrayXd source =
        scheme.equilibrium->dR.values * velocity.u[static_cast<std::size_t>(grid.gravity_axis())].values;
    out -= detail::forward(grid, source) * lattice(grid).dealias_mask;
  }
  out(0) = 0.0;
  ev.rhs = detail::inverse_real(grid, out);
  ev.finite = ev.rhs.allFinite() && std::isfinite(ev.u_max);
  return ev;
}

void check_inputs(const SolverState& state, const SchemeConfig& scheme, const Grid& grid) {
  if (state.diverged) throw std::runtime_error("transport: state has diverged");
  require_same_grid(grid, state.rho.grid, "transport");
  if (scheme.equilibrium) require_same_grid(grid, scheme.equilibrium->R.grid, "transport equilibrium");
}

template <typename Velocity>
SolverState rk4_step(const SolverState& state, const SchemeConfig& scheme, const Velocity& velocity,
                     const Grid& grid, double max_dt) {
  check_inputs(state, scheme, grid);
  scheme.validate();
  SolverState next = state;
  const Eigen::ArrayXd& rho = state.rho.values;
  const auto fail = [&](double when) {
    next.diverged = true;
    next.diverged_time = when;
    return next;
  };
  if (!rho.allFinite()) return fail(state.t);

  const Evaluation k1 = evaluate(grid, rho, velocity, scheme);
  if (!k1.finite) return fail(state.t);

  double dt = scheme.dt_rule == DtRule::fixed
                  ? scheme.dt
                  : scheme.cfl * grid.spacing() / std::max(k1.u_max, kVelocityFloor);
  dt = std::min(dt, max_dt);

  const Evaluation k2 = evaluate(grid, rho + 0.5 * dt * k1.rhs, velocity, scheme);
  if (!k2.finite) return fail(state.t + 0.5 * dt);
  const Evaluation k3 = evaluate(grid, rho + 0.5 * dt * k2.rhs, velocity, scheme);
  if (!k3.finite) return fail(state.t + 0.5 * dt);
  const Evaluation k4 = evaluate(grid, rho + dt * k3.rhs, velocity, scheme);
  if (!k4.finite) return fail(state.t + dt);

  next.rho.values = rho + (dt / 6.0) * (k1.rhs + 2.0 * k2.rhs + 2.0 * k3.rhs + k4.rhs);
  next.t = state.t + dt;
  next.dt = dt;
  next.cfl = scheme.cfl;
  next.step_count = state.step_count + 1;
  if (!next.rho.values.allFinite()) return fail(next.t);
  return next;
}

void check_frozen(const FrozenVelocity& velocity, const Grid& grid) {
  require_vector_field(velocity.u, "frozen velocity");
  require_same_grid(grid, velocity.u.front().grid, "frozen velocity");
}

}  // namespace

RealField rhs(const SolverState& state, const SchemeConfig& scheme, const StokesOperator& op) {
  check_inputs(state, scheme, op.grid());
  require_finite(state.rho, "rhs");
  return RealField(op.grid(), evaluate(op.grid(), state.rho.values, op, scheme).rhs);
}

RealField rhs(const SolverState& state, const SchemeConfig& scheme, const FrozenVelocity& velocity) {
  const Grid& grid = state.rho.grid;
  check_frozen(velocity, grid);
  check_inputs(state, scheme, grid);
  require_finite(state.rho, "rhs");
  return RealField(grid, evaluate(grid, state.rho.values, velocity, scheme).rhs);
}

SolverState step(const SolverState& state, const SchemeConfig& scheme, const StokesOperator& op,
                 double max_dt) {
  return rk4_step(state, scheme, op, op.grid(), max_dt);
}

SolverState step(const SolverState& state, const SchemeConfig& scheme, const FrozenVelocity& velocity,
                 double max_dt) {
  check_frozen(velocity, state.rho.grid);
  return rk4_step(state, scheme, velocity, state.rho.grid, max_dt);
}

}  // namespace fst
