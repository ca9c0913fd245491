#pragma once

#include <limits>
#include <optional>

#include "fst/field.hpp"
#include "fst/velocity_law.hpp"

namespace fst {

enum class DtRule { fixed, cfl_adaptive };

struct SchemeConfig {
  DtRule dt_rule = DtRule::cfl_adaptive;
  double dt = 1e-2;   // used by DtRule::fixed
  double cfl = 0.5;   // used by DtRule::cfl_adaptive, in (0, 1]
  std::optional<EquilibriumProfile> equilibrium;

  void validate() const;
};

/// Floor on max|u| in the CFL rule.
inline constexpr double kVelocityFloor = 1e-8;

struct SolverState {
  double t = 0.0;
  RealField rho;
  long step_count = 0;
  double dt = 0.0;  // size of the last step taken
  double cfl = 0.5;
  bool diverged = false;
  double diverged_time = std::numeric_limits<double>::quiet_NaN();
};

/// Velocity field held fixed in time (passive transport), bypassing the
/// Stokes law.
struct FrozenVelocity {
  VectorField u;
};

/// -div(rho u) [- d_d R u_d], dealiased; in friedrichs mode the projector A_n
/// is applied outermost. Throws std::runtime_error on a diverged state.
RealField rhs(const SolverState& state, const SchemeConfig& scheme, const StokesOperator& op);
RealField rhs(const SolverState& state, const SchemeConfig& scheme, const FrozenVelocity& velocity);

/// One classical RK4 step. The step size is the fixed dt or c h / max(|u|, eps),
/// clipped to `max_dt`. A non-finite stage returns the state flagged diverged
/// with the stage time recorded.
SolverState step(const SolverState& state, const SchemeConfig& scheme, const StokesOperator& op,
                 double max_dt = std::numeric_limits<double>::infinity());
SolverState step(const SolverState& state, const SchemeConfig& scheme, const FrozenVelocity& velocity,
                 double max_dt = std::numeric_limits<double>::infinity());

}  // namespace fst
