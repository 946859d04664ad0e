#pragma once

#include <functional>

#include "acmhd/state.hpp"

namespace acmhd {

enum class DataKind { well_prepared, ill_prepared, custom };

// Advective/Lorentz right-hand side, dealiased:
//   du = D[ -(u.grad)u - (div u) u / 2 + curl B x B ]
//   dB = curl D[ u x B ]
// max_u / max_B are the largest pointwise component magnitudes seen on the
// grid, for CFL monitoring. Both inputs must be spectral.
struct NonlinearRhs {
  Vec3Field du;
  Vec3Field dB;
  double max_u;
  double max_B;
};

NonlinearRhs nonlinear_rhs(const Vec3Field& u, const Vec3Field& B);

struct StepControls {
  double mu = 1;          // kinematic viscosity; magnetic diffusivity is 1
  double cfl_limit = 0.5; // abort threshold on dt * max|field| / dx
  bool nonlinear = true;  // false freezes the advective/Lorentz terms
};

// Exact per-mode rotation of the acoustic subsystem
//   d/dt u = -grad p,   eps d/dt p = -div u   (and the B/phi copy).
// Unitary in the scaled variables, so energy is preserved to rounding.
AcState acoustic_step(const AcState& s, double dt);

// Exact integrating-factor heat step on u and B; p, phi untouched.
AcState diffusion_step(const AcState& s, double dt, double mu);

// Strang splitting: acoustic and diffusion half steps wrap one Heun step of
// the nonlinear terms. Throws SolverAbort when the CFL estimate exceeds
// controls.cfl_limit or the state stops being finite.
AcState strang_step(const AcState& s, double dt, const StepControls& c);

// Incompressible reference step: diffusion half steps around a Heun step of
// the Leray-projected nonlinear terms.
IncState reference_step(const IncState& s, double dt, const StepControls& c);

// Deterministic initial states on the periodic box. The well-prepared
// state is solenoidal with zero p and phi; the ill-prepared one adds O(1)
// gradient parts and pressure/potential of size epsilon^{-1/4}. DataKind::
// custom is a placeholder resolved by loading a checkpoint and is rejected
// here.
AcState make_initial_data(const Grid3& g, DataKind kind, double epsilon);

// Assembles a state from physical-space samples (transforms + dealias).
AcState state_from_physical(const Vec3Field& u, const Vec3Field& B,
                            const Field& p, const Field& phi, double epsilon,
                            double time);

struct SimOptions {
  double T = 1;
  double dt = 1e-3;
  int cadence = 1;  // snapshot every cadence steps
  SnapshotMask mask;
  StepControls controls;
  // Called on every snapshot as it is produced; when keep_snapshots is
  // false the trajectory stores only diagnostics and the callback is the
  // sole consumer.
  std::function<void(const Snapshot&)> on_snapshot;
  bool keep_snapshots = true;
};

// March the relaxed system from s over [s.time, s.time + T]. T must be an
// integer multiple of dt. Records one DiagRecord per step (plus the initial
// one) and snapshots every cadence steps.
Trajectory simulate_ac(AcState s, const SimOptions& o);

// Same driver for the incompressible reference system.
Trajectory simulate_reference(IncState s, const SimOptions& o);

}  // namespace acmhd
