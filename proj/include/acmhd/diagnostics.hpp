#pragma once

#include "acmhd/spectral.hpp"
#include "acmhd/state.hpp"

namespace acmhd {

// Total energy (1/2) (||u||^2 + ||B||^2 + eps ||p||^2 + eps ||phi||^2).
double energy(const AcState& s);
double energy(const IncState& s);

DiagRecord instantaneous_diagnostics(const AcState& s);
DiagRecord instantaneous_diagnostics(const IncState& s);

// Worst relative defect, over the records, of the two-sided energy ledger
//   E_n + trapezoid of (mu ||grad u||^2 + ||grad B||^2) against E_0,
// normalized by E_0.
double energy_balance_residual(const Trajectory& tr);

// Largest signed value over the records of the one-sided ledger built from
// right-endpoint dissipation rectangles; nonpositive means the energy
// inequality holds at every record.
double energy_inequality_slack(const Trajectory& tr);

// Field selectors for trajectory norms. Qu/QB are the gradient (curl-free)
// parts, Pu/PB the solenoidal parts; div_u/div_B are scalar divergences.
enum class FieldSel { u, B, p, phi, Qu, QB, Pu, PB, div_u, div_B };

// L^q in time over the snapshot grid (trapezoid; q may be infinity) of the
// spatial W^{s,r} norm, computed per snapshot via the Bessel (inhomogeneous)
// or Riesz (homogeneous) multiplier. r may be infinity when s keeps the
// field in physical reach.
double spacetime_norm(const Trajectory& tr, FieldSel sel, double q, double r, double s,
                      Sobolev flavor = Sobolev::inhomogeneous);

// L^2 in t and x of f(. + h) - f(.) where h = lag * snapshot spacing.
double time_modulus(const Trajectory& tr, FieldSel sel, int lag);

enum class WaveField { pressure, potential };

struct WaveResidual {
  double residual;  // rms over centers of the W^{-2,2} defect
  double scale;     // rms size of the second-difference term, for context
  int stride;       // half-stencil width in snapshots
  int centers;
};

// How well the pressure (or magnetic potential) satisfies its second-order
// wave equation in the fast time tau = t / sqrt(eps): a central second
// difference across `stride` snapshots stands in for d^2/dtau^2 and the
// defect against Laplacian plus forcing is measured in W^{-2,2}. Snapshots
// must carry p (resp. phi) together with u and B.
WaveResidual wave_residual(const Trajectory& tr, WaveField which, int stride);

struct WeakResidual {
  double momentum;   // worst defect over the test fields
  double induction;
  double scale;      // size of the transport term, context for the defects
  int n_test;
};

// Distributional check of the trajectory: for a family of solenoidal test
// fields (band limit 3) modulated by a smooth time bump, integrates the
// momentum and induction equations by parts and reports the worst defect.
// Pressure and potential gradients pair to zero with divergence-free test
// fields, so the same form serves the relaxed and the reference system.
WeakResidual weak_residual(const Trajectory& tr, int n_test = 5, unsigned seed = 1234);

}  // namespace acmhd
