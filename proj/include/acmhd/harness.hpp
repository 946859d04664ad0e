#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "acmhd/diagnostics.hpp"
#include "acmhd/solver.hpp"

namespace acmhd {

struct RateFit {
  double exponent = 0;   // slope of log y against log x
  double prefactor = 0;  // exp of the intercept
  double r2 = 0;
  int n = 0;             // samples used
};

// Least-squares power-law fit y ~ prefactor * x^exponent. All samples must
// be positive and finite; with identical y values r2 is reported as 1.
RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y);

struct SweepEntry {
  double epsilon = 0;
  double qu_l2l4 = 0;      // L^2 in t, L^4 in x of the gradient part of u
  double qB_l2l4 = 0;
  double pu_diff = 0;      // L^2 in t and x of P u - u_ref over the snapshot grid
  double pB_diff = 0;
  double strich_p = 0;     // eps^{3/8} ||p||_{L^4 W^{-2,4}}
  double strich_dtp = 0;   // eps^{7/8} ||dt p||_{L^4 W^{-3,4}}, via dt p = -div u / eps
  double eps_dtp_hm1 = 0;  // sup_t eps ||dt p||_{H^-1} = sup_t ||div u||_{H^-1}
};

struct SweepSpec {
  int n = 32;
  double box = 2 * M_PI;
  double mu = 1;
  double T = 1;
  double dt = 1e-3;
  int cadence = 20;
  DataKind data = DataKind::well_prepared;
  std::vector<double> epsilons = {1e-1, 1e-2, 1e-3, 1e-4};
  bool nonlinear = true;
  bool dt_control = true;  // rerun the smallest epsilon (and the reference) at dt/2
};

struct SweepReport {
  SweepSpec spec;
  std::vector<SweepEntry> entries;  // descending epsilon
  RateFit fit_qu, fit_qB, fit_pu, fit_pB;
  // a quantity sitting below its floor everywhere is reported as such
  // instead of being fitted on rounding noise
  bool qu_below_floor = false, qB_below_floor = false;
  bool pu_below_floor = false, pB_below_floor = false;
  double floor_q = 0, floor_p = 0;
  double dt_control_gap = -1;  // relative shift of pu_diff under dt -> dt/2
};

// Runs the relaxed system across spec.epsilons against one incompressible
// reference trajectory (same initial u and B after Leray projection) and
// fits the decay of the compressible remainders and of the projected
// differences in the relaxation parameter.
SweepReport epsilon_sweep(const SweepSpec& spec);

struct SelfConvergence {
  std::vector<double> dts;     // descending, halved each level
  std::vector<double> errors;  // final-time u/B gap between consecutive levels
  std::vector<double> ratios;  // errors[i] / errors[i+1]
  bool below_floor = false;
  double floor = 0;
};

// Step-halving study on one configuration; errors between consecutive
// refinements at the final time, combined over u and B.
SelfConvergence self_convergence(const Grid3& g, DataKind kind, double epsilon, double T,
                                 double dt0, int levels, const StepControls& controls);

struct MollifierFamilyCheck {
  std::string name;
  std::vector<double> ratios;  // one per (field, alpha) pair
  double max_ratio = 0;
  double median_ratio = 0;
};

struct MollifierCheck {
  MollifierFamilyCheck gradient_bound;  // alpha^{1/4} ||grad G_a f|| / ||f||_{H^{3/4}}
  MollifierFamilyCheck sup_bound;       // alpha^{3/2} ||G_a f||_inf / ||f||_{L^2}
};

// Measures the two smoothing estimates of the Gaussian low-pass G_alpha on
// random fields shaped so each bound is saturated uniformly: a |k|^{-7/4}
// spectrum for the gradient bound, white noise for the sup bound. alpha runs
// over {2^-1, ..., 2^-5}; the grid must resolve 1/alpha_min.
MollifierCheck mollifier_estimate_check(int n, int n_fields, unsigned seed);

struct ProbeSpec {
  int n = 32;
  double box = 2 * M_PI;
  double epsilon = 1;
  double dt = 0.02;
  std::vector<double> horizons = {5, 10, 20};
  double sponge_strength = 20;
  double window_frac = 0.25;      // window radius as a fraction of box/2
  double pulse_width_frac = 0.35; // pulse st. dev. as a fraction of the window radius
};

struct ProbeResult {
  std::vector<double> horizons;
  std::vector<double> window_on;   // window acoustic energy with the sponge
  std::vector<double> window_off;  // same without it (recurrence re-fills it)
  double window_initial = 0;
  double total_initial = 0;
  double total_off_final = 0;  // conservation control, rotation-only run
  double total_on_final = 0;   // what the sponge left over
};

// Local acoustic energy decay: a pressure pulse centered in a measurement
// window radiates outward; a smooth sponge annulus near the cell boundary
// absorbs what arrives, emulating radiation to infinity. The control run
// without the sponge checks that nothing else dissipates. Linear dynamics
// (no advection, no viscosity), u and p only.
ProbeResult local_decay_probe(const ProbeSpec& spec);

}  // namespace acmhd
