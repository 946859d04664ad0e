#include "acmhd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acmhd/errors.hpp"
#include "acmhd/random_fields.hpp"
#include "acmhd/vector_calculus.hpp"

namespace acmhd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ParamError("fit_rate: sample arrays differ in length");
  if (x.size() < 2) throw ParamError("fit_rate: need at least two samples");
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw ParamError("fit_rate: samples must be positive and finite");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double det = n * sxx - sx * sx;
  if (det <= 0) throw ParamError("fit_rate: abscissas must not coincide");
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;

  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (int i = 0; i < n; ++i) {
    const double fit = intercept + slope * lx[i];
    ss_res += (ly[i] - fit) * (ly[i] - fit);
    ss_tot += (ly[i] - ybar) * (ly[i] - ybar);
  }
  const double r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return {slope, std::exp(intercept), r2, n};
}

namespace {

double projected_diff_l2(const Trajectory& tr, const Trajectory& ref, bool magnetic) {
  if (tr.snapshots.size() != ref.snapshots.size())
    throw ContractError("sweep: trajectories sample different time grids");
  std::vector<double> sq(tr.snapshots.size());
  for (std::size_t j = 0; j < tr.snapshots.size(); ++j) {
    const Snapshot& a = tr.snapshots[j];
    const Snapshot& b = ref.snapshots[j];
    if (std::abs(a.time - b.time) > 1e-7)
      throw ContractError("sweep: snapshot times do not line up");
    const Vec3Field& raw = magnetic ? *a.B : *a.u;
    const Vec3Field& target = magnetic ? *b.B : *b.u;
    Vec3Field proj = to_physical(leray_P(to_spectral(raw)));
    double acc = 0;
    for (int i = 0; i < 3; ++i) {
      double d = l2_norm(Field::physical(proj.grid(), proj[i].ph() - target[i].ph()));
      acc += d * d;
    }
    sq[j] = acc;
  }
  double s = 0;
  for (double v : sq) s += v;
  s -= 0.5 * (sq.front() + sq.back());
  return std::sqrt(tr.snapshot_dt() * s);
}

RateFit fit_above_floor(const std::vector<double>& eps, const std::vector<double>& ys,
                        double floor, bool& below) {
  std::vector<double> xs_f, ys_f;
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (ys[i] > floor) {
      xs_f.push_back(eps[i]);
      ys_f.push_back(ys[i]);
    }
  below = xs_f.size() < 2;
  if (below) return RateFit{0, 0, 0, static_cast<int>(xs_f.size())};
  return fit_rate(xs_f, ys_f);
}

}  // namespace

SweepReport epsilon_sweep(const SweepSpec& spec) {
  if (spec.epsilons.size() < 2) throw ParamError("sweep: need at least two epsilons");
  for (double e : spec.epsilons)
    if (!(e > 0)) throw ParamError("sweep: epsilons must be positive");

  SweepReport rep;
  rep.spec = spec;
  std::vector<double> eps = spec.epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());

  Grid3 g(spec.n, spec.box);
  SimOptions opts;
  opts.T = spec.T;
  opts.dt = spec.dt;
  opts.cadence = spec.cadence;
  opts.controls.mu = spec.mu;
  opts.controls.nonlinear = spec.nonlinear;
  opts.mask = {true, true, true, false};

  AcState first = make_initial_data(g, spec.data, eps.front());
  const double escale = std::max(1.0, std::sqrt(2.0 * energy(first)));
  rep.floor_q = 1e-10 * escale * std::sqrt(spec.T);
  rep.floor_p = 1e-10 * escale;

  IncState ref0{leray_P(first.u), leray_P(first.B), 0.0};
  Trajectory ref = simulate_reference(ref0, opts);

  for (double e : eps) {
    Trajectory tr = simulate_ac(make_initial_data(g, spec.data, e), opts);
    SweepEntry entry;
    entry.epsilon = e;
    entry.qu_l2l4 = std::sqrt(tr.records.back().q_norms.at("u:2,4,0"));
    entry.qB_l2l4 = std::sqrt(tr.records.back().q_norms.at("B:2,4,0"));
    entry.pu_diff = projected_diff_l2(tr, ref, false);
    entry.pB_diff = projected_diff_l2(tr, ref, true);
    entry.strich_p = std::pow(e, 3.0 / 8) * spacetime_norm(tr, FieldSel::p, 4, 4, -2);
    entry.strich_dtp =
        std::pow(e, -1.0 / 8) * spacetime_norm(tr, FieldSel::div_u, 4, 4, -3);
    entry.eps_dtp_hm1 = spacetime_norm(tr, FieldSel::div_u, kInf, 2, -1);
    rep.entries.push_back(entry);
  }

  std::vector<double> qu, qB, pu, pB;
  for (const SweepEntry& e : rep.entries) {
    qu.push_back(e.qu_l2l4);
    qB.push_back(e.qB_l2l4);
    pu.push_back(e.pu_diff);
    pB.push_back(e.pB_diff);
  }
  rep.fit_qu = fit_above_floor(eps, qu, rep.floor_q, rep.qu_below_floor);
  rep.fit_qB = fit_above_floor(eps, qB, rep.floor_q, rep.qB_below_floor);
  rep.fit_pu = fit_above_floor(eps, pu, rep.floor_p, rep.pu_below_floor);
  rep.fit_pB = fit_above_floor(eps, pB, rep.floor_p, rep.pB_below_floor);

  if (spec.dt_control) {
    SimOptions half = opts;
    half.dt = opts.dt / 2;
    half.cadence = opts.cadence * 2;
    Trajectory ref_half = simulate_reference(ref0, half);
    Trajectory tr_half = simulate_ac(make_initial_data(g, spec.data, eps.back()), half);
    const double pu_half = projected_diff_l2(tr_half, ref_half, false);
    const double pu_full = rep.entries.back().pu_diff;
    rep.dt_control_gap = std::abs(pu_half - pu_full) / std::max(pu_full, rep.floor_p);
  }
  return rep;
}

SelfConvergence self_convergence(const Grid3& g, DataKind kind, double epsilon, double T,
                                 double dt0, int levels, const StepControls& controls) {
  if (levels < 2) throw ParamError("self convergence: need at least two refinement levels");
  SelfConvergence out;

  std::vector<Vec3Field> finals_u, finals_B;
  double e0 = 0;
  for (int lvl = 0; lvl <= levels; ++lvl) {
    SimOptions opts;
    opts.T = T;
    opts.dt = dt0 / std::pow(2.0, lvl);
    opts.cadence = static_cast<int>(std::lround(T / opts.dt));
    opts.controls = controls;
    opts.mask = {true, true, false, false};
    AcState s0 = make_initial_data(g, kind, epsilon);
    if (lvl == 0) e0 = energy(s0);
    Trajectory tr = simulate_ac(std::move(s0), opts);
    finals_u.push_back(*tr.snapshots.back().u);
    finals_B.push_back(*tr.snapshots.back().B);
    if (lvl > 0) out.dts.push_back(dt0 / std::pow(2.0, lvl - 1));
  }

  for (int i = 0; i < levels; ++i) {
    double acc = 0;
    for (int c = 0; c < 3; ++c) {
      double du = l2_norm(Field::physical(g, finals_u[i][c].ph() - finals_u[i + 1][c].ph()));
      double dB = l2_norm(Field::physical(g, finals_B[i][c].ph() - finals_B[i + 1][c].ph()));
      acc += du * du + dB * dB;
    }
    out.errors.push_back(std::sqrt(acc));
  }
  for (int i = 0; i + 1 < levels; ++i) out.ratios.push_back(out.errors[i] / out.errors[i + 1]);

  out.floor = 1e-10 * std::max(1.0, std::sqrt(2.0 * e0));
  out.below_floor =
      std::all_of(out.errors.begin(), out.errors.end(), [&](double e) { return e < out.floor; });
  return out;
}

MollifierCheck mollifier_estimate_check(int n, int n_fields, unsigned seed) {
  if (n_fields < 2) throw ParamError("mollifier check: need at least two fields");
  const std::vector<double> alphas = {0.5, 0.25, 0.125, 0.0625, 0.03125};
  Grid3 g(n, 2 * M_PI);
  const int kband = n / 3;
  if (kband < static_cast<int>(std::lround(1.0 / alphas.back())) + 10)
    throw ParamError("mollifier check: grid too coarse to resolve 1/alpha");

  MollifierCheck out;
  out.gradient_bound.name = "gradient-smoothing";
  out.sup_bound.name = "sup-smoothing";

  for (int f = 0; f < n_fields; ++f) {
    Field rough = random_scalar(g, kband, 1.75, seed + 2 * f);
    const double rough_ref = sobolev_norm(rough, 0.75, Sobolev::homogeneous);
    Field white = random_scalar(g, kband, 0.0, seed + 2 * f + 1);
    const double white_ref = l2_norm(white);
    for (double a : alphas) {
      double grad = sobolev_norm(mollify(rough, a), 1.0, Sobolev::homogeneous);
      out.gradient_bound.ratios.push_back(std::pow(a, 0.25) * grad / rough_ref);
      double sup = lp_norm(to_physical(mollify(white, a)), kInf);
      out.sup_bound.ratios.push_back(std::pow(a, 1.5) * sup / white_ref);
    }
  }
  for (MollifierFamilyCheck* fam : {&out.gradient_bound, &out.sup_bound}) {
    fam->max_ratio = *std::max_element(fam->ratios.begin(), fam->ratios.end());
    fam->median_ratio = median(fam->ratios);
  }
  return out;
}

namespace {

Eigen::ArrayXd smoothstep01(const Eigen::ArrayXd& t) {
  Eigen::ArrayXd c = t.min(1.0).max(0.0);
  return c * c * (3.0 - 2.0 * c);
}

}  // namespace

ProbeResult local_decay_probe(const ProbeSpec& spec) {
  if (spec.horizons.empty()) throw ParamError("probe: need at least one horizon");
  for (std::size_t i = 0; i < spec.horizons.size(); ++i) {
    if (!(spec.horizons[i] > 0)) throw ParamError("probe: horizons must be positive");
    if (i > 0 && spec.horizons[i] <= spec.horizons[i - 1])
      throw ParamError("probe: horizons must increase");
  }
  if (!(spec.window_frac > 0 && spec.window_frac < 0.5))
    throw ParamError("probe: window_frac must lie in (0, 0.5)");
  if (!(spec.sponge_strength > 0)) throw ParamError("probe: sponge strength must be positive");

  Grid3 g(spec.n, spec.box);
  const double half = spec.box / 2;
  const double wr = spec.window_frac * half;  // window radius
  const double r0 = 0.75 * half;              // sponge starts here
  if (1.5 * wr >= r0) throw ParamError("probe: window taper overlaps the sponge annulus");

  // nearest-image distance from the cell center
  auto wrap = [&](const Eigen::ArrayXd& x) -> Eigen::ArrayXd {
    Eigen::ArrayXd d = (x - half).abs();
    return d.min(spec.box - d);
  };
  Eigen::ArrayXd r =
      (wrap(g.x1()).square() + wrap(g.x2()).square() + wrap(g.x3()).square()).sqrt();

  Eigen::ArrayXd sigma = spec.sponge_strength * smoothstep01((r - r0) / (half - r0));
  Eigen::ArrayXd damp = (-sigma * spec.dt).exp();
  Eigen::ArrayXd window = 1.0 - smoothstep01((r - wr) / (0.5 * wr));

  // mean-free normalized pressure pulse, u = B = phi = 0
  const double s0 = spec.pulse_width_frac * wr;
  Eigen::ArrayXd pulse = (-r.square() / (2 * s0 * s0)).exp();
  Field p0_raw = dealias(to_spectral(Field::physical(g, pulse)));
  Eigen::ArrayXcd pc = p0_raw.sp();
  pc[0] = 0;
  Field p0 = Field::spectral(g, pc / l2_norm(Field::spectral(g, pc)));

  AcState init{Vec3Field::zeros(g, Rep::spectral), Vec3Field::zeros(g, Rep::spectral), p0,
               Field::zeros(g, Rep::spectral), spec.epsilon, 0.0};

  auto window_energy = [&](const AcState& s) {
    Vec3Field u = to_physical(s.u);
    Eigen::ArrayXd dens = u[0].ph().square() + u[1].ph().square() + u[2].ph().square() +
                          spec.epsilon * to_physical(s.p).ph().square();
    return 0.5 * g.cell_volume() * (window * dens).sum();
  };
  auto sponge = [&](const AcState& s) {
    auto soak = [&](const Field& f) {
      return dealias(to_spectral(Field::physical(g, to_physical(f).ph() * damp)));
    };
    return AcState{Vec3Field(soak(s.u[0]), soak(s.u[1]), soak(s.u[2])), s.B, soak(s.p), s.phi,
                   s.epsilon, s.time};
  };

  ProbeResult out;
  out.horizons = spec.horizons;
  out.window_initial = window_energy(init);
  out.total_initial = energy(init);

  // absorbing run, fixed dt
  AcState s = init;
  std::size_t next = 0;
  const long total_steps = std::lround(spec.horizons.back() / spec.dt);
  if (std::abs(total_steps * spec.dt - spec.horizons.back()) > 1e-9)
    throw ParamError("probe: horizons must be multiples of dt");
  for (long k = 1; k <= total_steps; ++k) {
    s = acoustic_step(s, spec.dt / 2);
    s = sponge(s);
    s = acoustic_step(s, spec.dt / 2);
    const double t = k * spec.dt;
    while (next < spec.horizons.size() && t >= spec.horizons[next] - 1e-9) {
      out.window_on.push_back(window_energy(s));
      ++next;
    }
  }
  out.total_on_final = energy(s);

  // control run: exact rotations only, jump horizon to horizon
  AcState c = init;
  double reached = 0;
  for (double h : spec.horizons) {
    c = acoustic_step(c, h - reached);
    reached = h;
    out.window_off.push_back(window_energy(c));
  }
  out.total_off_final = energy(c);
  return out;
}

}  // namespace acmhd
