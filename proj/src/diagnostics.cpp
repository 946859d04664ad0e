#include "acmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "acmhd/errors.hpp"
#include "acmhd/random_fields.hpp"
#include "acmhd/solver.hpp"
#include "acmhd/vector_calculus.hpp"

namespace acmhd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trapezoid(const std::vector<double>& v, double h) {
  if (v.size() < 2) return 0;
  double s = 0;
  for (double x : v) s += x;
  return h * (s - 0.5 * (v.front() + v.back()));
}

const Vec3Field& need_u(const Snapshot& s) {
  if (!s.u) throw ContractError("snapshot does not carry u");
  return *s.u;
}
const Vec3Field& need_B(const Snapshot& s) {
  if (!s.B) throw ContractError("snapshot does not carry B");
  return *s.B;
}
const Field& need_p(const Snapshot& s) {
  if (!s.p) throw ContractError("snapshot does not carry p");
  return *s.p;
}
const Field& need_phi(const Snapshot& s) {
  if (!s.phi) throw ContractError("snapshot does not carry phi");
  return *s.phi;
}

bool vector_sel(FieldSel sel) {
  switch (sel) {
    case FieldSel::u:
    case FieldSel::B:
    case FieldSel::Qu:
    case FieldSel::QB:
    case FieldSel::Pu:
    case FieldSel::PB:
      return true;
    default:
      return false;
  }
}

// natural representation: stored fields stay physical, derived ones spectral
Vec3Field extract_vector(const Snapshot& snap, FieldSel sel) {
  switch (sel) {
    case FieldSel::u:
      return need_u(snap);
    case FieldSel::B:
      return need_B(snap);
    case FieldSel::Qu:
      return leray_Q(to_spectral(need_u(snap)));
    case FieldSel::QB:
      return leray_Q(to_spectral(need_B(snap)));
    case FieldSel::Pu:
      return leray_P(to_spectral(need_u(snap)));
    case FieldSel::PB:
      return leray_P(to_spectral(need_B(snap)));
    default:
      throw ContractError("selector is not a vector field");
  }
}

Field extract_scalar(const Snapshot& snap, FieldSel sel) {
  switch (sel) {
    case FieldSel::p:
      return need_p(snap);
    case FieldSel::phi:
      return need_phi(snap);
    case FieldSel::div_u:
      return divergence(to_spectral(need_u(snap)));
    case FieldSel::div_B:
      return divergence(to_spectral(need_B(snap)));
    default:
      throw ContractError("selector is not a scalar field");
  }
}

double space_norm(Field f, double r, double s, Sobolev flavor) {
  if (s != 0) {
    if (f.rep() == Rep::physical) f = to_spectral(f);
    f = sobolev_multiplier(f, s, flavor);
  }
  if (r == 2) return l2_norm(f);
  if (f.rep() == Rep::spectral) f = to_physical(f);
  return lp_norm(f, r);
}

double space_norm(Vec3Field f, double r, double s, Sobolev flavor) {
  if (s != 0) {
    if (f.rep() == Rep::physical) f = to_spectral(f);
    f = Vec3Field(sobolev_multiplier(f[0], s, flavor), sobolev_multiplier(f[1], s, flavor),
                  sobolev_multiplier(f[2], s, flavor));
  }
  if (r == 2) return l2_norm(f);
  if (f.rep() == Rep::spectral) f = to_physical(f);
  return lp_norm(f, r);
}

Field sub(const Field& a, const Field& b) {
  if (a.rep() != b.rep()) throw ContractError("field difference across representations");
  if (a.rep() == Rep::physical) return Field::physical(a.grid(), a.ph() - b.ph());
  return Field::spectral(a.grid(), a.sp() - b.sp());
}

Vec3Field sub(const Vec3Field& a, const Vec3Field& b) {
  return Vec3Field(sub(a[0], b[0]), sub(a[1], b[1]), sub(a[2], b[2]));
}

// real L2 pairing of spectral fields
double inner(const Vec3Field& a, const Vec3Field& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i) s += (a[i].sp() * b[i].sp().conjugate()).real().sum();
  return a.grid().volume() * s;
}

// C-infinity bump on (a, b), zero outside, with its derivative
struct Bump {
  double a, b;
  double value(double t) const {
    double x = (t - a) / (b - a);
    if (x <= 0 || x >= 1) return 0;
    return std::exp(-1.0 / (x * (1.0 - x)));
  }
  double slope(double t) const {
    double x = (t - a) / (b - a);
    if (x <= 0 || x >= 1) return 0;
    double v = std::exp(-1.0 / (x * (1.0 - x)));
    double d = (2.0 * x - 1.0) / (x * x * (1.0 - x) * (1.0 - x));
    return -v * d / (b - a);
  }
};

}  // namespace

double energy(const AcState& s) {
  double u = l2_norm(s.u), B = l2_norm(s.B), p = l2_norm(s.p), phi = l2_norm(s.phi);
  return 0.5 * (u * u + B * B + s.epsilon * (p * p + phi * phi));
}

double energy(const IncState& s) {
  double u = l2_norm(s.u), B = l2_norm(s.B);
  return 0.5 * (u * u + B * B);
}

namespace {

template <class State>
DiagRecord common_diagnostics(const State& s) {
  DiagRecord r;
  r.time = s.time;
  r.energy = energy(s);
  double eu = sobolev_norm(s.u, 1, Sobolev::homogeneous);
  double eb = sobolev_norm(s.B, 1, Sobolev::homogeneous);
  r.enstrophy_u = eu * eu;
  r.enstrophy_B = eb * eb;
  r.div_u = l2_norm(divergence(s.u));
  r.div_B = l2_norm(divergence(s.B));
  r.q_u_l4 = lp_norm(to_physical(leray_Q(s.u)), 4);
  r.q_B_l4 = lp_norm(to_physical(leray_Q(s.B)), 4);
  return r;
}

}  // namespace

DiagRecord instantaneous_diagnostics(const AcState& s) { return common_diagnostics(s); }
DiagRecord instantaneous_diagnostics(const IncState& s) { return common_diagnostics(s); }

double energy_balance_residual(const Trajectory& tr) {
  const auto& rec = tr.records;
  if (rec.size() < 2) throw ParamError("energy ledger needs at least two records");
  const double e0 = rec[0].energy;
  double diss = 0, worst = 0;
  for (std::size_t n = 1; n < rec.size(); ++n) {
    double dprev = tr.mu * rec[n - 1].enstrophy_u + rec[n - 1].enstrophy_B;
    double dnow = tr.mu * rec[n].enstrophy_u + rec[n].enstrophy_B;
    diss += 0.5 * tr.dt * (dprev + dnow);
    worst = std::max(worst, std::abs(rec[n].energy + diss - e0));
  }
  return worst / e0;
}

double energy_inequality_slack(const Trajectory& tr) {
  const auto& rec = tr.records;
  if (rec.size() < 2) throw ParamError("energy ledger needs at least two records");
  const double e0 = rec[0].energy;
  double diss = 0, worst = -kInf;
  for (std::size_t n = 1; n < rec.size(); ++n) {
    diss += tr.dt * (tr.mu * rec[n].enstrophy_u + rec[n].enstrophy_B);
    worst = std::max(worst, (rec[n].energy + diss - e0) / e0);
  }
  return worst;
}

double spacetime_norm(const Trajectory& tr, FieldSel sel, double q, double r, double s,
                      Sobolev flavor) {
  if (!(q >= 1) && q != kInf) throw ParamError("spacetime_norm: q must be >= 1 or inf");
  if (!(r >= 1) && r != kInf) throw ParamError("spacetime_norm: r must be >= 1 or inf");
  const auto& snaps = tr.snapshots;
  if (snaps.size() < 2) throw ParamError("spacetime_norm: need at least two snapshots");

  std::vector<double> xs;
  xs.reserve(snaps.size());
  for (const Snapshot& snap : snaps) {
    if (vector_sel(sel))
      xs.push_back(space_norm(extract_vector(snap, sel), r, s, flavor));
    else
      xs.push_back(space_norm(extract_scalar(snap, sel), r, s, flavor));
  }
  if (q == kInf) return *std::max_element(xs.begin(), xs.end());
  std::vector<double> pow_q(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pow_q[i] = std::pow(xs[i], q);
  return std::pow(trapezoid(pow_q, tr.snapshot_dt()), 1.0 / q);
}

double time_modulus(const Trajectory& tr, FieldSel sel, int lag) {
  const auto& snaps = tr.snapshots;
  if (lag < 1 || snaps.size() < static_cast<std::size_t>(lag) + 2)
    throw ParamError("time_modulus: lag leaves fewer than two sample pairs");

  std::vector<double> sq;
  sq.reserve(snaps.size() - lag);
  for (std::size_t j = 0; j + lag < snaps.size(); ++j) {
    double d;
    if (vector_sel(sel))
      d = l2_norm(sub(extract_vector(snaps[j + lag], sel), extract_vector(snaps[j], sel)));
    else
      d = l2_norm(sub(extract_scalar(snaps[j + lag], sel), extract_scalar(snaps[j], sel)));
    sq.push_back(d * d);
  }
  return std::sqrt(trapezoid(sq, tr.snapshot_dt()));
}

WaveResidual wave_residual(const Trajectory& tr, WaveField which, int stride) {
  if (!(tr.epsilon > 0)) throw ParamError("wave residual is defined for relaxed runs only");
  if (stride < 1) throw ParamError("wave residual: stride must be >= 1");
  const auto& snaps = tr.snapshots;
  if (snaps.size() < static_cast<std::size_t>(2 * stride) + 1)
    throw ParamError("wave residual: not enough snapshots for the stencil");

  const double dtau = stride * tr.snapshot_dt() / std::sqrt(tr.epsilon);
  double sum_def = 0, sum_scale = 0;
  int centers = 0;

  for (std::size_t j = stride; j + stride < snaps.size(); ++j) {
    const Field qm = to_spectral(which == WaveField::pressure ? need_p(snaps[j - stride])
                                                              : need_phi(snaps[j - stride]));
    const Field qc = to_spectral(which == WaveField::pressure ? need_p(snaps[j])
                                                              : need_phi(snaps[j]));
    const Field qp = to_spectral(which == WaveField::pressure ? need_p(snaps[j + stride])
                                                              : need_phi(snaps[j + stride]));
    Eigen::ArrayXcd fd = (qp.sp() - 2.0 * qc.sp() + qm.sp()) / (dtau * dtau);

    Eigen::ArrayXcd rhs;
    if (which == WaveField::pressure) {
      Vec3Field u = to_spectral(need_u(snaps[j]));
      Field divu = divergence(u);
      rhs = -tr.mu * laplacian(divu).sp();
      if (tr.nonlinear) {
        Vec3Field B = to_spectral(need_B(snaps[j]));
        rhs -= divergence(nonlinear_rhs(u, B).du).sp();
      }
    } else {
      Vec3Field B = to_spectral(need_B(snaps[j]));
      rhs = -laplacian(divergence(B)).sp();
    }

    Field defect = Field::spectral(tr.grid, fd - laplacian(qc).sp() - rhs);
    Field second = Field::spectral(tr.grid, std::move(fd));
    double nd = sobolev_norm(defect, -2.0, Sobolev::inhomogeneous);
    double ns = sobolev_norm(second, -2.0, Sobolev::inhomogeneous);
    sum_def += nd * nd;
    sum_scale += ns * ns;
    ++centers;
  }
  return {std::sqrt(sum_def / centers), std::sqrt(sum_scale / centers), stride, centers};
}

WeakResidual weak_residual(const Trajectory& tr, int n_test, unsigned seed) {
  if (n_test < 1) throw ParamError("weak residual: need at least one test field");
  const auto& snaps = tr.snapshots;
  if (snaps.size() < 5) throw ParamError("weak residual: need at least five snapshots");

  const double t0 = snaps.front().time;
  const double horizon = snaps.back().time - t0;
  const Bump chi{t0 + 0.15 * horizon, t0 + 0.85 * horizon};

  std::vector<Vec3Field> psi, lap_psi;
  psi.reserve(n_test);
  lap_psi.reserve(n_test);
  for (int m = 0; m < n_test; ++m) {
    psi.push_back(random_solenoidal(tr.grid, 3, 0.0, seed + m));
    lap_psi.push_back(apply(psi.back(), laplacian));
  }

  // integrands per snapshot, then trapezoid in time
  std::vector<std::vector<double>> mom(n_test), ind(n_test), mag(n_test);
  for (const Snapshot& snap : snaps) {
    const double c = chi.value(snap.time);
    const double cp = chi.slope(snap.time);
    Vec3Field u = to_spectral(need_u(snap));
    Vec3Field B = to_spectral(need_B(snap));
    bool active = (c != 0 || cp != 0) && tr.nonlinear;
    NonlinearRhs f = active ? nonlinear_rhs(u, B)
                            : NonlinearRhs{Vec3Field::zeros(tr.grid, Rep::spectral),
                                           Vec3Field::zeros(tr.grid, Rep::spectral), 0, 0};
    for (int m = 0; m < n_test; ++m) {
      double uw = inner(u, psi[m]);
      mom[m].push_back(-cp * uw - c * (tr.mu * inner(u, lap_psi[m]) + inner(f.du, psi[m])));
      ind[m].push_back(-cp * inner(B, psi[m]) -
                       c * (inner(B, lap_psi[m]) + inner(f.dB, psi[m])));
      mag[m].push_back(std::abs(cp * uw));
    }
  }

  WeakResidual out{0, 0, 0, n_test};
  const double h = tr.snapshot_dt();
  for (int m = 0; m < n_test; ++m) {
    out.momentum = std::max(out.momentum, std::abs(trapezoid(mom[m], h)));
    out.induction = std::max(out.induction, std::abs(trapezoid(ind[m], h)));
    out.scale = std::max(out.scale, trapezoid(mag[m], h));
  }
  return out;
}

}  // namespace acmhd
