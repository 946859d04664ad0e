#include "acmhd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "acmhd/diagnostics.hpp"
#include "acmhd/errors.hpp"
#include "acmhd/spectral.hpp"
#include "acmhd/vector_calculus.hpp"

namespace acmhd {
namespace {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;

ArrayXcd cmul(const ArrayXcd& v, const ArrayXd& w) {
  ArrayXcd out(v.size());
  out.real() = v.real() * w;
  out.imag() = v.imag() * w;
  return out;
}

// z -> -i z
ArrayXcd minus_i(const ArrayXcd& z) {
  ArrayXcd out(z.size());
  out.real() = z.imag();
  out.imag() = -z.real();
  return out;
}

Vec3Field scale_modes(const Vec3Field& v, const ArrayXd& m) {
  return Vec3Field(Field::spectral(v.grid(), cmul(v[0].sp(), m)),
                   Field::spectral(v.grid(), cmul(v[1].sp(), m)),
                   Field::spectral(v.grid(), cmul(v[2].sp(), m)));
}

// x + a y, spectral
Vec3Field axpy(const Vec3Field& x, double a, const Vec3Field& y) {
  return Vec3Field(Field::spectral(x.grid(), x[0].sp() + a * y[0].sp()),
                   Field::spectral(x.grid(), x[1].sp() + a * y[1].sp()),
                   Field::spectral(x.grid(), x[2].sp() + a * y[2].sp()));
}

double max_abs(const Vec3Field& v_ph) {
  double m = 0;
  for (int i = 0; i < 3; ++i) m = std::max(m, v_ph[i].ph().abs().maxCoeff());
  return m;
}

void check_cfl(double dt, double vmax, double dx, double limit) {
  const double cfl = dt * vmax / dx;
  if (!std::isfinite(vmax))
    throw SolverAbort("time step abandoned: state is no longer finite", cfl);
  if (cfl > limit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "time step abandoned: CFL estimate %.3g exceeds limit %.3g",
                  cfl, limit);
    throw SolverAbort(buf, cfl);
  }
}

}  // namespace

NonlinearRhs nonlinear_rhs(const Vec3Field& u, const Vec3Field& B) {
  const Grid3& g = u.grid();
  if (!g.same(B.grid())) throw ContractError("nonlinear_rhs: grid mismatch");

  Vec3Field u_ph = to_physical(u);
  Vec3Field B_ph = to_physical(B);
  Vec3Field curlB_ph = to_physical(curl(B));
  Vec3Field lorentz = cross(curlB_ph, B_ph);
  Vec3Field w_ph = cross(u_ph, B_ph);

  // rows[j][i] = d_j u_i as physical samples
  std::array<std::array<ArrayXd, 3>, 3> rows;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) rows[j][i] = to_physical(derivative(u[i], j)).ph();
  ArrayXd divu = rows[0][0] + rows[1][1] + rows[2][2];

  std::array<ArrayXd, 3> du_ph;
  for (int i = 0; i < 3; ++i) {
    ArrayXd adv = u_ph[0].ph() * rows[0][i] + u_ph[1].ph() * rows[1][i] +
                  u_ph[2].ph() * rows[2][i];
    du_ph[i] = -adv - 0.5 * divu * u_ph[i].ph() + lorentz[i].ph();
  }

  Vec3Field du = dealias(to_spectral(Vec3Field(Field::physical(g, std::move(du_ph[0])),
                                               Field::physical(g, std::move(du_ph[1])),
                                               Field::physical(g, std::move(du_ph[2])))));
  Vec3Field dB = curl(dealias(to_spectral(w_ph)));
  return {std::move(du), std::move(dB), max_abs(u_ph), max_abs(B_ph)};
}

AcState acoustic_step(const AcState& s, double dt) {
  const Grid3& g = s.p.grid();
  const double se = std::sqrt(s.epsilon);
  ArrayXd kn = g.ksq().sqrt();
  ArrayXd c = (kn * (dt / se)).cos();
  ArrayXd sn = (kn * (dt / se)).sin();
  ArrayXd inv = (kn > 0.0).select(kn.inverse(), 0.0);
  std::array<ArrayXd, 3> khat = {g.k(0) * inv, g.k(1) * inv, g.k(2) * inv};

  auto rotate = [&](const Vec3Field& v, const Field& q) {
    ArrayXcd a =
        cmul(v[0].sp(), khat[0]) + cmul(v[1].sp(), khat[1]) + cmul(v[2].sp(), khat[2]);
    ArrayXcd b = se * q.sp();
    ArrayXcd da = cmul(a, c) + minus_i(cmul(b, sn)) - a;
    ArrayXcd b2 = cmul(b, c) + minus_i(cmul(a, sn));
    Vec3Field vout(Field::spectral(g, v[0].sp() + cmul(da, khat[0])),
                   Field::spectral(g, v[1].sp() + cmul(da, khat[1])),
                   Field::spectral(g, v[2].sp() + cmul(da, khat[2])));
    return std::make_pair(std::move(vout), Field::spectral(g, b2 / se));
  };

  auto [u, p] = rotate(s.u, s.p);
  auto [B, phi] = rotate(s.B, s.phi);
  return {std::move(u), std::move(B), std::move(p), std::move(phi), s.epsilon, s.time + dt};
}

AcState diffusion_step(const AcState& s, double dt, double mu) {
  const Grid3& g = s.p.grid();
  ArrayXd eu = (-mu * dt * g.ksq()).exp();
  ArrayXd eb = (-dt * g.ksq()).exp();
  return {scale_modes(s.u, eu), scale_modes(s.B, eb), s.p, s.phi, s.epsilon, s.time + dt};
}

AcState strang_step(const AcState& s, double dt, const StepControls& c) {
  AcState a = acoustic_step(s, dt / 2);
  a = diffusion_step(a, dt / 2, c.mu);
  if (c.nonlinear) {
    NonlinearRhs r1 = nonlinear_rhs(a.u, a.B);
    check_cfl(dt, std::max(r1.max_u, r1.max_B), a.p.grid().dx(), c.cfl_limit);
    NonlinearRhs r2 = nonlinear_rhs(axpy(a.u, dt, r1.du), axpy(a.B, dt, r1.dB));
    if (!std::isfinite(r2.max_u + r2.max_B))
      throw SolverAbort("time step abandoned: state is no longer finite",
                        dt * std::max(r1.max_u, r1.max_B) / a.p.grid().dx());
    a.u = axpy(axpy(a.u, dt / 2, r1.du), dt / 2, r2.du);
    a.B = axpy(axpy(a.B, dt / 2, r1.dB), dt / 2, r2.dB);
  }
  a = diffusion_step(a, dt / 2, c.mu);
  a = acoustic_step(a, dt / 2);
  a.time = s.time + dt;
  return a;
}

IncState reference_step(const IncState& s, double dt, const StepControls& c) {
  const Grid3& g = s.u.grid();
  ArrayXd eu = (-c.mu * (dt / 2) * g.ksq()).exp();
  ArrayXd eb = (-(dt / 2) * g.ksq()).exp();
  Vec3Field u = scale_modes(s.u, eu);
  Vec3Field B = scale_modes(s.B, eb);
  if (c.nonlinear) {
    NonlinearRhs r1 = nonlinear_rhs(u, B);
    Vec3Field du1 = leray_P(r1.du);
    check_cfl(dt, std::max(r1.max_u, r1.max_B), g.dx(), c.cfl_limit);
    NonlinearRhs r2 = nonlinear_rhs(axpy(u, dt, du1), axpy(B, dt, r1.dB));
    Vec3Field du2 = leray_P(r2.du);
    if (!std::isfinite(r2.max_u + r2.max_B))
      throw SolverAbort("time step abandoned: state is no longer finite",
                        dt * std::max(r1.max_u, r1.max_B) / g.dx());
    u = axpy(axpy(u, dt / 2, du1), dt / 2, du2);
    B = axpy(axpy(B, dt / 2, r1.dB), dt / 2, r2.dB);
  }
  u = scale_modes(u, eu);
  B = scale_modes(B, eb);
  return {std::move(u), std::move(B), s.time + dt};
}

AcState state_from_physical(const Vec3Field& u, const Vec3Field& B, const Field& p,
                            const Field& phi, double epsilon, double time) {
  if (!(epsilon > 0)) throw ParamError("state: epsilon must be positive");
  const Grid3& g = u.grid();
  if (!g.same(B.grid()) || !g.same(p.grid()) || !g.same(phi.grid()))
    throw ContractError("state: fields live on different grids");
  return {dealias(to_spectral(u)), dealias(to_spectral(B)), dealias(to_spectral(p)),
          dealias(to_spectral(phi)), epsilon, time};
}

AcState make_initial_data(const Grid3& g, DataKind kind, double epsilon) {
  if (kind == DataKind::custom)
    throw ParamError("custom initial data must be supplied as a checkpoint file");
  if (!(epsilon > 0)) throw ParamError("initial data: epsilon must be positive");

  const double w = 2.0 * M_PI / g.box();
  ArrayXd sx = (w * g.x1()).sin(), cx = (w * g.x1()).cos();
  ArrayXd sy = (w * g.x2()).sin(), cy = (w * g.x2()).cos();
  ArrayXd sz = (w * g.x3()).sin(), cz = (w * g.x3()).cos();

  // Taylor-Green velocity and a solenoidal magnetic companion
  std::array<ArrayXd, 3> uv = {sx * cy * cz, -cx * sy * cz, ArrayXd::Zero(g.size())};
  std::array<ArrayXd, 3> bv = {0.5 * cx * sy * sz, 0.5 * sx * cy * sz, -sx * sy * cz};
  ArrayXd pv = ArrayXd::Zero(g.size());
  ArrayXd phiv = ArrayXd::Zero(g.size());

  if (kind == DataKind::ill_prepared) {
    auto unit_gradient = [&](const ArrayXd& chi) {
      Vec3Field grad = to_physical(gradient(to_spectral(Field::physical(g, chi))));
      double norm = l2_norm(grad);
      return std::make_pair(std::move(grad), norm);
    };
    auto [gu, nu] = unit_gradient(sx * sy * sz);
    auto [gb, nb] = unit_gradient(cx * cy * cz);
    for (int i = 0; i < 3; ++i) {
      uv[i] += (0.5 / nu) * gu[i].ph();
      bv[i] += (0.5 / nb) * gb[i].ph();
    }
    const double amp = 0.3 * std::pow(epsilon, -0.25);
    ArrayXd pbar = cx * cy * cz;
    ArrayXd phibar = sx * sy * sz;
    pv = (amp / l2_norm(Field::physical(g, pbar))) * pbar;
    phiv = (amp / l2_norm(Field::physical(g, phibar))) * phibar;
  }

  Vec3Field u(Field::physical(g, std::move(uv[0])), Field::physical(g, std::move(uv[1])),
              Field::physical(g, std::move(uv[2])));
  Vec3Field B(Field::physical(g, std::move(bv[0])), Field::physical(g, std::move(bv[1])),
              Field::physical(g, std::move(bv[2])));
  return state_from_physical(u, B, Field::physical(g, std::move(pv)),
                             Field::physical(g, std::move(phiv)), epsilon, 0.0);
}

namespace {

long step_count(double T, double dt) {
  if (!(dt > 0) || !(T > 0)) throw ParamError("simulate: T and dt must be positive");
  long n = std::lround(T / dt);
  if (n < 1 || std::abs(n * dt - T) > 1e-9 * std::max(T, 1.0))
    throw ParamError("simulate: T must be an integer multiple of dt");
  return n;
}

template <class State>
Snapshot take_snapshot(const State& s, const SnapshotMask& m) {
  Snapshot snap;
  snap.time = s.time;
  if (m.u) snap.u = to_physical(s.u);
  if (m.B) snap.B = to_physical(s.B);
  if constexpr (std::is_same_v<State, AcState>) {
    if (m.p) snap.p = to_physical(s.p);
    if (m.phi) snap.phi = to_physical(s.phi);
  }
  return snap;
}

void accumulate_q(DiagRecord& rec, const DiagRecord& prev, double dt) {
  rec.q_norms["u:2,4,0"] = prev.q_norms.at("u:2,4,0") +
                           0.5 * dt * (prev.q_u_l4 * prev.q_u_l4 + rec.q_u_l4 * rec.q_u_l4);
  rec.q_norms["B:2,4,0"] = prev.q_norms.at("B:2,4,0") +
                           0.5 * dt * (prev.q_B_l4 * prev.q_B_l4 + rec.q_B_l4 * rec.q_B_l4);
}

template <class State, class Stepper, class Diag>
Trajectory run_driver(State s, const Grid3& g, double epsilon, const SimOptions& o,
                      Stepper step, Diag diag) {
  const long steps = step_count(o.T, o.dt);
  if (o.cadence < 1) throw ParamError("simulate: cadence must be >= 1");

  Trajectory tr(g);
  tr.epsilon = epsilon;
  tr.mu = o.controls.mu;
  tr.dt = o.dt;
  tr.horizon = o.T;
  tr.cadence = o.cadence;
  tr.nonlinear = o.controls.nonlinear;

  DiagRecord rec = diag(s);
  rec.q_norms["u:2,4,0"] = 0;
  rec.q_norms["B:2,4,0"] = 0;
  tr.records.push_back(std::move(rec));

  auto emit = [&](const State& st) {
    Snapshot snap = take_snapshot(st, o.mask);
    if (o.on_snapshot) o.on_snapshot(snap);
    if (o.keep_snapshots) tr.snapshots.push_back(std::move(snap));
  };
  emit(s);

  for (long k = 1; k <= steps; ++k) {
    s = step(std::move(s));
    DiagRecord now = diag(s);
    accumulate_q(now, tr.records.back(), o.dt);
    tr.records.push_back(std::move(now));
    if (k % o.cadence == 0) emit(s);
  }
  return tr;
}

}  // namespace

Trajectory simulate_ac(AcState s, const SimOptions& o) {
  const Grid3 g = s.p.grid();
  const double eps = s.epsilon;
  return run_driver(
      std::move(s), g, eps, o,
      [&](AcState st) { return strang_step(st, o.dt, o.controls); },
      [](const AcState& st) { return instantaneous_diagnostics(st); });
}

Trajectory simulate_reference(IncState s, const SimOptions& o) {
  const Grid3 g = s.u.grid();
  return run_driver(
      std::move(s), g, 0.0, o,
      [&](IncState st) { return reference_step(st, o.dt, o.controls); },
      [](const IncState& st) { return instantaneous_diagnostics(st); });
}

}  // namespace acmhd
