#include "acmhd/spectral.hpp"

#include <cmath>
#include <limits>

#include "fft_backend.hpp"

namespace acmhd {

namespace {

// complex array times real multiplier without casting the multiplier
Eigen::ArrayXcd cmul(const Eigen::ArrayXcd& v, const Eigen::ArrayXd& m) {
  Eigen::ArrayXcd out(v.size());
  out.real() = v.real() * m;
  out.imag() = v.imag() * m;
  return out;
}

void note_destroyed_mean(const Eigen::ArrayXcd& v) {
  double scale = std::sqrt(v.abs2().sum()) + std::numeric_limits<double>::min();
  if (std::abs(v[0]) > 1e-12 * scale) warnings().zero_mode_projected.fetch_add(1);
}

}  // namespace

Field to_spectral(const Field& f) {
  Eigen::ArrayXcd in = f.ph().cast<std::complex<double>>();
  Eigen::ArrayXcd out(in.size());
  detail::dft3(f.grid().n(), in.data(), out.data(), -1);
  out /= static_cast<double>(f.grid().size());
  return Field::spectral(f.grid(), std::move(out));
}

Field to_physical(const Field& f) {
  const Eigen::ArrayXcd& v = f.sp();
  Eigen::ArrayXcd out(v.size());
  detail::dft3(f.grid().n(), v.data(), out.data(), +1);
  return Field::physical(f.grid(), out.real());
}

Vec3Field to_spectral(const Vec3Field& f) {
  return Vec3Field(to_spectral(f[0]), to_spectral(f[1]), to_spectral(f[2]));
}

Vec3Field to_physical(const Vec3Field& f) {
  return Vec3Field(to_physical(f[0]), to_physical(f[1]), to_physical(f[2]));
}

Field derivative(const Field& f, int axis) {
  if (axis < 0 || axis > 2) throw ParamError("derivative axis must be 0, 1 or 2");
  const Eigen::ArrayXcd& v = f.sp();
  const Eigen::ArrayXd& k = f.grid().k(axis);
  Eigen::ArrayXcd out(v.size());
  out.real() = -v.imag() * k;
  out.imag() = v.real() * k;
  return Field::spectral(f.grid(), std::move(out));
}

Field laplacian(const Field& f) {
  return Field::spectral(f.grid(), cmul(f.sp(), -f.grid().ksq()));
}

Field inverse_laplacian(const Field& f) {
  const Eigen::ArrayXcd& v = f.sp();
  const Eigen::ArrayXd& ksq = f.grid().ksq();
  note_destroyed_mean(v);
  Eigen::ArrayXd m = (ksq > 0.0).select(-ksq.inverse(), 0.0);
  return Field::spectral(f.grid(), cmul(v, m));
}

Field sobolev_multiplier(const Field& f, double s, Sobolev flavor) {
  const Eigen::ArrayXcd& v = f.sp();
  const Eigen::ArrayXd& ksq = f.grid().ksq();
  Eigen::ArrayXd m;
  if (flavor == Sobolev::inhomogeneous) {
    m = (1.0 + ksq).pow(s / 2.0);
  } else {
    if (s < 0.0) note_destroyed_mean(v);
    // |k|=0 entries (mean and pure-Nyquist positions) are zeroed; the max()
    // keeps pow off the 0^negative singularity in the discarded branch
    m = (ksq > 0.0).select(ksq.max(1e-300).pow(s / 2.0), 0.0);
  }
  return Field::spectral(f.grid(), cmul(v, m));
}

Field dealias(const Field& f) {
  return Field::spectral(f.grid(), cmul(f.sp(), f.grid().dealias_mask()));
}

Vec3Field dealias(const Vec3Field& f) {
  return Vec3Field(dealias(f[0]), dealias(f[1]), dealias(f[2]));
}

double l2_norm(const Field& f) {
  if (f.rep() == Rep::physical)
    return std::sqrt(f.grid().cell_volume() * f.ph().square().sum());
  return std::sqrt(f.grid().volume() * f.sp().abs2().sum());
}

double l2_norm(const Vec3Field& f) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    double c = l2_norm(f[i]);
    s += c * c;
  }
  return std::sqrt(s);
}

double lp_norm(const Field& f, double p) {
  const Eigen::ArrayXd& v = f.ph();
  if (std::isinf(p)) return v.abs().maxCoeff();
  if (!(p >= 1.0)) throw ParamError("lp_norm requires p >= 1");
  return std::pow(f.grid().cell_volume() * v.abs().pow(p).sum(), 1.0 / p);
}

double lp_norm(const Vec3Field& f, double p) {
  Eigen::ArrayXd mag =
      (f[0].ph().square() + f[1].ph().square() + f[2].ph().square()).sqrt();
  if (std::isinf(p)) return mag.maxCoeff();
  if (!(p >= 1.0)) throw ParamError("lp_norm requires p >= 1");
  return std::pow(f.grid().cell_volume() * mag.pow(p).sum(), 1.0 / p);
}

double sobolev_norm(const Field& f, double s, Sobolev flavor) {
  return l2_norm(sobolev_multiplier(f, s, flavor));
}

double sobolev_norm(const Vec3Field& f, double s, Sobolev flavor) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    double c = sobolev_norm(f[i], s, flavor);
    acc += c * c;
  }
  return std::sqrt(acc);
}

double mean(const Field& f) {
  if (f.rep() == Rep::physical) return f.ph().mean();
  return f.sp()[0].real();
}

Vec3Field apply(const Vec3Field& f, Field (*op)(const Field&)) {
  return Vec3Field(op(f[0]), op(f[1]), op(f[2]));
}

}  // namespace acmhd
