#include "acmhd/random_fields.hpp"

#include <cmath>
#include <random>

#include "acmhd/spectral.hpp"
#include "acmhd/vector_calculus.hpp"

namespace acmhd {

namespace {

// band/profile shaping of white physical noise keeps hermitian symmetry
// without any half-spectrum bookkeeping
Field shape(const Grid3& g, Eigen::ArrayXd noise, int kmax, double slope) {
  Field f = to_spectral(Field::physical(g, std::move(noise)));
  Eigen::ArrayXcd v = f.sp();

  const int n = g.n();
  Eigen::ArrayXd m(g.size());
  Eigen::Index idx = 0;
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix, ++idx) {
        int sx = ix <= n / 2 - 1 ? ix : ix - n;
        int sy = iy <= n / 2 - 1 ? iy : iy - n;
        int sz = iz <= n / 2 - 1 ? iz : iz - n;
        bool in_band = std::abs(sx) <= kmax && std::abs(sy) <= kmax && std::abs(sz) <= kmax &&
                       !(sx == 0 && sy == 0 && sz == 0);
        m[idx] = in_band ? 1.0 : 0.0;
      }
  if (slope != 0.0) {
    Eigen::ArrayXd prof = (g.ksq() > 0.0).select(g.ksq().max(1e-300).pow(-slope / 2.0), 0.0);
    m *= prof;
  }
  v.real() *= m;
  v.imag() *= m;

  Field shaped = Field::spectral(g, std::move(v));
  double nrm = l2_norm(shaped);
  if (nrm <= 0.0) throw ParamError("random field: empty band");
  Eigen::ArrayXcd out = shaped.sp() / nrm;
  return Field::spectral(g, std::move(out));
}

Eigen::ArrayXd white(const Grid3& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::ArrayXd v(g.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  return v;
}

void check_band(const Grid3& g, int kmax) {
  if (kmax < 1 || kmax > g.n() / 2 - 1)
    throw ParamError("random field: kmax must lie in [1, n/2 - 1]");
}

Vec3Field normalized(const Vec3Field& f) {
  double nrm = l2_norm(f);
  Eigen::ArrayXcd a = f[0].sp() / nrm;
  Eigen::ArrayXcd b = f[1].sp() / nrm;
  Eigen::ArrayXcd c = f[2].sp() / nrm;
  const Grid3& g = f.grid();
  return Vec3Field(Field::spectral(g, std::move(a)), Field::spectral(g, std::move(b)),
                   Field::spectral(g, std::move(c)));
}

}  // namespace

Field random_scalar(const Grid3& g, int kmax, double slope, std::uint64_t seed) {
  check_band(g, kmax);
  return shape(g, white(g, seed), kmax, slope);
}

Vec3Field random_vector(const Grid3& g, int kmax, double slope, std::uint64_t seed) {
  check_band(g, kmax);
  return Vec3Field(shape(g, white(g, seed * 3 + 1), kmax, slope),
                   shape(g, white(g, seed * 3 + 2), kmax, slope),
                   shape(g, white(g, seed * 3 + 3), kmax, slope));
}

Vec3Field random_solenoidal(const Grid3& g, int kmax, double slope, std::uint64_t seed) {
  return normalized(leray_P(random_vector(g, kmax, slope, seed)));
}

Vec3Field random_gradient(const Grid3& g, int kmax, double slope, std::uint64_t seed) {
  return normalized(leray_Q(random_vector(g, kmax, slope, seed)));
}

}  // namespace acmhd
