#pragma once

#include <Eigen/Core>
#include <memory>

namespace acmhd {

// Periodic cubic grid [0, box)^3 with n points per axis, n a power of two.
// Arrays are flattened x-fastest: idx = ix + n*(iy + n*iz).
//
// Spectral layout follows the usual DFT ordering per axis: array position i
// holds the signed mode index i for i <= n/2-1 and i-n above. Wavenumber
// tables are physical (scaled by 2*pi/box) and store zero at the Nyquist
// position n/2, so derivatives and multipliers built from them drop that
// mode by construction.
//
// Copying a Grid3 is cheap (shared immutable tables).
class Grid3 {
 public:
  Grid3(int n, double box);

  int n() const { return impl_->n; }
  double box() const { return impl_->box; }
  Eigen::Index size() const { return impl_->size; }
  double dx() const { return impl_->box / impl_->n; }
  double cell_volume() const { double h = dx(); return h * h * h; }
  double volume() const { return impl_->box * impl_->box * impl_->box; }

  int signed_index(int i) const { return i <= impl_->n / 2 - 1 ? i : i - impl_->n; }
  // largest retained |mode index| under the 2/3 rule
  int dealias_cutoff() const { return impl_->n / 3; }

  // per-point tables, length n^3
  const Eigen::ArrayXd& k1() const { return impl_->k[0]; }
  const Eigen::ArrayXd& k2() const { return impl_->k[1]; }
  const Eigen::ArrayXd& k3() const { return impl_->k[2]; }
  const Eigen::ArrayXd& k(int axis) const { return impl_->k[axis]; }
  const Eigen::ArrayXd& ksq() const { return impl_->ksq; }
  const Eigen::ArrayXd& dealias_mask() const { return impl_->mask; }
  const Eigen::ArrayXd& x1() const { return impl_->x[0]; }
  const Eigen::ArrayXd& x2() const { return impl_->x[1]; }
  const Eigen::ArrayXd& x3() const { return impl_->x[2]; }

  bool same(const Grid3& o) const {
    return impl_ == o.impl_ || (n() == o.n() && box() == o.box());
  }

 private:
  struct Impl {
    int n;
    double box;
    Eigen::Index size;
    Eigen::ArrayXd k[3];
    Eigen::ArrayXd ksq;
    Eigen::ArrayXd mask;
    Eigen::ArrayXd x[3];
  };
  std::shared_ptr<const Impl> impl_;
};

}  // namespace acmhd
