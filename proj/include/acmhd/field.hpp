#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>
#include <utility>

#include "acmhd/errors.hpp"
#include "acmhd/grid.hpp"

namespace acmhd {

enum class Rep { physical, spectral };

// Scalar field on a Grid3, immutable after construction. Physical data is
// real samples, spectral data is complex coefficients with the mean at k=0
// (forward transform divides by n^3).
class Field {
 public:
  static Field physical(const Grid3& g, Eigen::ArrayXd v) {
    if (v.size() != g.size()) throw ContractError("field data size does not match grid");
    return Field(g, Rep::physical, std::move(v), {});
  }
  static Field spectral(const Grid3& g, Eigen::ArrayXcd v) {
    if (v.size() != g.size()) throw ContractError("field data size does not match grid");
    return Field(g, Rep::spectral, {}, std::move(v));
  }
  static Field zeros(const Grid3& g, Rep r) {
    if (r == Rep::physical) return physical(g, Eigen::ArrayXd::Zero(g.size()));
    return spectral(g, Eigen::ArrayXcd::Zero(g.size()));
  }

  Rep rep() const { return rep_; }
  const Grid3& grid() const { return grid_; }

  const Eigen::ArrayXd& ph() const {
    if (rep_ != Rep::physical) throw ContractError("field is not in physical representation");
    return ph_;
  }
  const Eigen::ArrayXcd& sp() const {
    if (rep_ != Rep::spectral) throw ContractError("field is not in spectral representation");
    return sp_;
  }

 private:
  Field(const Grid3& g, Rep r, Eigen::ArrayXd p, Eigen::ArrayXcd s)
      : grid_(g), rep_(r), ph_(std::move(p)), sp_(std::move(s)) {}

  Grid3 grid_;
  Rep rep_;
  Eigen::ArrayXd ph_;
  Eigen::ArrayXcd sp_;
};

// Three-component field, all components on one grid in one representation.
class Vec3Field {
 public:
  Vec3Field(Field a, Field b, Field c) : comp_{std::move(a), std::move(b), std::move(c)} {
    if (!comp_[0].grid().same(comp_[1].grid()) || !comp_[0].grid().same(comp_[2].grid()))
      throw ContractError("vector field components on different grids");
    if (comp_[0].rep() != comp_[1].rep() || comp_[0].rep() != comp_[2].rep())
      throw ContractError("vector field components in different representations");
  }
  static Vec3Field zeros(const Grid3& g, Rep r) {
    return Vec3Field(Field::zeros(g, r), Field::zeros(g, r), Field::zeros(g, r));
  }

  const Field& operator[](int i) const { return comp_[i]; }
  Rep rep() const { return comp_[0].rep(); }
  const Grid3& grid() const { return comp_[0].grid(); }

 private:
  std::array<Field, 3> comp_;
};

}  // namespace acmhd
