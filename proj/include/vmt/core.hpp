#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vmt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

// Volume of the unit ball in R^k (k = 1 -> 2, k = 2 -> pi, ...).
inline double unit_ball_volume(int k) {
  if (k < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  return std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

inline double frob(const Mat& a, const Mat& b) { return a.cwiseProduct(b).sum(); }

inline double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

inline Mat identity_like(int dim) { return Mat::Identity(dim, dim); }

}  // namespace vmt
