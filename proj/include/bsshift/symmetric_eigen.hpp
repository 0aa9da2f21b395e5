#ifndef BSSHIFT_SYMMETRIC_EIGEN_HPP
#define BSSHIFT_SYMMETRIC_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace bsshift {

class EigenSolverError : public std::runtime_error {
public:
  EigenSolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

struct SymmetricEigenResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column j belongs to values[j]
  int sweeps = 0;
};

/// Full eigendecomposition of a real symmetric matrix by cyclic Jacobi
/// rotations. Only the upper triangle is read.
inline SymmetricEigenResult symmetric_eigen(const Eigen::MatrixXd& m, int max_sweeps = 60) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("symmetric_eigen: matrix must be square");
  }
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd a = m.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  const double target = static_cast<double>(std::max<Eigen::Index>(n, 1)) *
                        std::numeric_limits<double>::epsilon() * scale;

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index j = 1; j < n; ++j) {
      s += a.col(j).head(j).squaredNorm();
    }
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  double off = off_norm();
  while (off > target) {
    if (sweep == max_sweeps) {
      throw EigenSolverError("symmetric_eigen: no convergence after " + std::to_string(max_sweeps) +
                                 " sweeps (off-diagonal norm " + std::to_string(off) + ")",
                             off);
    }
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        // Skip rotations that would not change the diagonal in floating point.
        if (sweep > 3 && std::abs(apq) * 1e2 <= std::numeric_limits<double>::epsilon() *
                                                     std::min(std::abs(a(p, p)), std::abs(a(q, q)))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- J^T A J with J the rotation in the (p, q) plane.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = off_norm();
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymmetricEigenResult result;
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    result.values(j) = a(src, src);
    result.vectors.col(j) = v.col(src);
  }
  result.sweeps = sweep;
  return result;
}

}  // namespace bsshift

#endif  // BSSHIFT_SYMMETRIC_EIGEN_HPP
