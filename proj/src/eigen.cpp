#include "clickcorr/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace clickcorr {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix<double>& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix<double>& symmetric) {
  const std::size_t n = symmetric.rows();
  if (n == 0 || symmetric.cols() != n) throw InvalidParameter("eigen-solver needs a square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double x = symmetric(i, j);
      const double y = symmetric(j, i);
      if (!std::isfinite(x) || std::abs(x - y) > 1e-12 * std::max({1.0, std::abs(x), std::abs(y)})) {
        throw InvalidParameter("eigen-solver needs a finite symmetric matrix");
      }
    }

  Matrix<double> a = symmetric;
  Matrix<double> v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double frobenius = 0.0;
  for (double x : a.flat()) frobenius += x * x;
  const double tolerance = kJacobiOffDiagonalTolerance * std::max(1.0, std::sqrt(frobenius));

  int sweep = 0;
  while (off_diagonal_norm(a) >= tolerance) {
    if (++sweep > kMaxSweeps) throw NumericalError("Jacobi sweeps did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p, q); t is the smaller root of t² + 2θt - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.reserve(n);
  out.vectors = Matrix<double>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace clickcorr
