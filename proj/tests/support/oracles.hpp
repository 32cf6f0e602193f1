#pragma once

// Reference implementations for tests. Deliberately naive: explicit index
// loops and series, nothing shared with the library code paths.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Operator A_L B_S on the composite index r = n + p * nl.
inline Mat local_product(const Mat& a_l, const Mat& b_s) {
  const auto nl = a_l.rows(), ns = b_s.rows();
  Mat out = Mat::Zero(nl * ns, nl * ns);
  for (Eigen::Index n = 0; n < nl; ++n)
    for (Eigen::Index p = 0; p < ns; ++p)
      for (Eigen::Index n2 = 0; n2 < nl; ++n2)
        for (Eigen::Index p2 = 0; p2 < ns; ++p2) out(n + p * nl, n2 + p2 * nl) = a_l(n, n2) * b_s(p, p2);
  return out;
}

inline Mat trace_out_s(const Mat& m, int nl, int ns) {
  Mat out = Mat::Zero(nl, nl);
  for (int n = 0; n < nl; ++n)
    for (int n2 = 0; n2 < nl; ++n2)
      for (int p = 0; p < ns; ++p) out(n, n2) += m(n + p * nl, n2 + p * nl);
  return out;
}

inline Mat trace_out_l(const Mat& m, int nl, int ns) {
  Mat out = Mat::Zero(ns, ns);
  for (int p = 0; p < ns; ++p)
    for (int p2 = 0; p2 < ns; ++p2)
      for (int n = 0; n < nl; ++n) out(p, p2) += m(n + p * nl, n + p2 * nl);
  return out;
}

inline Mat sigma(int a) {
  Mat s(2, 2);
  switch (a) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, C(0, -1), C(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

/// sigma_{a_0} (x) ... on qubits, qubit 0 the fast index. a in {0,1,2,3}.
inline Mat pauli_string(const std::vector<int>& axes) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < static_cast<int>(axes.size()); ++q) out = kron(sigma(axes[q]), out);
  return out;
}

inline double expect(const Mat& rho, const Mat& op) { return (rho * op).trace().real(); }

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

/// exp(A) by scaling and squaring with a long Taylor series.
inline Mat expm(const Mat& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.1) {
    scale *= 0.5;
    ++squarings;
  }
  const Mat x = a * scale;
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline Mat projector(const Vec& v) { return v * v.adjoint(); }

inline Vec basis(int dim, int k) {
  Vec v = Vec::Zero(dim);
  v(k) = 1.0;
  return v;
}

inline Vec bell() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

inline Vec ghz(int p) {
  Vec v = Vec::Zero(1 << p);
  v(0) = v((1 << p) - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

/// Seeded generators of random test inputs.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double normal() { return gauss_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  Mat gaussian(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = C(normal(), normal());
    return m;
  }

  Mat hermitian(int n) {
    const Mat g = gaussian(n);
    return (g + g.adjoint()) / 2.0;
  }

  Mat unitary(int n) {
    Eigen::HouseholderQR<Mat> qr(gaussian(n));
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int j = 0; j < n; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    return q;
  }

  /// Full-rank mixed state.
  Mat density(int n) {
    const Mat g = gaussian(n);
    Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
  }

  Vec pure(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = C(normal(), normal());
    return v.normalized();
  }

  Eigen::Vector3d direction() {
    Eigen::Vector3d v(normal(), normal(), normal());
    return v.normalized();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace oracle
