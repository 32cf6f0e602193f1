#include "qportrait/numkernel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qportrait/errors.hpp"
#include "qportrait/tolerance.hpp"

namespace qp {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    raise(Errc::DimensionMismatch, std::string(what) + " requires a non-empty square matrix, got " +
                                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Descending lexicographic comparison on (re, im) of each component.
bool lex_greater(const ComplexVector& a, const ComplexVector& b) {
  constexpr double kTie = 1e-10;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double dr = a(i).real() - b(i).real();
    if (std::abs(dr) > kTie) return dr > 0.0;
    const double di = a(i).imag() - b(i).imag();
    if (std::abs(di) > kTie) return di > 0.0;
  }
  return false;
}

}  // namespace

ComplexMatrix SpectralDecomposition::projector(Eigen::Index k) const {
  const auto v = eigenvectors.col(k);
  return v * v.adjoint();
}

ComplexMatrix SpectralDecomposition::reassemble() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) { return max_abs(m - m.adjoint()); }

double unitarity_error(const ComplexMatrix& m) {
  return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols()));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && unitarity_error(m) <= tol;
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

ComplexVector phase_fixed(const ComplexVector& v) {
  if (v.size() == 0) return v;
  const double largest = v.cwiseAbs().maxCoeff();
  if (largest == 0.0) return v;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= largest * (1.0 - 1e-10)) {
      pivot = i;
      break;
    }
  }
  const Complex phase = std::conj(v(pivot)) / std::abs(v(pivot));
  ComplexVector out = v * phase;
  out(pivot) = Complex(std::abs(v(pivot)), 0.0);
  return out;
}

SpectralDecomposition hermitian_eig(const ComplexMatrix& h) {
  require_square(h, "hermitian_eig");
  if (hermiticity_error(h) > tol::hermitian()) {
    raise(Errc::NotHermitian, "matrix deviates from its adjoint by " +
                                  std::to_string(hermiticity_error(h)));
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    raise(Errc::ConvergenceFailure, "self-adjoint eigensolver did not converge");
  }

  const Eigen::Index n = sym.rows();
  std::vector<ComplexVector> vectors;
  vectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) vectors.push_back(phase_fixed(solver.eigenvectors().col(k)));

  const RealVector& values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double tie = tol::kReassembly * scale;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(values(a) - values(b)) > tie) return values(a) > values(b);
    return lex_greater(vectors[static_cast<std::size_t>(a)], vectors[static_cast<std::size_t>(b)]);
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = values(src);
    out.eigenvectors.col(k) = vectors[static_cast<std::size_t>(src)];
  }
  return out;
}

ComplexMatrix unitary_from_generator(const ComplexMatrix& generator) {
  require_square(generator, "unitary_from_generator");
  if (hermiticity_error(generator) > tol::hermitian()) {
    raise(Errc::NotHermitian, "generator is not Hermitian");
  }
  if (std::abs(generator.trace()) > tol::generator_trace()) {
    raise(Errc::NonZeroTrace, "generator trace " + std::to_string(std::abs(generator.trace())));
  }
  const SpectralDecomposition eig = hermitian_eig(generator);
  ComplexVector phases(eig.size());
  for (Eigen::Index n = 0; n < eig.size(); ++n) phases(n) = std::polar(1.0, eig.eigenvalues(n));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

namespace {

struct UnitarySpectrum {
  ComplexMatrix basis;  // unitary Schur vectors
  RealVector phases;    // centered principal eigenphases
};

UnitarySpectrum unitary_spectrum(const ComplexMatrix& u) {
  require_square(u, "generator_from_unitary");
  if (unitarity_error(u) > tol::unitary()) {
    raise(Errc::NotUnitary, "matrix deviates from unitarity by " +
                                std::to_string(unitarity_error(u)));
  }
  // A normal matrix has a diagonal Schur form.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success) {
    raise(Errc::ConvergenceFailure, "Schur decomposition did not converge");
  }
  const Eigen::Index n = u.rows();
  RealVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double phi = std::arg(schur.matrixT()(k, k));
    if (phi <= -std::numbers::pi) phi = std::numbers::pi;
    phases(k) = phi;
  }
  phases.array() -= phases.mean();
  return {schur.matrixU(), phases};
}

}  // namespace

RealVector centered_eigenphases(const ComplexMatrix& u) { return unitary_spectrum(u).phases; }

ComplexMatrix generator_from_unitary(const ComplexMatrix& u) {
  const UnitarySpectrum spec = unitary_spectrum(u);
  ComplexMatrix j = spec.basis * spec.phases.cast<Complex>().asDiagonal() * spec.basis.adjoint();
  return 0.5 * (j + j.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Factor keep, int n_l, int n_s) {
  if (n_l <= 0 || n_s <= 0 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(n_l) * n_s) {
    raise(Errc::DimensionMismatch, "partial_trace: matrix " + std::to_string(m.rows()) + "x" +
                                       std::to_string(m.cols()) + " does not factor as " +
                                       std::to_string(n_l) + "*" + std::to_string(n_s));
  }
  const auto idx = [n_l](int n, int p) { return n + p * n_l; };
  if (keep == Factor::L) {
    ComplexMatrix out = ComplexMatrix::Zero(n_l, n_l);
    for (int n = 0; n < n_l; ++n)
      for (int n2 = 0; n2 < n_l; ++n2)
        for (int p = 0; p < n_s; ++p) out(n, n2) += m(idx(n, p), idx(n2, p));
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(n_s, n_s);
  for (int p = 0; p < n_s; ++p)
    for (int p2 = 0; p2 < n_s; ++p2)
      for (int n = 0; n < n_l; ++n) out(p, p2) += m(idx(n, p), idx(n, p2));
  return out;
}

}  // namespace qp
