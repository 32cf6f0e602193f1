#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Eigen-pairs of a Hermitian matrix. Eigenvalues are sorted descending;
/// column k of `eigenvectors` belongs to eigenvalue k.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
  ComplexMatrix projector(Eigen::Index k) const;
  /// Sum of lambda_k |k><k|.
  ComplexMatrix reassemble() const;
};

/// Which factor of a bipartite space. L is the fast index.
enum class Factor { L, S };

double max_abs(const ComplexMatrix& m);
double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

/// Spectral decomposition with deterministic ordering and phase fixing:
/// the first component of largest magnitude of each eigenvector is real
/// and nonnegative; ties in eigenvalue are ordered by the phase-fixed
/// vectors, lexicographically descending on (re, im).
SpectralDecomposition hermitian_eig(const ComplexMatrix& h);

/// exp(iJ) for a traceless Hermitian generator.
ComplexMatrix unitary_from_generator(const ComplexMatrix& generator);

/// Eigenphases of a unitary on the principal branch (-pi, pi], shifted
/// so that they sum to zero. Order follows the Schur form.
RealVector centered_eigenphases(const ComplexMatrix& u);

/// Traceless Hermitian J with exp(iJ) = U up to a global phase.
ComplexMatrix generator_from_unitary(const ComplexMatrix& u);

/// Standard Kronecker product: the first argument carries the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduction of a matrix on C^{n_l} x C^{n_s} with composite index
/// r = n + p * n_l (L fast). Keeps the named factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, Factor keep, int n_l, int n_s);

/// Rephases v so its first component of largest magnitude is real >= 0.
ComplexVector phase_fixed(const ComplexVector& v);

ComplexMatrix identity(int n);

}  // namespace qp
