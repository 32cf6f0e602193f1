#pragma once

#include <array>
#include <vector>

#include "qportrait/numkernel.hpp"

namespace qp {

using Vec3 = Eigen::Vector3d;

/// Unit-trace positive semidefinite Hermitian matrix.
class DensityMatrix {
 public:
  /// Validates hermiticity, trace and eigenvalue sign; throws
  /// Errc::NotHermitian or Errc::InvalidDensity.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix from_pure(const ComplexVector& amplitudes);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

class Observable {
 public:
  explicit Observable(ComplexMatrix m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Normalised state vector; a point of phase space up to global phase.
class PureState {
 public:
  /// Requires norm 1 to within the unit-norm tolerance.
  explicit PureState(ComplexVector amplitudes);
  static PureState normalized(const ComplexVector& v);
  static PureState basis(int dim, int k);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
};

/// Ordered, mutually orthogonal projectors summing to the identity.
/// Projectors may be coarse (rank > 1).
class ResolutionOfIdentity {
 public:
  explicit ResolutionOfIdentity(std::vector<ComplexMatrix> projectors);

  /// Rank-1 projectors onto the given orthonormal columns.
  static ResolutionOfIdentity from_basis(const ComplexMatrix& columns);
  static ResolutionOfIdentity computational(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const ComplexMatrix& operator[](std::size_t k) const { return projectors_[k]; }

  int rank(std::size_t k) const;
  bool is_rank1() const;

  /// Phase-fixed unit vector of a rank-1 projector; throws
  /// Errc::CoarseProjector otherwise.
  ComplexVector vector(std::size_t k) const;

  /// V * R * V^+ applied projector-wise.
  ResolutionOfIdentity transformed(const ComplexMatrix& v) const;

 private:
  int dim_;
  std::vector<ComplexMatrix> projectors_;
};

enum class BasisKind { Identity, Diagonal, OffDiagonalX, OffDiagonalY };

/// Role of one basis matrix. For X/Y: the pair of levels (low < high).
/// For Diagonal: `low` is the Gell-Mann order m in [1, N-1].
struct BasisLabel {
  BasisKind kind;
  int low = 0;
  int high = 0;
};

/// Orthogonal Hermitian basis beta_p, p = n + m N, with norms M_p.
struct PauliBasis {
  int dim = 0;
  std::vector<ComplexMatrix> matrices;
  std::vector<double> norms;
  std::vector<BasisLabel> labels;

  std::size_t size() const { return matrices.size(); }
};

PauliBasis build_pauli_basis(int n);

/// Coefficients A_p = tr(beta_p A) / M_p and the inverse expansion.
RealVector basis_coefficients(const PauliBasis& basis, const ComplexMatrix& a);
ComplexMatrix from_basis_coefficients(const PauliBasis& basis, const RealVector& coeffs);

/// Projectors on eigenvectors ordered by descending eigenvalue.
ResolutionOfIdentity resolution_of_identity(const ComplexMatrix& hermitian);
ResolutionOfIdentity resolution_of_identity(const Observable& a);
ResolutionOfIdentity resolution_of_identity(const DensityMatrix& rho);

/// tr(A rho), real part.
double expectation(const Observable& a, const DensityMatrix& rho);

/// Same quantity from the spectra of A and rho and their mutual
/// transformation matrix: sum A_k p_k' |<k;A|k';rho>|^2.
double expectation_via_transform(const Observable& a, const DensityMatrix& rho);

/// U = sum |k;to><k;from| with U Pi_k[from] U^+ = Pi_k[to]. Target vectors
/// are rephased so <k;from|k;to> is real and nonnegative when nonzero.
ComplexMatrix transform_matrix(const ResolutionOfIdentity& from, const ResolutionOfIdentity& to);

/// <psi|rho|psi>.
double phase_portrait_value(const DensityMatrix& rho, const PureState& psi);

/// p_k = tr(Pi_k rho), clamped at zero within tolerance.
std::vector<double> portrait_distribution(const DensityMatrix& rho, const ResolutionOfIdentity& roi);

// Qubit specialisations.

/// sigma_x, sigma_y, sigma_z (index 0..2).
const std::array<ComplexMatrix, 3>& pauli_matrices();
ComplexMatrix director_dot_sigma(const Vec3& d);

/// rho = I/2 + d.sigma/2.
DensityMatrix qubit_density(const Vec3& director);
/// d_a = tr(sigma_a rho).
Vec3 qubit_director(const ComplexMatrix& rho2);
/// Counter projector (I + m.sigma)/2 and its completing pair.
ResolutionOfIdentity qubit_counter_roi(const Vec3& m);
/// Unit vector with (I + m.sigma)/2 = |v><v|.
PureState qubit_counter_state(const Vec3& m);
/// 1/2 + d.m/2.
double qubit_portrait(const DensityMatrix& rho, const Vec3& m);

void require_unit_director(const Vec3& m, const char* what);

}  // namespace qp
