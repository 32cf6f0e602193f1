#include "qportrait/qudit.hpp"

#include <cmath>
#include <string>

#include "qportrait/errors.hpp"
#include "qportrait/tolerance.hpp"

namespace qp {

namespace {

constexpr Complex kI{0.0, 1.0};

// Pairwise products are checked explicitly below this size; above it the
// idempotence + completeness checks imply orthogonality.
constexpr int kPairwiseCheckMaxDim = 32;

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    raise(Errc::DimensionMismatch,
          std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix / Observable / PureState

DensityMatrix::DensityMatrix(ComplexMatrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    raise(Errc::DimensionMismatch, "density matrix must be square and non-empty");
  }
  const double herr = hermiticity_error(m);
  if (herr > tol::hermitian()) {
    raise(Errc::NotHermitian, "density matrix deviates from its adjoint by " + std::to_string(herr));
  }
  matrix_ = 0.5 * (m + m.adjoint());
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::density_trace()) {
    raise(Errc::InvalidDensity, "trace is " + std::to_string(tr) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -tol::negative_eigen()) {
    raise(Errc::InvalidDensity, "negative eigenvalue " + std::to_string(lowest));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& amplitudes) {
  const ComplexVector v = PureState::normalized(amplitudes).amplitudes();
  return DensityMatrix(v * v.adjoint());
}

Observable::Observable(ComplexMatrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    raise(Errc::DimensionMismatch, "observable must be square and non-empty");
  }
  if (hermiticity_error(m) > tol::hermitian()) {
    raise(Errc::NotHermitian, "observable is not Hermitian");
  }
  matrix_ = 0.5 * (m + m.adjoint());
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) raise(Errc::DimensionMismatch, "empty state vector");
  if (std::abs(amplitudes_.norm() - 1.0) > tol::unit_norm()) {
    raise(Errc::NotNormalized, "state vector norm " + std::to_string(amplitudes_.norm()));
  }
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) raise(Errc::NotNormalized, "zero state vector");
  return PureState(v / norm);
}

PureState PureState::basis(int dim, int k) {
  if (k < 0 || k >= dim) raise(Errc::IndexOutOfRange, "basis index " + std::to_string(k));
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return PureState(v);
}

// ---------------------------------------------------------------------------
// ResolutionOfIdentity

ResolutionOfIdentity::ResolutionOfIdentity(std::vector<ComplexMatrix> projectors)
    : dim_(0), projectors_(std::move(projectors)) {
  if (projectors_.empty()) raise(Errc::InvalidResolution, "no projectors");
  dim_ = static_cast<int>(projectors_.front().rows());
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t k = 0; k < projectors_.size(); ++k) {
    auto& p = projectors_[k];
    if (p.rows() != dim_ || p.cols() != dim_) {
      raise(Errc::DimensionMismatch, "projector " + std::to_string(k) + " has wrong shape");
    }
    if (hermiticity_error(p) > tol::hermitian()) {
      raise(Errc::InvalidResolution, "projector " + std::to_string(k) + " is not Hermitian");
    }
    p = 0.5 * (p + p.adjoint());
    if (max_abs(p * p - p) > tol::projector_product()) {
      raise(Errc::InvalidResolution, "projector " + std::to_string(k) + " is not idempotent");
    }
    sum += p;
  }
  if (max_abs(sum - ComplexMatrix::Identity(dim_, dim_)) > tol::kReassembly * tol::scale()) {
    raise(Errc::InvalidResolution, "projectors do not sum to the identity");
  }
  if (dim_ <= kPairwiseCheckMaxDim) {
    for (std::size_t k = 0; k < projectors_.size(); ++k) {
      for (std::size_t m = k + 1; m < projectors_.size(); ++m) {
        if (max_abs(projectors_[k] * projectors_[m]) > tol::projector_product()) {
          raise(Errc::InvalidResolution, "projectors " + std::to_string(k) + " and " +
                                             std::to_string(m) + " are not orthogonal");
        }
      }
    }
  }
}

ResolutionOfIdentity ResolutionOfIdentity::from_basis(const ComplexMatrix& columns) {
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(static_cast<std::size_t>(columns.cols()));
  for (Eigen::Index k = 0; k < columns.cols(); ++k) {
    const ComplexVector v = columns.col(k);
    projectors.push_back(v * v.adjoint());
  }
  return ResolutionOfIdentity(std::move(projectors));
}

ResolutionOfIdentity ResolutionOfIdentity::computational(int dim) {
  return from_basis(ComplexMatrix::Identity(dim, dim));
}

int ResolutionOfIdentity::rank(std::size_t k) const {
  return static_cast<int>(std::lround(projectors_.at(k).trace().real()));
}

bool ResolutionOfIdentity::is_rank1() const {
  for (std::size_t k = 0; k < projectors_.size(); ++k)
    if (rank(k) != 1) return false;
  return true;
}

ComplexVector ResolutionOfIdentity::vector(std::size_t k) const {
  if (rank(k) != 1) {
    raise(Errc::CoarseProjector, "projector " + std::to_string(k) + " has rank " +
                                     std::to_string(rank(k)));
  }
  const ComplexMatrix& p = projectors_[k];
  Eigen::Index pivot = 0;
  p.diagonal().real().maxCoeff(&pivot);
  const ComplexVector v = p.col(pivot) / std::sqrt(p(pivot, pivot).real());
  return phase_fixed(v.normalized());
}

ResolutionOfIdentity ResolutionOfIdentity::transformed(const ComplexMatrix& v) const {
  require_same_dim(dim_, static_cast<int>(v.rows()), "ResolutionOfIdentity::transformed");
  std::vector<ComplexMatrix> out;
  out.reserve(projectors_.size());
  for (const auto& p : projectors_) out.push_back(v * p * v.adjoint());
  return ResolutionOfIdentity(std::move(out));
}

// ---------------------------------------------------------------------------
// Generalized Pauli basis

PauliBasis build_pauli_basis(int n) {
  if (n < 2) raise(Errc::InvalidArgument, "Pauli basis needs N >= 2, got " + std::to_string(n));
  PauliBasis basis;
  basis.dim = n;
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  basis.matrices.reserve(count);
  basis.norms.reserve(count);
  basis.labels.reserve(count);

  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {  // p = k + m N
      ComplexMatrix b = ComplexMatrix::Zero(n, n);
      BasisLabel label{};
      if (k == m && m == 0) {
        b.setIdentity();
        label = {BasisKind::Identity, 0, 0};
      } else if (k == m) {
        // Diagonal generalized Gell-Mann element of order m, norm 2.
        const double c = std::sqrt(2.0 / (static_cast<double>(m) * (m + 1)));
        for (int i = 0; i < m; ++i) b(i, i) = c;
        b(m, m) = -c * m;
        label = {BasisKind::Diagonal, m, m};
      } else if (k < m) {
        b(k, m) = 1.0;
        b(m, k) = 1.0;
        label = {BasisKind::OffDiagonalX, k, m};
      } else {
        // sigma_y^{(k,m)} = i|k><m| - i|m><k| with k > m.
        b(k, m) = kI;
        b(m, k) = -kI;
        label = {BasisKind::OffDiagonalY, m, k};
      }
      basis.norms.push_back((b * b).trace().real());
      basis.matrices.push_back(std::move(b));
      basis.labels.push_back(label);
    }
  }
  return basis;
}

RealVector basis_coefficients(const PauliBasis& basis, const ComplexMatrix& a) {
  require_same_dim(basis.dim, static_cast<int>(a.rows()), "basis_coefficients");
  RealVector out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t p = 0; p < basis.size(); ++p) {
    out(static_cast<Eigen::Index>(p)) =
        (basis.matrices[p] * a).trace().real() / basis.norms[p];
  }
  return out;
}

ComplexMatrix from_basis_coefficients(const PauliBasis& basis, const RealVector& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != basis.size()) {
    raise(Errc::LengthMismatch, "coefficient vector length does not match basis size");
  }
  ComplexMatrix out = ComplexMatrix::Zero(basis.dim, basis.dim);
  for (std::size_t p = 0; p < basis.size(); ++p) {
    out += coeffs(static_cast<Eigen::Index>(p)) * basis.matrices[p];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resolutions, expectations, portraits

ResolutionOfIdentity resolution_of_identity(const ComplexMatrix& hermitian) {
  return ResolutionOfIdentity::from_basis(hermitian_eig(hermitian).eigenvectors);
}

ResolutionOfIdentity resolution_of_identity(const Observable& a) {
  return resolution_of_identity(a.matrix());
}

ResolutionOfIdentity resolution_of_identity(const DensityMatrix& rho) {
  return resolution_of_identity(rho.matrix());
}

double expectation(const Observable& a, const DensityMatrix& rho) {
  require_same_dim(a.dim(), rho.dim(), "expectation");
  return (a.matrix() * rho.matrix()).trace().real();
}

double expectation_via_transform(const Observable& a, const DensityMatrix& rho) {
  require_same_dim(a.dim(), rho.dim(), "expectation_via_transform");
  const SpectralDecomposition eig_a = hermitian_eig(a.matrix());
  const SpectralDecomposition eig_rho = hermitian_eig(rho.matrix());
  const ResolutionOfIdentity roi_a = ResolutionOfIdentity::from_basis(eig_a.eigenvectors);
  const ResolutionOfIdentity roi_rho = ResolutionOfIdentity::from_basis(eig_rho.eigenvectors);
  const ComplexMatrix u = transform_matrix(roi_a, roi_rho);

  ComplexMatrix va(a.dim(), a.dim());
  for (int k = 0; k < a.dim(); ++k) va.col(k) = roi_a.vector(static_cast<std::size_t>(k));
  // Elements <k;A|k';rho> in the eigenbasis of A.
  const ComplexMatrix overlaps = va.adjoint() * u * va;

  double total = 0.0;
  for (int k = 0; k < a.dim(); ++k)
    for (int k2 = 0; k2 < a.dim(); ++k2)
      total += eig_a.eigenvalues(k) * eig_rho.eigenvalues(k2) * std::norm(overlaps(k, k2));
  return total;
}

ComplexMatrix transform_matrix(const ResolutionOfIdentity& from, const ResolutionOfIdentity& to) {
  require_same_dim(from.dim(), to.dim(), "transform_matrix");
  if (from.size() != to.size()) {
    raise(Errc::DimensionMismatch, "transform_matrix: resolutions have different lengths");
  }
  if (!from.is_rank1() || !to.is_rank1()) {
    raise(Errc::CoarseProjector, "transform_matrix requires rank-1 projectors");
  }
  bool same = true;
  for (std::size_t k = 0; k < from.size() && same; ++k) same = from[k] == to[k];
  if (same) return identity(from.dim());
  ComplexMatrix u = ComplexMatrix::Zero(from.dim(), from.dim());
  for (std::size_t k = 0; k < from.size(); ++k) {
    const ComplexVector v = from.vector(k);
    ComplexVector w = to.vector(k);
    const Complex overlap = v.dot(w);  // <v|w>
    if (std::abs(overlap) > 1e-12) w *= std::conj(overlap) / std::abs(overlap);
    u += w * v.adjoint();
  }
  return u;
}

double phase_portrait_value(const DensityMatrix& rho, const PureState& psi) {
  require_same_dim(rho.dim(), psi.dim(), "phase_portrait_value");
  const ComplexVector& v = psi.amplitudes();
  return v.dot(rho.matrix() * v).real();
}

std::vector<double> portrait_distribution(const DensityMatrix& rho, const ResolutionOfIdentity& roi) {
  require_same_dim(rho.dim(), roi.dim(), "portrait_distribution");
  std::vector<double> out;
  out.reserve(roi.size());
  for (std::size_t k = 0; k < roi.size(); ++k) {
    double p = (roi[k] * rho.matrix()).trace().real();
    if (p < 0.0) {
      if (p < -tol::probability_clamp()) {
        raise(Errc::InvalidDensity, "negative outcome probability " + std::to_string(p));
      }
      p = 0.0;
    }
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Qubit

const std::array<ComplexMatrix, 3>& pauli_matrices() {
  static const std::array<ComplexMatrix, 3> sigma = [] {
    std::array<ComplexMatrix, 3> s;
    s[0] = ComplexMatrix::Zero(2, 2);
    s[0](0, 1) = 1.0;
    s[0](1, 0) = 1.0;
    s[1] = ComplexMatrix::Zero(2, 2);
    s[1](0, 1) = -kI;
    s[1](1, 0) = kI;
    s[2] = ComplexMatrix::Zero(2, 2);
    s[2](0, 0) = 1.0;
    s[2](1, 1) = -1.0;
    return s;
  }();
  return sigma;
}

ComplexMatrix director_dot_sigma(const Vec3& d) {
  const auto& s = pauli_matrices();
  return d(0) * s[0] + d(1) * s[1] + d(2) * s[2];
}

void require_unit_director(const Vec3& m, const char* what) {
  if (!m.allFinite() || std::abs(m.norm() - 1.0) > tol::unit_norm()) {
    raise(Errc::BadDirector, std::string(what) + ": director norm " + std::to_string(m.norm()));
  }
}

DensityMatrix qubit_density(const Vec3& director) {
  if (!director.allFinite() || director.norm() > 1.0 + tol::unit_norm()) {
    raise(Errc::DirectorTooLong, "director length " + std::to_string(director.norm()));
  }
  return DensityMatrix(0.5 * (identity(2) + director_dot_sigma(director)));
}

Vec3 qubit_director(const ComplexMatrix& rho2) {
  if (rho2.rows() != 2 || rho2.cols() != 2) {
    raise(Errc::DimensionMismatch, "qubit director needs a 2x2 matrix");
  }
  const auto& s = pauli_matrices();
  return Vec3((s[0] * rho2).trace().real(), (s[1] * rho2).trace().real(),
              (s[2] * rho2).trace().real());
}

ResolutionOfIdentity qubit_counter_roi(const Vec3& m) {
  require_unit_director(m, "qubit_counter_roi");
  const ComplexMatrix ms = director_dot_sigma(m);
  return ResolutionOfIdentity({0.5 * (identity(2) + ms), 0.5 * (identity(2) - ms)});
}

PureState qubit_counter_state(const Vec3& m) {
  require_unit_director(m, "qubit_counter_state");
  ComplexVector v(2);
  if (m(2) > -0.5) {
    v << Complex(1.0 + m(2), 0.0), Complex(m(0), m(1));
  } else {
    v << Complex(m(0), -m(1)), Complex(1.0 - m(2), 0.0);
  }
  return PureState(phase_fixed(v.normalized()));
}

double qubit_portrait(const DensityMatrix& rho, const Vec3& m) {
  if (rho.dim() != 2) raise(Errc::DimensionMismatch, "qubit_portrait needs a qubit state");
  require_unit_director(m, "qubit_portrait");
  return 0.5 + 0.5 * qubit_director(rho.matrix()).dot(m);
}

}  // namespace qp
