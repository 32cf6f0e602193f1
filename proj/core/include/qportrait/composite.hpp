#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qportrait/qudit.hpp"

namespace qp {

/// Two particles L and S with composite index r(n, p) = n + p * N_L.
struct BipartiteLayout {
  int n_l = 2;
  int n_s = 2;

  BipartiteLayout() = default;
  /// Throws Errc::InvalidArgument for factor dimensions below 2.
  BipartiteLayout(int nl, int ns);

  int dim() const { return n_l * n_s; }
  int index(int n, int p) const { return n + p * n_l; }
  int factor_dim(Factor f) const { return f == Factor::L ? n_l : n_s; }
  void require_dim(int d, const char* what) const;
};

/// A_L acting on the L particle, identity on S.
ComplexMatrix embed_local(const ComplexMatrix& a, Factor which, const BipartiteLayout& layout);
/// A_L B_S as a composite operator.
ComplexMatrix compose_local(const ComplexMatrix& a_l, const ComplexMatrix& b_s,
                            const BipartiteLayout& layout);

struct LocalResolutions {
  ResolutionOfIdentity l;
  ResolutionOfIdentity s;
};

/// Pi_n^(L) = sum_p Pi_r(n,p) and Pi_p^(S) = sum_n Pi_r(n,p), as composite
/// operators.
LocalResolutions coarse_local_projectors(const ResolutionOfIdentity& roi,
                                         const BipartiteLayout& layout);

/// Product resolution {Pi_n^(L) Pi_p^(S)} ordered by r(n,p).
ResolutionOfIdentity product_resolution(const ResolutionOfIdentity& roi_l,
                                        const ResolutionOfIdentity& roi_s);

/// Expectations of the composite basis. Entry i of d_l belongs to the L
/// basis matrix i + 1 (index 0 is the identity); same for S and d_cross.
struct PairCoefficients {
  BipartiteLayout layout;
  RealVector d_l;
  RealVector d_s;
  RealMatrix d_cross;

  // Qubit pairs only, in (x, y, z) order: d0 = <sigma^(L)>, d1 = <sigma^(S)>,
  // dab(a, b) = <sigma_a^(L) sigma_b^(S)>.
  bool qubit_pair = false;
  Vec3 d0 = Vec3::Zero();
  Vec3 d1 = Vec3::Zero();
  Eigen::Matrix3d dab = Eigen::Matrix3d::Zero();
};

PairCoefficients pair_coefficients(const DensityMatrix& rho, const BipartiteLayout& layout);
/// Reassembles the composite density matrix from the basis expansion.
DensityMatrix density_from_pair_coefficients(const PairCoefficients& c);

/// Qubit pair (I + d0.Sigma0 + d1.Sigma1 + dab Sigma_ab) / 4.
DensityMatrix pair_density(const Vec3& d0, const Vec3& d1, const Eigen::Matrix3d& dab);

DensityMatrix local_density(const DensityMatrix& rho, const BipartiteLayout& layout, Factor which);

/// State of the other particle after the `measured` particle registered phi.
/// Throws Errc::ZeroProbabilityCondition if the outcome has no weight.
DensityMatrix conditional_state(const DensityMatrix& rho, const BipartiteLayout& layout,
                                Factor measured, const PureState& phi);
/// Probability that the `measured` particle registers phi.
double conditional_probability(const DensityMatrix& rho, const BipartiteLayout& layout,
                               Factor measured, const PureState& phi);

/// Effective director of qubit `which` (0 = L, 1 = S) given a counter m on the
/// other qubit.
Vec3 conditional_director(const DensityMatrix& rho, const Vec3& m, int which);

enum class EntanglementClass { Separable, ClassicallyCorrelated, LightEntanglement, TotalEntanglement };

const char* entanglement_class_name(EntanglementClass c);

struct EntanglementVerdict {
  EntanglementClass cls = EntanglementClass::Separable;
  int covariance_rank = 0;
  Vec3 singular_values = Vec3::Zero();
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  Vec3 d0 = Vec3::Zero();
  Vec3 d1 = Vec3::Zero();
};

/// Rank of c_ab = d_ab - d0_a d1_b decides the class.
EntanglementVerdict classify_entanglement(const DensityMatrix& rho);

/// |0> = cos psi |00> + sin psi |11>, |1> = cos phi |01> + sin phi |10>,
/// |2> = -sin phi |01> + cos phi |10>, |3> = -sin psi |00> + cos psi |11>.
/// In |ab>, a belongs to L.
std::array<PureState, 4> canonical_entangled_basis(double psi, double phi);

/// exp(iJ) for J = alpha a_L a_S^+ + h.c., where a = |m0><m1| on each particle.
ComplexMatrix entangling_unitary(Complex alpha, std::pair<int, int> modes,
                                 const BipartiteLayout& layout);

enum class TransformClass { Stabilizer, Local, Entangling };

const char* transform_class_name(TransformClass c);

struct TransformReport {
  TransformClass cls = TransformClass::Stabilizer;
  /// Second singular value over the first of the realigned U; 0 for products.
  double schmidt_ratio = 0.0;
  /// Frobenius weight of the cross terms of the principal generator.
  double cross_weight = 0.0;
};

TransformReport classify_transform(const ComplexMatrix& u, const BipartiteLayout& layout);

/// Operator-Schmidt singular values of m across the L|S cut, descending.
RealVector operator_schmidt_values(const ComplexMatrix& m, const BipartiteLayout& layout);

}  // namespace qp
