#include "qportrait/composite.hpp"

#include <cmath>

#include "qportrait/errors.hpp"
#include "qportrait/tolerance.hpp"

namespace qp {

BipartiteLayout::BipartiteLayout(int nl, int ns) : n_l(nl), n_s(ns) {
  if (nl < 2 || ns < 2) {
    raise(Errc::InvalidArgument, "factor dimensions must be at least 2, got " + std::to_string(nl) +
                                     "x" + std::to_string(ns));
  }
}

void BipartiteLayout::require_dim(int d, const char* what) const {
  if (d != dim()) {
    raise(Errc::DimensionMismatch, std::string(what) + ": dimension " + std::to_string(d) +
                                       " does not factor as " + std::to_string(n_l) + "x" +
                                       std::to_string(n_s));
  }
}

ComplexMatrix compose_local(const ComplexMatrix& a_l, const ComplexMatrix& b_s,
                            const BipartiteLayout& layout) {
  if (a_l.rows() != layout.n_l || b_s.rows() != layout.n_s) {
    raise(Errc::DimensionMismatch, "compose_local: factor operators do not match the layout");
  }
  return kron(b_s, a_l);
}

ComplexMatrix embed_local(const ComplexMatrix& a, Factor which, const BipartiteLayout& layout) {
  if (which == Factor::L) return compose_local(a, identity(layout.n_s), layout);
  return compose_local(identity(layout.n_l), a, layout);
}

LocalResolutions coarse_local_projectors(const ResolutionOfIdentity& roi,
                                         const BipartiteLayout& layout) {
  layout.require_dim(roi.dim(), "coarse_local_projectors");
  if (static_cast<int>(roi.size()) != layout.dim()) {
    raise(Errc::DimensionMismatch, "coarse_local_projectors needs N_L*N_S projectors");
  }
  const int n = layout.dim();
  std::vector<ComplexMatrix> pl(layout.n_l, ComplexMatrix::Zero(n, n));
  std::vector<ComplexMatrix> ps(layout.n_s, ComplexMatrix::Zero(n, n));
  for (int a = 0; a < layout.n_l; ++a) {
    for (int b = 0; b < layout.n_s; ++b) {
      const auto& pi = roi[static_cast<std::size_t>(layout.index(a, b))];
      pl[a] += pi;
      ps[b] += pi;
    }
  }
  return {ResolutionOfIdentity(std::move(pl)), ResolutionOfIdentity(std::move(ps))};
}

ResolutionOfIdentity product_resolution(const ResolutionOfIdentity& roi_l,
                                        const ResolutionOfIdentity& roi_s) {
  const BipartiteLayout layout(roi_l.dim(), roi_s.dim());
  std::vector<ComplexMatrix> out;
  out.reserve(roi_l.size() * roi_s.size());
  for (std::size_t b = 0; b < roi_s.size(); ++b)
    for (std::size_t a = 0; a < roi_l.size(); ++a)
      out.push_back(compose_local(roi_l[a], roi_s[b], layout));
  return ResolutionOfIdentity(std::move(out));
}

namespace {

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // tr(AB) without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

}  // namespace

PairCoefficients pair_coefficients(const DensityMatrix& rho, const BipartiteLayout& layout) {
  layout.require_dim(rho.dim(), "pair_coefficients");
  const PauliBasis bl = build_pauli_basis(layout.n_l);
  const PauliBasis bs = build_pauli_basis(layout.n_s);
  const int kl = static_cast<int>(bl.size()) - 1;
  const int ks = static_cast<int>(bs.size()) - 1;
  const ComplexMatrix& m = rho.matrix();

  PairCoefficients c;
  c.layout = layout;
  c.d_l.resize(kl);
  c.d_s.resize(ks);
  c.d_cross.resize(kl, ks);
  for (int n = 0; n < kl; ++n)
    c.d_l(n) = real_trace_product(m, embed_local(bl.matrices[n + 1], Factor::L, layout));
  for (int p = 0; p < ks; ++p)
    c.d_s(p) = real_trace_product(m, embed_local(bs.matrices[p + 1], Factor::S, layout));
  for (int n = 0; n < kl; ++n)
    for (int p = 0; p < ks; ++p)
      c.d_cross(n, p) =
          real_trace_product(m, compose_local(bl.matrices[n + 1], bs.matrices[p + 1], layout));

  if (layout.n_l == 2 && layout.n_s == 2) {
    c.qubit_pair = true;
    const auto& s = pauli_matrices();
    for (int a = 0; a < 3; ++a) {
      c.d0(a) = real_trace_product(m, embed_local(s[a], Factor::L, layout));
      c.d1(a) = real_trace_product(m, embed_local(s[a], Factor::S, layout));
      for (int b = 0; b < 3; ++b) c.dab(a, b) = real_trace_product(m, compose_local(s[a], s[b], layout));
    }
  }
  return c;
}

DensityMatrix density_from_pair_coefficients(const PairCoefficients& c) {
  const BipartiteLayout& layout = c.layout;
  const PauliBasis bl = build_pauli_basis(layout.n_l);
  const PauliBasis bs = build_pauli_basis(layout.n_s);
  if (c.d_l.size() + 1 != static_cast<Eigen::Index>(bl.size()) ||
      c.d_s.size() + 1 != static_cast<Eigen::Index>(bs.size()) || c.d_cross.rows() != c.d_l.size() ||
      c.d_cross.cols() != c.d_s.size()) {
    raise(Errc::DimensionMismatch, "pair coefficients do not match the layout");
  }
  const double nl = layout.n_l;
  const double ns = layout.n_s;
  ComplexMatrix rho = identity(layout.dim()) / (nl * ns);
  for (Eigen::Index n = 0; n < c.d_l.size(); ++n) {
    rho += c.d_l(n) / (bl.norms[n + 1] * ns) * embed_local(bl.matrices[n + 1], Factor::L, layout);
  }
  for (Eigen::Index p = 0; p < c.d_s.size(); ++p) {
    rho += c.d_s(p) / (nl * bs.norms[p + 1]) * embed_local(bs.matrices[p + 1], Factor::S, layout);
  }
  for (Eigen::Index n = 0; n < c.d_l.size(); ++n)
    for (Eigen::Index p = 0; p < c.d_s.size(); ++p)
      rho += c.d_cross(n, p) / (bl.norms[n + 1] * bs.norms[p + 1]) *
             compose_local(bl.matrices[n + 1], bs.matrices[p + 1], layout);
  return DensityMatrix(rho);
}

DensityMatrix pair_density(const Vec3& d0, const Vec3& d1, const Eigen::Matrix3d& dab) {
  const BipartiteLayout layout(2, 2);
  const auto& s = pauli_matrices();
  ComplexMatrix rho = identity(4);
  for (int a = 0; a < 3; ++a) {
    rho += d0(a) * embed_local(s[a], Factor::L, layout);
    rho += d1(a) * embed_local(s[a], Factor::S, layout);
    for (int b = 0; b < 3; ++b) rho += dab(a, b) * compose_local(s[a], s[b], layout);
  }
  return DensityMatrix(rho / 4.0);
}

DensityMatrix local_density(const DensityMatrix& rho, const BipartiteLayout& layout, Factor which) {
  layout.require_dim(rho.dim(), "local_density");
  return DensityMatrix(partial_trace(rho.matrix(), which, layout.n_l, layout.n_s));
}

namespace {

Factor other(Factor f) { return f == Factor::L ? Factor::S : Factor::L; }

ComplexMatrix wrapped(const DensityMatrix& rho, const BipartiteLayout& layout, Factor measured,
                      const PureState& phi) {
  layout.require_dim(rho.dim(), "conditional_state");
  if (phi.dim() != layout.factor_dim(measured)) {
    raise(Errc::DimensionMismatch, "conditioning state does not match the measured particle");
  }
  const ComplexMatrix p = embed_local(phi.projector(), measured, layout);
  return p * rho.matrix() * p;
}

}  // namespace

double conditional_probability(const DensityMatrix& rho, const BipartiteLayout& layout,
                               Factor measured, const PureState& phi) {
  return wrapped(rho, layout, measured, phi).trace().real();
}

DensityMatrix conditional_state(const DensityMatrix& rho, const BipartiteLayout& layout,
                                Factor measured, const PureState& phi) {
  const ComplexMatrix w = wrapped(rho, layout, measured, phi);
  const double prob = w.trace().real();
  if (prob <= tol::zero_condition()) {
    raise(Errc::ZeroProbabilityCondition,
          "conditioning outcome has probability " + std::to_string(prob));
  }
  return DensityMatrix(partial_trace(w, other(measured), layout.n_l, layout.n_s) / prob);
}

Vec3 conditional_director(const DensityMatrix& rho, const Vec3& m, int which) {
  if (which != 0 && which != 1) raise(Errc::IndexOutOfRange, "conditional_director: which must be 0 or 1");
  require_unit_director(m, "conditional_director");
  const PairCoefficients c = pair_coefficients(rho, BipartiteLayout(2, 2));
  const Vec3& own = which == 0 ? c.d0 : c.d1;
  const Vec3& counter = which == 0 ? c.d1 : c.d0;
  const Vec3 moment = which == 0 ? Vec3(c.dab * m) : Vec3(c.dab.transpose() * m);
  const double den = 1.0 + m.dot(counter);
  if (den <= tol::zero_condition()) {
    raise(Errc::ZeroProbabilityCondition, "counter outcome has vanishing probability");
  }
  return (own + moment) / den;
}

const char* entanglement_class_name(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Separable: return "Separable";
    case EntanglementClass::ClassicallyCorrelated: return "ClassicallyCorrelated";
    case EntanglementClass::LightEntanglement: return "LightEntanglement";
    case EntanglementClass::TotalEntanglement: return "TotalEntanglement";
  }
  return "?";
}

EntanglementVerdict classify_entanglement(const DensityMatrix& rho) {
  if (rho.dim() != 4) raise(Errc::DimensionMismatch, "classify_entanglement needs a qubit pair");
  const PairCoefficients c = pair_coefficients(rho, BipartiteLayout(2, 2));
  EntanglementVerdict v;
  v.d0 = c.d0;
  v.d1 = c.d1;
  v.covariance = c.dab - c.d0 * c.d1.transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(v.covariance);
  v.singular_values = svd.singularValues();
  const double s1 = v.singular_values(0);
  if (s1 >= tol::rank_absolute()) {
    for (int i = 0; i < 3; ++i)
      if (v.singular_values(i) > tol::rank_relative() * s1) ++v.covariance_rank;
  }
  switch (v.covariance_rank) {
    case 0: v.cls = EntanglementClass::Separable; break;
    case 1: v.cls = EntanglementClass::ClassicallyCorrelated; break;
    case 2: v.cls = EntanglementClass::LightEntanglement; break;
    default: v.cls = EntanglementClass::TotalEntanglement; break;
  }
  return v;
}

std::array<PureState, 4> canonical_entangled_basis(double psi, double phi) {
  // |ab> sits at index a + 2b.
  constexpr int k00 = 0, k10 = 1, k01 = 2, k11 = 3;
  auto vec = [](std::initializer_list<std::pair<int, double>> terms) {
    ComplexVector v = ComplexVector::Zero(4);
    for (const auto& [k, a] : terms) v(k) = a;
    return PureState(v);
  };
  const double cps = std::cos(psi), sps = std::sin(psi);
  const double cph = std::cos(phi), sph = std::sin(phi);
  return {vec({{k00, cps}, {k11, sps}}), vec({{k01, cph}, {k10, sph}}),
          vec({{k01, -sph}, {k10, cph}}), vec({{k00, -sps}, {k11, cps}})};
}

ComplexMatrix entangling_unitary(Complex alpha, std::pair<int, int> modes,
                                 const BipartiteLayout& layout) {
  const auto [m0, m1] = modes;
  const int bound = std::min(layout.n_l, layout.n_s);
  if (m0 == m1 || m0 < 0 || m1 < 0 || m0 >= bound || m1 >= bound) {
    raise(Errc::IndexOutOfRange, "entangling_unitary: bad mode pair");
  }
  const int n = layout.dim();
  const double mag = std::abs(alpha);
  if (mag == 0.0) return identity(n);
  const Complex unit = alpha / mag;

  auto ladder = [](int dim, int from_row, int to_col) {
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    a(from_row, to_col) = 1.0;
    return a;
  };
  const ComplexMatrix a_l = ladder(layout.n_l, m0, m1);
  const ComplexMatrix a_s = ladder(layout.n_s, m0, m1);
  const ComplexMatrix pl0 = ladder(layout.n_l, m0, m0), pl1 = ladder(layout.n_l, m1, m1);
  const ComplexMatrix ps0 = ladder(layout.n_s, m0, m0), ps1 = ladder(layout.n_s, m1, m1);

  ComplexMatrix u = identity(n);
  u += (std::cos(mag) - 1.0) *
       (compose_local(pl0, ps1, layout) + compose_local(pl1, ps0, layout));
  u += Complex(0.0, std::sin(mag)) * (unit * compose_local(a_l, a_s.adjoint(), layout) +
                                      std::conj(unit) * compose_local(a_l.adjoint(), a_s, layout));
  return u;
}

const char* transform_class_name(TransformClass c) {
  switch (c) {
    case TransformClass::Stabilizer: return "Stabilizer";
    case TransformClass::Local: return "Local";
    case TransformClass::Entangling: return "Entangling";
  }
  return "?";
}

RealVector operator_schmidt_values(const ComplexMatrix& m, const BipartiteLayout& layout) {
  layout.require_dim(static_cast<int>(m.rows()), "operator_schmidt_values");
  const int nl = layout.n_l, ns = layout.n_s;
  ComplexMatrix realigned(nl * nl, ns * ns);
  for (int n = 0; n < nl; ++n)
    for (int n2 = 0; n2 < nl; ++n2)
      for (int p = 0; p < ns; ++p)
        for (int p2 = 0; p2 < ns; ++p2)
          realigned(n + n2 * nl, p + p2 * ns) = m(layout.index(n, p), layout.index(n2, p2));
  Eigen::JacobiSVD<ComplexMatrix> svd(realigned);
  return svd.singularValues();
}

namespace {

double off_diagonal_max(const ComplexMatrix& u) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j)
      if (i != j) worst = std::max(worst, std::abs(u(i, j)));
  return worst;
}

double cross_weight(const ComplexMatrix& j, const BipartiteLayout& layout) {
  const PauliBasis bl = build_pauli_basis(layout.n_l);
  const PauliBasis bs = build_pauli_basis(layout.n_s);
  double sum = 0.0;
  for (std::size_t n = 1; n < bl.size(); ++n) {
    for (std::size_t p = 1; p < bs.size(); ++p) {
      const double coeff = real_trace_product(j, compose_local(bl.matrices[n], bs.matrices[p], layout)) /
                           (bl.norms[n] * bs.norms[p]);
      sum += coeff * coeff;
    }
  }
  return std::sqrt(sum);
}

}  // namespace

TransformReport classify_transform(const ComplexMatrix& u, const BipartiteLayout& layout) {
  layout.require_dim(static_cast<int>(u.rows()), "classify_transform");
  if (!is_unitary(u, tol::unitary())) raise(Errc::NotUnitary, "classify_transform: matrix is not unitary");
  TransformReport report;
  const RealVector sv = operator_schmidt_values(u, layout);
  report.schmidt_ratio = sv.size() > 1 && sv(0) > 0.0 ? sv(1) / sv(0) : 0.0;
  report.cross_weight = cross_weight(generator_from_unitary(u), layout);
  if (off_diagonal_max(u) <= tol::commute()) {
    report.cls = TransformClass::Stabilizer;
  } else if (report.schmidt_ratio <= tol::rank_relative()) {
    report.cls = TransformClass::Local;
  } else {
    report.cls = TransformClass::Entangling;
  }
  return report;
}

}  // namespace qp
