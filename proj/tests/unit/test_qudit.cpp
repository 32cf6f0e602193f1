#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "qportrait/errors.hpp"
#include "qportrait/qudit.hpp"

using namespace qp;
using oracle::C;
using oracle::Mat;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

Mat diag2(double a, double b) { return (Mat(2, 2) << a, 0, 0, b).finished(); }

}  // namespace

TEST(DensityMatrix, Validation) {
  EXPECT_EQ(code_of([] { DensityMatrix(Mat::Identity(2, 2)); }), Errc::InvalidDensity);
  EXPECT_EQ(code_of([] { DensityMatrix(diag2(1.5, -0.5)); }), Errc::InvalidDensity);
  Mat bad = Mat::Identity(2, 2) / 2.0;
  bad(0, 1) = 0.3;
  EXPECT_EQ(code_of([&] { DensityMatrix{bad}; }), Errc::NotHermitian);
  EXPECT_NO_THROW(DensityMatrix(Mat::Identity(3, 3) / 3.0));
}

TEST(PureState, RequiresUnitNorm) {
  EXPECT_EQ(code_of([] { PureState(Eigen::VectorXcd::Ones(2)); }), Errc::NotNormalized);
  EXPECT_NO_THROW(PureState::normalized(Eigen::VectorXcd::Ones(2)));
}

TEST(ResolutionOfIdentity, DiagonalObservable) {
  const auto r = resolution_of_identity(Observable(diag2(2, 1)));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_LT(oracle::max_abs(r[0] - diag2(1, 0)), 1e-12);
  EXPECT_LT(oracle::max_abs(r[1] - diag2(0, 1)), 1e-12);
}

TEST(ResolutionOfIdentity, SigmaX) {
  const auto r = resolution_of_identity(Observable(oracle::sigma(1)));
  const Mat plus = (Mat(2, 2) << 0.5, 0.5, 0.5, 0.5).finished();
  EXPECT_LT(oracle::max_abs(r[0] - plus), 1e-12);
  EXPECT_LT(oracle::max_abs(r[1] - (Mat::Identity(2, 2) - plus)), 1e-12);
}

TEST(ResolutionOfIdentity, DegenerateInputStillResolvesIdentity) {
  const auto r = resolution_of_identity(Mat::Identity(4, 4) / 4.0);
  Mat sum = Mat::Zero(4, 4);
  for (std::size_t k = 0; k < r.size(); ++k) {
    sum += r[k];
    EXPECT_EQ(r.rank(k), 1);
    for (std::size_t m = 0; m < r.size(); ++m) {
      const Mat prod = r[k] * r[m];
      EXPECT_LT(oracle::max_abs(prod - (k == m ? r[k] : Mat::Zero(4, 4))), 1e-9);
    }
  }
  EXPECT_LT(oracle::max_abs(sum - Mat::Identity(4, 4)), 1e-10);
}

TEST(ResolutionOfIdentity, RejectsIncompleteFamily) {
  EXPECT_EQ(code_of([] { ResolutionOfIdentity({diag2(1, 0)}); }), Errc::InvalidResolution);
}

TEST(PauliBasis, QubitIsThePauliSet) {
  const auto b = build_pauli_basis(2);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_LT(oracle::max_abs(b.matrices[0] - Mat::Identity(2, 2)), 1e-15);
  for (int a = 1; a <= 3; ++a) {
    int hits = 0;
    for (std::size_t p = 1; p < 4; ++p) hits += oracle::max_abs(b.matrices[p] - oracle::sigma(a)) < 1e-14;
    EXPECT_EQ(hits, 1) << "sigma " << a;
  }
  for (std::size_t p = 1; p < 4; ++p) EXPECT_NEAR(b.norms[p], 2.0, 1e-14);
}

TEST(PauliBasis, OrthogonalityAndCounts) {
  for (int n = 2; n <= 6; ++n) {
    const auto b = build_pauli_basis(n);
    ASSERT_EQ(static_cast<int>(b.size()), n * n);
    int off = 0, diagonal = 0;
    for (std::size_t p = 0; p < b.size(); ++p) {
      const Mat& m = b.matrices[p];
      EXPECT_LT(oracle::max_abs(m - m.adjoint()), 1e-15);
      if (p > 0) EXPECT_NEAR(std::abs(m.trace()), 0.0, 1e-12);
      const bool is_diag = oracle::max_abs(m - Mat(m.diagonal().asDiagonal())) == 0.0;
      (is_diag ? diagonal : off)++;
      for (std::size_t q = 0; q < b.size(); ++q) {
        const double expected = p == q ? b.norms[p] : 0.0;
        EXPECT_NEAR(std::abs((m * b.matrices[q]).trace() - expected), 0.0, 1e-10);
      }
    }
    EXPECT_EQ(off, n * n - n);
    EXPECT_EQ(diagonal, n);
  }
}

TEST(PauliBasis, RandomHermitianRoundTrip) {
  oracle::Random rng(3);
  for (int n = 2; n <= 5; ++n) {
    const auto b = build_pauli_basis(n);
    for (int trial = 0; trial < 10; ++trial) {
      const Mat a = rng.hermitian(n);
      EXPECT_LT(oracle::max_abs(from_basis_coefficients(b, basis_coefficients(b, a)) - a), 1e-10);
    }
  }
}

TEST(PauliBasis, RejectsDimensionOne) { EXPECT_EQ(code_of([] { build_pauli_basis(1); }), Errc::InvalidArgument); }

TEST(Expectation, Examples) {
  oracle::Random rng(4);
  const DensityMatrix rho(rng.density(3));
  EXPECT_NEAR(expectation(Observable(Mat::Identity(3, 3)), rho), 1.0, 1e-12);
  EXPECT_NEAR(expectation(Observable(oracle::sigma(3)), qubit_density(Vec3(0.1, -0.2, 0.45))), 0.45, 1e-12);
  EXPECT_NEAR(expectation(Observable(oracle::sigma(1)), DensityMatrix(diag2(1, 0))), 0.0, 1e-15);
  EXPECT_EQ(code_of([&] { expectation(Observable(oracle::sigma(1)), rho); }), Errc::DimensionMismatch);
}

TEST(Expectation, TwoPathsAgree) {
  oracle::Random rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 6);
    const Observable a(rng.hermitian(n));
    const DensityMatrix rho(rng.density(n));
    EXPECT_NEAR(expectation(a, rho), expectation_via_transform(a, rho), 1e-9);
    EXPECT_NEAR(expectation(a, rho), oracle::expect(rho.matrix(), a.matrix()), 1e-12);
  }
}

TEST(TransformMatrix, SameResolutionIsIdentity) {
  oracle::Random rng(6);
  const auto r = resolution_of_identity(rng.hermitian(4));
  EXPECT_EQ(oracle::max_abs(transform_matrix(r, r) - Mat::Identity(4, 4)), 0.0);
}

TEST(TransformMatrix, ZToXTransportsProjectors) {
  const auto z = ResolutionOfIdentity::computational(2);
  const auto x = resolution_of_identity(Observable(oracle::sigma(1)));
  const Mat u = transform_matrix(z, x);
  // Explicit sum |k;x><k;z| with the x vectors (1, 1)/sqrt2 and (-1, 1)/sqrt2.
  const double h = 1.0 / std::sqrt(2.0);
  const Mat expected = (Mat(2, 2) << h, -h, h, h).finished();
  EXPECT_LT(oracle::max_abs(u - expected), 1e-12);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_LT(oracle::max_abs(u * z[k] * u.adjoint() - x[k]), 1e-12);
}

TEST(TransformMatrix, RandomPairsAreUnitaryAndTransport) {
  oracle::Random rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = resolution_of_identity(rng.hermitian(4));
    const auto b = resolution_of_identity(rng.hermitian(4));
    const Mat u = transform_matrix(a, b);
    EXPECT_LT(oracle::max_abs(u.adjoint() * u - Mat::Identity(4, 4)), 1e-10);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(oracle::max_abs(u * a[k] * u.adjoint() - b[k]), 1e-9);
  }
}

TEST(TransformMatrix, Errors) {
  const auto coarse = ResolutionOfIdentity({(Mat(3, 3) << 1, 0, 0, 0, 1, 0, 0, 0, 0).finished(),
                                            (Mat(3, 3) << 0, 0, 0, 0, 0, 0, 0, 0, 1).finished()});
  EXPECT_EQ(code_of([&] { transform_matrix(coarse, coarse); }), Errc::CoarseProjector);
  EXPECT_EQ(code_of([] { transform_matrix(ResolutionOfIdentity::computational(2), ResolutionOfIdentity::computational(3)); }),
            Errc::DimensionMismatch);
}

TEST(PhasePortrait, Examples) {
  oracle::Random rng(8);
  const auto v = rng.pure(4);
  EXPECT_NEAR(phase_portrait_value(DensityMatrix::from_pure(v), PureState(v)), 1.0, 1e-12);
  EXPECT_NEAR(phase_portrait_value(DensityMatrix::maximally_mixed(4), PureState(rng.pure(4))), 0.25, 1e-12);
  const DensityMatrix rho(rng.density(4));
  const auto roi = resolution_of_identity(rho);
  const auto sd = hermitian_eig(rho.matrix());
  for (std::size_t k = 0; k < 4; ++k)
    EXPECT_NEAR(phase_portrait_value(rho, PureState(roi.vector(k))), sd.eigenvalues(static_cast<Eigen::Index>(k)), 1e-10);
}

TEST(PhasePortrait, PureStatesFollowTheAngle) {
  oracle::Random rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = rng.pure(3), psi = rng.pure(3);
    const double overlap = std::norm(phi.dot(psi));
    EXPECT_NEAR(phase_portrait_value(DensityMatrix::from_pure(phi), PureState(psi)), overlap, 1e-12);
  }
}

TEST(PhasePortrait, BoundedOnRandomInputs) {
  oracle::Random rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(2, 8);
    const double v = phase_portrait_value(DensityMatrix(rng.density(n)), PureState(rng.pure(n)));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(PortraitDistribution, Examples) {
  oracle::Random rng(12);
  const DensityMatrix rho(rng.density(5));
  const auto p = portrait_distribution(rho, resolution_of_identity(rho));
  const auto sd = hermitian_eig(rho.matrix());
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(p[static_cast<std::size_t>(k)], sd.eigenvalues(k), 1e-10);

  for (double v : portrait_distribution(DensityMatrix::maximally_mixed(3), resolution_of_identity(rng.hermitian(3))))
    EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);

  const auto px = portrait_distribution(qubit_density(Vec3(0, 0, 0.6)), qubit_counter_roi(Vec3::UnitX()));
  EXPECT_NEAR(px[0], 0.5, 1e-12);
  EXPECT_NEAR(px[1], 0.5, 1e-12);
}

TEST(PortraitDistribution, UnitaryInvariance) {
  oracle::Random rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(2, 6);
    const Mat rho = rng.density(n);
    const auto r = resolution_of_identity(rng.hermitian(n));
    const Mat u = rng.unitary(n);
    const auto a = portrait_distribution(DensityMatrix(rho), r);
    const auto b = portrait_distribution(DensityMatrix(u * rho * u.adjoint()), r.transformed(u));
    for (int k = 0; k < n; ++k) EXPECT_NEAR(a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)], 1e-10);
  }
}

TEST(QubitDensity, Examples) {
  EXPECT_LT(oracle::max_abs(qubit_density(Vec3::Zero()).matrix() - Mat::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LT(oracle::max_abs(qubit_density(Vec3::UnitZ()).matrix() - diag2(1, 0)), 1e-15);
  const auto sd = hermitian_eig(qubit_density(Vec3(0, 0, 0.6)).matrix());
  EXPECT_NEAR(sd.eigenvalues(0), 0.8, 1e-12);
  EXPECT_NEAR(sd.eigenvalues(1), 0.2, 1e-12);
  EXPECT_EQ(code_of([] { qubit_density(Vec3(0.8, 0.7, 0)); }), Errc::DirectorTooLong);
}

TEST(QubitDensity, EigenvaluesFollowDirectorLength) {
  oracle::Random rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const double len = rng.uniform(0, 1);
    const auto sd = hermitian_eig(qubit_density(len * rng.direction()).matrix());
    EXPECT_NEAR(sd.eigenvalues(0), (1 + len) / 2, 1e-12);
    EXPECT_NEAR(sd.eigenvalues(1), (1 - len) / 2, 1e-12);
  }
}

TEST(QubitPortrait, Examples) {
  oracle::Random rng(15);
  const Vec3 n = rng.direction();
  EXPECT_NEAR(qubit_portrait(qubit_density(n), n), 1.0, 1e-12);
  const Vec3 perp = n.cross(rng.direction()).normalized();
  EXPECT_NEAR(qubit_portrait(qubit_density(0.37 * n), perp), 0.5, 1e-12);
  // p = 0.9 means director length 0.8; opposite counter.
  EXPECT_NEAR(qubit_portrait(qubit_density(0.8 * n), -n), 0.1, 1e-12);
  EXPECT_EQ(code_of([] { qubit_portrait(qubit_density(Vec3::Zero()), Vec3(0, 0, 0.5)); }), Errc::BadDirector);
  EXPECT_EQ(code_of([] { qubit_portrait(DensityMatrix::maximally_mixed(3), Vec3::UnitZ()); }), Errc::DimensionMismatch);
}

TEST(QubitPortrait, TwoPathsAgree) {
  oracle::Random rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = qubit_density(rng.uniform(0, 1) * rng.direction());
    const Vec3 m = rng.direction();
    EXPECT_NEAR(qubit_portrait(rho, m), phase_portrait_value(rho, qubit_counter_state(m)), 1e-12);
    EXPECT_LT(oracle::max_abs(qubit_counter_state(m).projector() - qubit_counter_roi(m)[0]), 1e-12);
  }
}

TEST(QubitPortrait, MaximumOverSphere) {
  const Vec3 d(0.3, -0.2, 0.5);
  const DensityMatrix rho = qubit_density(d);
  double best = 0.0;
  const int steps = 3142;  // about 1e-3 rad
  for (int i = 0; i <= steps; ++i) {
    const double theta = kPi * i / steps;
    for (int j = 0; j < 8; ++j) {
      // Coarse in phi, refined around the director's azimuth below.
      const double phi = std::atan2(d(1), d(0)) + (j - 4) * 1e-3;
      const Vec3 m(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
      best = std::max(best, qubit_portrait(rho, m));
    }
  }
  EXPECT_NEAR(best, (1 + d.norm()) / 2, 1e-6);
}
