#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace quasifold;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InternalInconsistency;
}

DelzantData standard_simplex(std::size_t n) {
  const auto f = Field::rationals();
  std::vector<Facet> facets;
  for (std::size_t i = 0; i < n; ++i) {
    ScalarVector e(n, Scalar::zero(f));
    e[i] = Scalar::one(f);
    facets.push_back({e, Scalar::zero(f)});
  }
  facets.push_back({ScalarVector(n, Scalar(f, mpq_class(-1))), Scalar(f, mpq_class(-1))});
  return build_construction(HPolytope::create(f, n, std::move(facets)));
}

}  // namespace

TEST(Sampling, DeterministicPerSeed) {
  const auto dd = qtest::construct("pentagon");
  const auto a = sample_level_set(dd, 50, 42), b = sample_level_set(dd, 50, 42), c = sample_level_set(dd, 50, 43);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mu, b[i].mu);
    EXPECT_EQ(a[i].phases, b[i].phases);
  }
  EXPECT_NE(a[0].mu, c[0].mu);
}

TEST(Sampling, PointsLieOnTheLevelSetOverMu) {
  const auto dd = qtest::construct("triangle-sqrt2");
  for (const auto& s : sample_level_set(dd, 300, 1)) {
    const Eigen::VectorXd slack = float_slacks(dd, s.mu);
    EXPECT_GE(slack.minCoeff(), 0);
    for (std::size_t j = 0; j < dd.d(); ++j) EXPECT_NEAR(std::norm(s.z[j]), slack(static_cast<Eigen::Index>(j)), 1e-14);
    EXPECT_LT(moment_Psi(s.z, dd).norm(), 1e-13);
  }
}

TEST(Sampling, UniformOverTheSquare) {
  const auto dd = qtest::construct("square");
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  const auto samples = sample_level_set(dd, 10000, 0);
  for (const auto& s : samples) mean += s.mu;
  mean /= static_cast<double>(samples.size());
  // standard error of each mean is 0.29 / 100
  EXPECT_NEAR(mean(0), 0.5, 0.015);
  EXPECT_NEAR(mean(1), 0.5, 0.015);
}

TEST(Sampling, RejectionStallInHighDimension) {
  // the 10-simplex fills 1/10! of its bounding box
  const auto dd = standard_simplex(10);
  EXPECT_EQ(kind_of([&] { sample_level_set(dd, 10, 0); }), ErrorKind::RejectionStall);
}

TEST(Sampling, ZeroCountIsRejected) {
  EXPECT_THROW(sample_level_set(qtest::construct("square"), 0, 0), Error);
}

TEST(MomentImage, RoundTripContainmentAndVertices) {
  for (const char* name : {"cp2", "pentagon", "cube", "interval-sqrt2"}) {
    const auto dd = qtest::construct(name);
    const auto rep = verify_moment_image(dd, sample_level_set(dd, 2000, 5), 5);
    EXPECT_LE(rep.max_roundtrip_error, 1e-12) << name;
    EXPECT_LE(rep.max_containment_violation, 1e-12) << name;
    ASSERT_EQ(rep.vertex_attainment_gaps.size(), dd.polytope.vertices().size());
    for (double g : rep.vertex_attainment_gaps) EXPECT_LE(g, 1e-12) << name;
  }
}

TEST(MomentImage, HausdorffOfKnownPointSets) {
  std::vector<Eigen::VectorXd> square, inner;
  for (auto [x, y] : std::vector<std::pair<double, double>>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}) {
    square.push_back(Eigen::Vector2d(x, y));
    inner.push_back(Eigen::Vector2d(0.1 + 0.8 * x, 0.1 + 0.8 * y));
  }
  auto [h, exact] = hull_hausdorff(square, inner);
  EXPECT_TRUE(exact);
  EXPECT_NEAR(h, 0.1 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(hull_hausdorff(square, square).first, 0);
  std::vector<Eigen::VectorXd> seg{Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd::Constant(1, 1.0)};
  std::vector<Eigen::VectorXd> pts{Eigen::VectorXd::Constant(1, 0.25), Eigen::VectorXd::Constant(1, 0.5)};
  EXPECT_NEAR(hull_hausdorff(seg, pts).first, 0.5, 1e-15);
}

TEST(RegularValue, JacobianMatchesFiniteDifferences) {
  const auto dd = qtest::construct("pentagon");
  const auto s = sample_level_set(dd, 3, 2);
  const auto& z = s[1].z;
  const Eigen::MatrixXd jac = psi_jacobian(dd, z);
  const double h = 1e-6;
  for (std::size_t j = 0; j < dd.d(); ++j)
    for (int part = 0; part < 2; ++part) {
      ComplexVector zp = z, zm = z;
      const std::complex<double> step = part == 0 ? std::complex<double>(h, 0) : std::complex<double>(0, h);
      zp[j] += step;
      zm[j] -= step;
      const Eigen::VectorXd fd = (moment_Psi(zp, dd) - moment_Psi(zm, dd)) / (2 * h);
      EXPECT_LT((fd - jac.col(static_cast<Eigen::Index>(2 * j + part))).norm(), 1e-8);
    }
  EXPECT_GT(check_regular_value(dd, s).min_relative_margin, 1e-6);
}

TEST(RegularValue, MarginVanishesAtTheOrigin) {
  const auto dd = qtest::construct("cp2");
  Sample s;
  s.z = ComplexVector(3, 0);
  EXPECT_EQ(check_regular_value(dd, {s}).min_relative_margin, 0);
}

TEST(Hamiltonian, ZeroDirectionGivesZeroResidual) {
  const auto dd = qtest::construct("square");
  const auto s = sample_level_set(dd, 1, 3);
  EXPECT_EQ(check_hamiltonian_identity(dd, s[0].z, Eigen::VectorXd::Zero(2), 1e-5), 0);
}

TEST(Hamiltonian, SquareAlongFirstAxis) {
  const auto dd = qtest::construct("square");
  for (const auto& s : sample_level_set(dd, 20, 4))
    EXPECT_LE(check_hamiltonian_identity(dd, s.z, Eigen::Vector2d(1, 0), 1e-5), 1e-6);
}

TEST(Hamiltonian, ResidualScalesQuadratically) {
  const auto dd = qtest::construct("pentagon");
  const auto s = sample_level_set(dd, 1, 8);
  const Eigen::Vector2d x(0.3, -0.7);
  const double r3 = check_hamiltonian_identity(dd, s[0].z, x, 1e-3);
  const double r4 = check_hamiltonian_identity(dd, s[0].z, x, 1e-4);
  EXPECT_NEAR(std::log10(r3 / r4), 2.0, 0.05);
}

TEST(Hamiltonian, DetectsAWrongMomentMap) {
  auto dd = qtest::construct("cp2");
  const auto s = sample_level_set(dd, 1, 6);
  const Eigen::Vector2d x(1, 1);
  EXPECT_LE(check_hamiltonian_identity(dd, s[0].z, x, 1e-5), 1e-6);
  dd.numeric.phi_solver *= -1;  // the opposite sign convention
  EXPECT_GT(check_hamiltonian_identity(dd, s[0].z, x, 1e-5), 1e-2);
}

TEST(Hamiltonian, StepOutOfRange) {
  const auto dd = qtest::construct("square");
  const auto s = sample_level_set(dd, 1, 0);
  for (double h : {1e-2, 1e-9, 0.0, -1e-5})
    EXPECT_EQ(kind_of([&] { check_hamiltonian_identity(dd, s[0].z, Eigen::Vector2d(1, 0), h); }),
              ErrorKind::StepOutOfRange);
  EXPECT_NO_THROW(check_hamiltonian_identity(dd, s[0].z, Eigen::Vector2d(1, 0), 1e-8));
  EXPECT_NO_THROW(check_hamiltonian_identity(dd, s[0].z, Eigen::Vector2d(1, 0), 1e-3));
}

TEST(Invariance, TorusAndKernelActions) {
  for (const char* name : {"triangle-sqrt2", "pentagon", "rugby-3"}) {
    const auto dd = qtest::construct(name);
    const auto rep = check_invariance(dd, sample_level_set(dd, 500, 9), 9);
    EXPECT_LE(rep.psi_torus_residual, 1e-12) << name;
    EXPECT_LE(rep.phi_kernel_residual, 1e-12) << name;
    ASSERT_TRUE(rep.effectiveness_witness.has_value());
    EXPECT_EQ(*rep.effectiveness_witness, 0u);
  }
}

TEST(Report, PassesAndNamesFailures) {
  const auto dd = qtest::construct("pentagon");
  VerifyConfig cfg;
  cfg.samples = 500;
  const auto ok = run_verification(dd, cfg);
  EXPECT_TRUE(ok.passed());
  EXPECT_EQ(ok.hamiltonian_orders.size(), 2u);
  for (double p : ok.hamiltonian_orders) EXPECT_NEAR(p, 2.0, 0.05);

  cfg.tol_rank = 0.99;
  const auto bad = run_verification(dd, cfg);
  EXPECT_EQ(bad.failures, std::vector<std::string>{"min_dPsi_rank_margin"});

  VerifyConfig one;
  one.samples = 1;
  EXPECT_TRUE(run_verification(qtest::construct("cp2"), one).passed());
}
