#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cslap/dst.hpp"
#include "cslap/error.hpp"
#include "cslap/random.hpp"
#include "cslap/spectral.hpp"
#include "dense.hpp"

namespace cslap
{
namespace
{

Eigen::MatrixXcd RandomComplexMatrix(int n, GaussianRng &rng)
{
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j < n; j++)
    {
      a(i, j) = {rng.Normal(), rng.Normal()};
    }
  }
  return a;
}

TEST(AbsBlock2x2, RandomCasesAreConsistent)
{
  GaussianRng rng(42);
  for (int trial = 0; trial < 50; trial++)
  {
    const int n = 1 + static_cast<int>(rng.Bits() % 16);
    double theta = 4.0 * (rng.Uniform() - 0.5);
    const auto a = RandomComplexMatrix(n, rng);
    const auto r = AbsBlock2x2(theta, a);
    const auto id = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
    const double scale = r.m.norm();
    EXPECT_LE((r.q.adjoint() * r.q - id).norm(), 1e-10);
    EXPECT_LE((r.q * r.diag.cast<std::complex<double>>().asDiagonal() * r.q.adjoint() - r.m).norm(),
              1e-10 * scale);
    EXPECT_LE((r.sign_m - r.sign_m.adjoint()).norm(), 1e-10);
    EXPECT_LE((r.sign_m.adjoint() * r.sign_m - id).norm(), 1e-10);
    EXPECT_LE((r.abs_m * r.abs_m - r.m * r.m).norm(), 1e-10 * scale * scale);
    EXPECT_LE((r.abs_m * r.sign_m - r.m).norm(), 1e-10 * scale);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.sign_m);
    for (int i = 0; i < 2 * n; i++)
    {
      EXPECT_NEAR(std::abs(es.eigenvalues()(i)), 1.0, 1e-9);
    }
  }
}

TEST(AbsBlock2x2, RealCaseMatchesDenseOracle)
{
  GaussianRng rng(5);
  const int n = 6;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j < n; j++)
    {
      a(i, j) = rng.Normal();
    }
  }
  const auto r = AbsBlock2x2(0.7, a);
  oracle::DenseMatrix m(2 * n);
  for (int i = 0; i < 2 * n; i++)
  {
    for (int j = 0; j < 2 * n; j++)
    {
      m(i, j) = r.m(i, j).real();
    }
  }
  const auto abs_ref = oracle::DenseAbs(m);
  double worst = 0.0;
  for (int i = 0; i < 2 * n; i++)
  {
    for (int j = 0; j < 2 * n; j++)
    {
      worst = std::max(worst, std::abs(r.abs_m(i, j) - abs_ref(i, j)));
    }
  }
  EXPECT_LE(worst, 1e-10 * abs_ref.MaxAbs());
}

TEST(AbsBlock2x2, ZeroSingularValues)
{
  // A = 0: M = blkdiag(theta I, -theta I), |M| = |theta| I.
  for (double theta : {2.0, -2.0})
  {
    const auto r = AbsBlock2x2(theta, Eigen::MatrixXcd::Zero(3, 3));
    EXPECT_LE((r.abs_m - 2.0 * Eigen::MatrixXcd::Identity(6, 6)).norm(), 1e-14);
    EXPECT_LE((r.q.adjoint() * r.q - Eigen::MatrixXcd::Identity(6, 6)).norm(), 1e-14);
    EXPECT_LE((r.sign_m - r.m / 2.0).norm(), 1e-14);
  }
  // Rank-deficient A with theta > 0.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = {1.0, 1.0};
  const auto r = AbsBlock2x2(0.5, a);
  EXPECT_LE((r.abs_m * r.abs_m - r.m * r.m).norm(), 1e-12);
  EXPECT_THROW(AbsBlock2x2(0.0, a), Error);
  EXPECT_NO_THROW(AbsBlock2x2(0.0, Eigen::MatrixXcd::Identity(2, 2)));
  EXPECT_THROW(AbsBlock2x2(1.0, Eigen::MatrixXcd::Zero(2, 3)), Error);
  EXPECT_THROW(AbsBlock2x2(1.0, Eigen::MatrixXcd::Zero(129, 129)), Error);
}

TEST(ComputeBounds, Example2Constants)
{
  const auto b = ComputeBounds(Example2Coefficient(), 19.7352455344555177612, {100.0, 100.0});
  EXPECT_NEAR(b.mu0, 1.48492424049175, 1e-13);
  EXPECT_NEAR(b.theta1, 0.375975039001560, 1e-13);
  EXPECT_DOUBLE_EQ(b.gamma, 420.0);
  EXPECT_EQ(b.branch, BoundBranch::AlphaNonneg);
  EXPECT_DOUBLE_EQ(b.IntervalHi(), b.mu0);
  EXPECT_DOUBLE_EQ(b.IntervalLo(), 1.0 / b.mu0);
  EXPECT_DOUBLE_EQ(b.Theta(), b.theta1);
  EXPECT_STREQ(BranchName(b.branch), "alpha_nonneg");
}

TEST(ComputeBounds, NegativeAlphaBranch)
{
  const double c0 = 19.7352455344555177612;
  const auto b = ComputeBounds(Example2Coefficient(), c0, {-100.0, 100.0});
  EXPECT_EQ(b.branch, BoundBranch::AlphaNegValid);
  EXPECT_NEAR(b.mu0_tilde, 1.51904770901033, 1e-12);
  const double mu1 = std::numbers::sqrt2 * (400 * c0 + 100 - 100) / (2 * (420 * c0 + 100 + 100));
  EXPECT_NEAR(b.mu1_tilde, mu1, 1e-14);
  EXPECT_NEAR(b.theta2, (b.mu0_tilde - mu1) / (b.mu0_tilde + mu1), 1e-14);
  EXPECT_DOUBLE_EQ(b.Theta(), b.theta2);
  EXPECT_DOUBLE_EQ(b.IntervalLo(), b.mu1_tilde);

  // Stated condition holds but 400 c0 + |beta| - |alpha| < 0.
  const auto v = ComputeBounds(Example2Coefficient(), c0, {-9000.0, 1000.0});
  EXPECT_EQ(v.branch, BoundBranch::AssumptionsViolated);
  EXPECT_FALSE(v.Trusted());
  EXPECT_STREQ(BranchName(v.branch), "assumptions_violated");
  EXPECT_EQ(ComputeBounds(Example2Coefficient(), c0, {-1e6, 0.0}).branch,
            BoundBranch::AssumptionsViolated);

  EXPECT_THROW(ComputeBounds(Example2Coefficient(), 0.0, {}), Error);
  EXPECT_THROW(ComputeBounds(CoefficientField{nullptr, 2.0, 1.0}, 1.0, {}), Error);
}

TEST(VerifySpectrum, IdealCaseIsPlusMinusOne)
{
  for (int dim : {1, 2})
  {
    for (int n : {3, 7})
    {
      for (const Shift s : {Shift{100, 100}, Shift{-100, 1}, Shift{-5, -3}, Shift{1, -100}})
      {
        const auto cert = VerifySpectrum(GridSpec(n, dim), ConstantCoefficient(1.0), s);
        // With a = 1 the alpha < 0 enclosure needs c0 + |beta| + alpha > 0.
        EXPECT_EQ(cert.all_inside, cert.bounds.Trusted());
        for (double lam : cert.eigenvalues)
        {
          EXPECT_NEAR(std::abs(lam), 1.0, 1e-10);
        }
      }
    }
  }
}

TEST(VerifySpectrum, Example2Containment)
{
  for (int n : {3, 7})
  {
    for (const Shift s : {Shift{100, 100}, Shift{100, -100}, Shift{1, -100}, Shift{-100, 100},
                          Shift{-100, 1}})
    {
      const auto cert = VerifySpectrum(GridSpec(n, 2), Example2Coefficient(), s);
      ASSERT_TRUE(cert.bounds.Trusted());
      EXPECT_TRUE(cert.all_inside) << "n=" << n << " alpha=" << s.alpha << " beta=" << s.beta
                                   << " violation=" << cert.max_violation;
      EXPECT_EQ(cert.eigenvalues.size(), 2U * n * n);
    }
  }
}

TEST(VerifySpectrum, JsonCertificate)
{
  const auto cert = VerifySpectrum(GridSpec(3, 2), Example2Coefficient(), {-100.0, 100.0});
  const auto j = nlohmann::json::parse(cert.ToJson());
  for (const char *key : {"grid", "alpha", "beta", "branch", "mu_bounds", "eigenvalue_extremes",
                          "all_inside", "max_violation"})
  {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["grid"]["n"], 3);
  EXPECT_EQ(j["branch"], "alpha_neg_valid");
  EXPECT_EQ(j["all_inside"], true);
  EXPECT_LT(j["eigenvalue_extremes"]["max_negative"].get<double>(), 0.0);
  EXPECT_GT(j["eigenvalue_extremes"]["min_positive"].get<double>(), 0.0);
}

TEST(VerifySpectrum, UntrustedBranchCertifiesNothing)
{
  const auto cert = VerifySpectrum(GridSpec(3, 2), ConstantCoefficient(1.0), {-100.0, 1.0});
  EXPECT_EQ(cert.bounds.branch, BoundBranch::AssumptionsViolated);
  EXPECT_FALSE(cert.all_inside);
  EXPECT_TRUE(std::isnan(cert.max_violation));
  const auto j = nlohmann::json::parse(cert.ToJson());
  EXPECT_TRUE(j["mu_bounds"]["interval"].is_null());
  EXPECT_TRUE(j["max_violation"].is_null());
  EXPECT_EQ(j["branch"], "assumptions_violated");
  EXPECT_EQ(cert.eigenvalues.size(), 18U);
}

TEST(VerifySpectrum, TooLarge)
{
  try
  {
    VerifySpectrum(GridSpec(32, 2), Example2Coefficient(), {1.0, 1.0});
    FAIL();
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(VerifySandwich, TightCases)
{
  const std::vector<double> ones(5, 1.0), zeros(5, 0.0);
  EXPECT_LE(VerifySandwich(ones, ones, 100), 1e-15);
  EXPECT_LE(VerifySandwich(ones, zeros, 100), 1e-15);
  EXPECT_THROW(VerifySandwich(zeros, zeros, 10), Error);
  EXPECT_THROW(VerifySandwich(ones, std::vector<double>(4, 1.0), 10), Error);
  EXPECT_THROW(VerifySandwich(std::vector<double>{-1.0}, std::vector<double>{1.0}, 10), Error);
}

TEST(VerifySandwich, ShiftedLaplacianPairs)
{
  const GridSpec g(7, 2);
  const auto lam = LaplacianEigenvalues(g);
  for (const Shift s : {Shift{100, 100}, Shift{-600, 150}, Shift{-100, 1}})
  {
    std::vector<double> h1, h2;
    for (double l : lam)
    {
      h1.push_back(std::abs(420.0 * l + s.alpha));
      h2.push_back(std::abs(s.beta));
    }
    EXPECT_LE(VerifySandwich(h1, h2, 1000, 3), 1e-12);
  }
}

TEST(Mediant, Inequality)
{
  GaussianRng rng(9);
  for (int t = 0; t < 1000; t++)
  {
    const int k = 1 + static_cast<int>(rng.Bits() % 10);
    std::vector<double> theta(k), eta(k);
    for (int i = 0; i < k; i++)
    {
      theta[i] = rng.Uniform() * 10;
      eta[i] = rng.Uniform() * 10;
    }
    const auto m = Mediant(theta, eta);
    EXPECT_LE(m.min_ratio, m.mediant);
    EXPECT_LE(m.mediant, m.max_ratio);
  }
  const std::vector<double> one{3.0};
  const auto single = Mediant(one, one);
  EXPECT_EQ(single.min_ratio, 1.0);
  EXPECT_EQ(single.max_ratio, 1.0);
  EXPECT_THROW(Mediant(std::vector<double>{0.0}, one), Error);
  EXPECT_THROW(Mediant(std::vector<double>{}, std::vector<double>{}), Error);
}

}  // namespace
}  // namespace cslap
