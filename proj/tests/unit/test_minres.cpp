#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "cslap/error.hpp"
#include "cslap/minres.hpp"
#include "cslap/random.hpp"
#include "dense.hpp"

namespace cslap
{
namespace
{

using oracle::DenseMatrix;

std::vector<double> RandomVector(std::size_t m, std::uint64_t seed)
{
  GaussianRng rng(seed);
  std::vector<double> v(m);
  for (auto &x : v)
  {
    x = rng.Normal();
  }
  return v;
}

ComplexVector RandomComplex(std::size_t m, std::uint64_t seed)
{
  auto v = RandomVector(2 * m, seed);
  return RealToComplex(v);
}

LinearMap DiagonalMap(std::vector<double> d)
{
  return [d = std::move(d)](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < d.size(); i++)
    {
      y[i] = d[i] * x[i];
    }
  };
}

TEST(Minres, DiagonalIndefiniteSystem)
{
  const std::vector<double> d{-3.0, -1.0, 0.5, 2.0, 4.0};
  const std::vector<double> b{1.0, 2.0, 3.0, 4.0, 5.0};
  SolverConfig cfg;
  cfg.tol = 1e-12;
  const auto res = MinresSolve(DiagonalMap(d), {}, b, cfg);
  EXPECT_TRUE(res.report.converged);
  EXPECT_LE(res.report.iterations, 5);
  for (std::size_t i = 0; i < d.size(); i++)
  {
    EXPECT_NEAR(res.solution[i], b[i] / d[i], 1e-10);
  }
}

TEST(Minres, TwoDistinctEigenvaluesConvergeInTwoSteps)
{
  std::vector<double> d(40);
  for (std::size_t i = 0; i < d.size(); i++)
  {
    d[i] = i % 3 == 0 ? -2.0 : 5.0;
  }
  const auto b = RandomVector(d.size(), 3);
  const auto res = MinresSolve(DiagonalMap(d), {}, b, SolverConfig{});
  EXPECT_TRUE(res.report.converged);
  EXPECT_EQ(res.report.iterations, 2);
}

TEST(Minres, ResidualHistoryIsMonotone)
{
  const int m = 60;
  GaussianRng rng(8);
  DenseMatrix a(m);
  for (int i = 0; i < m; i++)
  {
    for (int j = 0; j <= i; j++)
    {
      a(i, j) = a(j, i) = rng.Normal();
    }
  }
  LinearMap apply = [&a](std::span<const double> x, std::span<double> y) {
    const auto ax = a * x;
    std::copy(ax.begin(), ax.end(), y.begin());
  };
  const auto b = RandomVector(m, 4);
  SolverConfig cfg;
  cfg.tol = 1e-10;
  const auto res = MinresSolve(apply, {}, b, cfg);
  ASSERT_TRUE(res.report.converged);
  ASSERT_EQ(res.report.residual_history.size(), static_cast<std::size_t>(res.report.iterations) + 1);
  for (std::size_t k = 1; k < res.report.residual_history.size(); k++)
  {
    EXPECT_LE(res.report.residual_history[k], res.report.residual_history[k - 1] * (1 + 1e-12));
  }
  // phibar tracks the true residual norm when unpreconditioned.
  const auto ax = a * res.solution;
  double r = 0.0;
  for (int i = 0; i < m; i++)
  {
    r += (b[i] - ax[i]) * (b[i] - ax[i]);
  }
  EXPECT_NEAR(std::sqrt(r), res.report.residual_history.back(), 1e-8 * res.report.residual_history[0]);
  EXPECT_LE(oracle::RelDiff(res.solution, oracle::DenseSolve(a, b)), 1e-7);
}

TEST(Minres, ZeroRightHandSide)
{
  const std::vector<double> b(4, 0.0);
  const auto res = MinresSolve(DiagonalMap({1, 2, 3, 4}), {}, b, SolverConfig{});
  EXPECT_TRUE(res.report.converged);
  EXPECT_EQ(res.report.iterations, 0);
  EXPECT_EQ(res.solution, b);
}

TEST(Minres, IndefinitePreconditionerBreaksDown)
{
  const std::vector<double> b{1.0, 1.0, 1.0};
  try
  {
    MinresSolve(DiagonalMap({1, 2, 3}), DiagonalMap({-1, -1, -1}), b, SolverConfig{});
    FAIL() << "expected breakdown";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::Breakdown);
  }
  // Indefinite only in the second Krylov direction.
  EXPECT_THROW(MinresSolve(DiagonalMap({1, 2, 3}), DiagonalMap({1, -5, 1}), b, SolverConfig{}),
               Error);
}

TEST(Minres, IterationCapReportsNonConvergence)
{
  std::vector<double> d(50);
  for (std::size_t i = 0; i < d.size(); i++)
  {
    d[i] = (i % 2 ? 1.0 : -1.0) * (1.0 + i);
  }
  SolverConfig cfg;
  cfg.max_iter = 3;
  const auto res = MinresSolve(DiagonalMap(d), {}, RandomVector(d.size(), 1), cfg);
  EXPECT_FALSE(res.report.converged);
  EXPECT_EQ(res.report.iterations, 3);

  cfg.record_history = false;
  const auto short_res = MinresSolve(DiagonalMap(d), {}, RandomVector(d.size(), 1), cfg);
  EXPECT_EQ(short_res.report.residual_history.size(), 2U);
  EXPECT_DOUBLE_EQ(short_res.report.residual_history.back(), res.report.residual_history.back());
}

TEST(Minres, ConfigValidation)
{
  SolverConfig cfg;
  cfg.tol = 0.0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.tol = 1.0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.tol = 1e-8;
  cfg.max_iter = 0;
  EXPECT_THROW(cfg.Validate(), Error);
}

TEST(SolveComplexShifted, IdealPreconditionerTwoIterations)
{
  for (int n : {7, 15, 31})
  {
    const GridSpec g(n, 2);
    auto l_op = std::make_shared<const StencilOperator>(AssembleLaplacian2DConstant(g));
    for (const Shift s : {Shift{100, 100}, Shift{-100, -100}, Shift{-100, 1}, Shift{1, -100}})
    {
      const SaddleOperator a(l_op, s);
      const auto pc = BuildIdeal(g, s);
      const auto res = SolveComplexShifted(a, &pc, RandomComplex(g.m(), n), SolverConfig{});
      EXPECT_TRUE(res.report.converged);
      EXPECT_EQ(res.report.iterations, 2) << "n=" << n << " alpha=" << s.alpha;
      EXPECT_LT(res.report.final_true_residual, 1e-8);
    }
  }
}

TEST(SolveComplexShifted, MatchesDenseComplexSolve)
{
  const int n = 7;
  const GridSpec g(n, 2);
  auto k_op = std::make_shared<const StencilOperator>(
    AssembleLaplacian2DVariable(g, Example2Coefficient()));
  const auto k = DenseMatrix::FromColumnMajor(k_op->Dense(), g.m());
  SolverConfig cfg;
  cfg.tol = 1e-12;
  for (const Shift s : {Shift{-600, 150}, Shift{-100, -25}, Shift{100, -100}})
  {
    const SaddleOperator a(k_op, s);
    const auto pc = BuildAveraged(g, Example2Coefficient(), s);
    const auto f = RandomComplex(g.m(), 21);
    const auto res = SolveComplexShifted(a, &pc, f, cfg);
    ASSERT_TRUE(res.report.converged);
    const auto ref = oracle::DenseComplexSolve(k, s, f);
    EXPECT_LE(oracle::RelDiff(ComplexToReal(res.solution), ComplexToReal(ref)), 1e-9);
    // Reported true residual agrees with an independent dense evaluation.
    const auto kr = k * res.solution.re, ki = k * res.solution.im;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g.m(); i++)
    {
      const double rr = f.re[i] - (kr[i] + s.alpha * res.solution.re[i] - s.beta * res.solution.im[i]);
      const double ri = f.im[i] - (ki[i] + s.alpha * res.solution.im[i] + s.beta * res.solution.re[i]);
      num += rr * rr + ri * ri;
      den += f.re[i] * f.re[i] + f.im[i] * f.im[i];
    }
    EXPECT_NEAR(res.report.final_true_residual, std::sqrt(num / den), 1e-12);
    EXPECT_LT(res.report.final_true_residual, 1e-9);
  }
}

TEST(SolveComplexShifted, UnpreconditionedAndSizeErrors)
{
  const GridSpec g(3, 2);
  auto l_op = std::make_shared<const StencilOperator>(AssembleLaplacian2DConstant(g));
  const SaddleOperator a(l_op, {10.0, 10.0});
  const auto res = SolveComplexShifted(a, nullptr, RandomComplex(9, 2), SolverConfig{});
  EXPECT_TRUE(res.report.converged);
  EXPECT_LT(res.report.final_true_residual, 1e-7);
  EXPECT_THROW(SolveComplexShifted(a, nullptr, ComplexVector(8), SolverConfig{}), Error);
  const auto wrong = BuildIdeal(GridSpec(7, 2), {10.0, 10.0});
  EXPECT_THROW(SolveComplexShifted(a, &wrong, ComplexVector(9), SolverConfig{}), Error);
}

TEST(Bounds, SymmetrizeWidensShorterSide)
{
  const auto iv = SymmetrizeIntervals(3.0, 1.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(iv.a1, 3.0);
  EXPECT_DOUBLE_EQ(iv.a2, 1.0);
  EXPECT_DOUBLE_EQ(iv.a3, 1.0);
  EXPECT_DOUBLE_EQ(iv.a4, 3.0);
  const auto iv2 = SymmetrizeIntervals(2.0, 1.5, 0.5, 4.0);
  EXPECT_DOUBLE_EQ(iv2.a1, 5.0);
  EXPECT_DOUBLE_EQ(iv2.a4, 4.0);
  EXPECT_THROW(SymmetrizeIntervals(1.0, 2.0, 1.0, 2.0), Error);
  EXPECT_THROW(SymmetrizeIntervals(2.0, 0.0, 1.0, 2.0), Error);
}

TEST(Bounds, IterationCounts)
{
  EXPECT_EQ(BoundIterations(1, 1, 1, 1, 1e-8), 2);
  EXPECT_DOUBLE_EQ(ConvergenceFactor({2, 1, 1, 2}), 1.0 / 3.0);
  EXPECT_EQ(BoundIterations(2, 1, 1, 2, 1e-8), 36);
  // Intervals +-[1/mu0, mu0] with mu0 = sqrt(2 * 441 / 400).
  const double mu0 = std::sqrt(2.0 * 441.0 / 400.0);
  EXPECT_NEAR(mu0, 1.48492424049175, 1e-13);
  const double theta1 = ConvergenceFactor({mu0, 1 / mu0, 1 / mu0, mu0});
  EXPECT_NEAR(theta1, 0.375975039001560, 1e-13);
  const auto iv = SymmetrizeIntervals(mu0, 1 / mu0, 1 / mu0, mu0);
  EXPECT_EQ(BoundIterations(iv.a1, iv.a2, iv.a3, iv.a4, 1e-8), 40);
  // Defining inequality holds at k and fails at k - 2.
  for (double rho_target : {0.05, 0.2, 0.5, 0.9})
  {
    const double a1 = (1 + rho_target) / (1 - rho_target);
    const int k = BoundIterations(a1, 1, 1, a1, 1e-6);
    const double rho = ConvergenceFactor({a1, 1, 1, a1});
    EXPECT_LE(2 * std::pow(rho, k / 2), 1e-6 * (1 + 1e-12));
    if (k > 2)
    {
      EXPECT_GT(2 * std::pow(rho, k / 2 - 1), 1e-6);
    }
  }
  EXPECT_THROW(BoundIterations(3, 1, 1, 2, 1e-8), Error);
  EXPECT_THROW(BoundIterations(2, 1, 1, 2, 0.0), Error);
}

}  // namespace
}  // namespace cslap
