#include "cslap/minres.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "cslap/error.hpp"

namespace cslap
{

namespace
{

double Dot(std::span<const double> x, std::span<const double> y)
{
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    acc += x[i] * y[i];
  }
  return acc;
}

}  // namespace

void SolverConfig::Validate() const
{
  Require(tol > 0.0 && tol < 1.0, ErrorKind::InvalidArgument, "minres: tol must lie in (0, 1)");
  Require(max_iter >= 1, ErrorKind::InvalidArgument, "minres: max_iter must be at least 1");
}

MinresResult MinresSolve(const LinearMap &apply_a, const LinearMap &apply_pinv,
                         std::span<const double> rhs, const SolverConfig &config)
{
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t N = rhs.size();
  auto precondition = [&](std::span<const double> in, std::span<double> out) {
    if (apply_pinv)
    {
      apply_pinv(in, out);
    }
    else
    {
      std::copy(in.begin(), in.end(), out.begin());
    }
  };

  MinresResult result;
  result.solution.assign(N, 0.0);
  auto &x = result.solution;
  auto &report = result.report;

  std::vector<double> r1(rhs.begin(), rhs.end()), r2(r1), y(N), v(N);
  std::vector<double> w(N, 0.0), w1(N, 0.0), w2(N, 0.0);
  precondition(r1, y);
  const double beta_sq = Dot(r1, y);
  if (!(beta_sq >= 0.0))
  {
    Fail(ErrorKind::Breakdown, "minres: preconditioner is not positive definite");
  }
  const double beta1 = std::sqrt(beta_sq);
  report.residual_history.push_back(beta1);
  if (beta1 == 0.0)
  {
    report.converged = true;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  double beta = beta1, oldb = 0.0;
  double dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0;

  for (int itn = 1; itn <= config.max_iter; itn++)
  {
    const double s = 1.0 / beta;
    for (std::size_t i = 0; i < N; i++)
    {
      v[i] = s * y[i];
    }
    apply_a(v, y);
    if (itn >= 2)
    {
      const double c = beta / oldb;
      for (std::size_t i = 0; i < N; i++)
      {
        y[i] -= c * r1[i];
      }
    }
    const double alfa = Dot(v, y);
    const double c = alfa / beta;
    for (std::size_t i = 0; i < N; i++)
    {
      y[i] -= c * r2[i];
    }
    std::swap(r1, r2);
    std::copy(y.begin(), y.end(), r2.begin());
    precondition(r2, y);
    oldb = beta;
    const double next_sq = Dot(r2, y);
    if (!(next_sq >= 0.0))
    {
      Fail(ErrorKind::Breakdown, "minres: preconditioned inner product is negative or NaN");
    }
    beta = std::sqrt(next_sq);

    // Apply the previous rotation, then form the next one.
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    const double gamma = std::max(std::hypot(gbar, beta), eps);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    std::swap(w1, w2);
    std::swap(w2, w);
    for (std::size_t i = 0; i < N; i++)
    {
      w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
      x[i] += phi * w[i];
    }

    report.iterations = itn;
    if (config.record_history || report.residual_history.size() < 2)
    {
      report.residual_history.push_back(phibar);
    }
    else
    {
      report.residual_history.back() = phibar;
    }
    if (phibar <= config.tol * beta1)
    {
      report.converged = true;
      break;
    }
    if (beta == 0.0)
    {
      // Invariant Krylov subspace without convergence: the system is singular.
      break;
    }
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ComplexSolveResult SolveComplexShifted(const SaddleOperator &a,
                                       const SpectralPreconditioner *pc,
                                       const ComplexVector &f, const SolverConfig &config)
{
  Require(f.size() == a.k_op().size(), ErrorKind::SizeMismatch,
          "solve: right-hand side length does not match the operator");
  const auto start = std::chrono::steady_clock::now();
  LinearMap apply_a = [&a](std::span<const double> in, std::span<double> out) {
    a.Apply(in, out);
  };
  LinearMap apply_pinv;
  if (pc)
  {
    Require(pc->size() == a.size(), ErrorKind::SizeMismatch,
            "solve: preconditioner size does not match the operator");
    apply_pinv = [pc](std::span<const double> in, std::span<double> out) {
      pc->ApplyInverse(in, out);
    };
  }
  const auto rhs = SaddleRhs(f);
  auto inner = MinresSolve(apply_a, apply_pinv, rhs, config);
  ComplexSolveResult result{RealToComplex(inner.solution), std::move(inner.report)};

  const auto check = ApplyComplexShifted(a.k_op(), a.shift(), result.solution);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); i++)
  {
    const double dr = f.re[i] - check.re[i], di = f.im[i] - check.im[i];
    num += dr * dr + di * di;
    den += f.re[i] * f.re[i] + f.im[i] * f.im[i];
  }
  result.report.final_true_residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  result.report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

IndefiniteIntervals SymmetrizeIntervals(double neg_outer, double neg_inner, double pos_inner,
                                        double pos_outer)
{
  Require(neg_outer >= neg_inner && neg_inner > 0.0 && pos_outer >= pos_inner &&
              pos_inner > 0.0,
          ErrorKind::InvalidArgument,
          "bound: intervals must satisfy a1 >= a2 > 0 and a4 >= a3 > 0");
  IndefiniteIntervals iv{neg_outer, neg_inner, pos_inner, pos_outer};
  const double neg_len = iv.a1 - iv.a2, pos_len = iv.a4 - iv.a3;
  if (neg_len < pos_len)
  {
    iv.a1 = iv.a2 + pos_len;
  }
  else if (pos_len < neg_len)
  {
    iv.a4 = iv.a3 + neg_len;
  }
  return iv;
}

double ConvergenceFactor(const IndefiniteIntervals &iv)
{
  const double outer = std::sqrt(iv.a1 * iv.a4), inner = std::sqrt(iv.a2 * iv.a3);
  return (outer - inner) / (outer + inner);
}

int BoundIterations(double a1, double a2, double a3, double a4, double tol)
{
  Require(a4 >= a3 && a3 > 0.0 && a1 >= a2 && a2 > 0.0, ErrorKind::InvalidArgument,
          "bound: intervals must satisfy a1 >= a2 > 0 and a4 >= a3 > 0");
  Require(tol > 0.0 && tol < 1.0, ErrorKind::InvalidArgument, "bound: tol must lie in (0, 1)");
  Require(std::abs((a1 - a2) - (a4 - a3)) <= 1e-12 * std::max(a1, a4), ErrorKind::InvalidArgument,
          "bound: intervals must have equal length (symmetrize first)");
  const double rho = ConvergenceFactor({a1, a2, a3, a4});
  if (rho <= 0.0)
  {
    return 2;
  }
  // Smallest integer j with 2 rho^j <= tol, then k = 2j.
  int j = static_cast<int>(std::ceil(std::log(tol / 2.0) / std::log(rho)));
  j = std::max(j, 1);
  while (j > 1 && 2.0 * std::pow(rho, j - 1) <= tol)
  {
    j--;
  }
  while (2.0 * std::pow(rho, j) > tol)
  {
    j++;
  }
  return 2 * j;
}

}  // namespace cslap
