#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cslap/precond.hpp"
#include "cslap/saddle.hpp"

namespace cslap
{

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

struct SolverConfig
{
  double tol = 1e-8;  // reduction of the preconditioned residual norm
  int max_iter = 1000;
  bool record_history = true;

  void Validate() const;
};

struct SolveReport
{
  int iterations = 0;
  // ||r_k||_{P^-1} for k = 0..iterations; only the first and last entries are kept when
  // history recording is off.
  std::vector<double> residual_history;
  bool converged = false;
  // ||f - (K + lambda I) z|| / ||f||, filled by SolveComplexShifted.
  double final_true_residual = 0.0;
  double wall_time = 0.0;
};

struct MinresResult
{
  std::vector<double> solution;
  SolveReport report;
};

// Preconditioned MINRES (Lanczos in the P-inner product, Givens QR of the tridiagonal)
// from a zero initial guess. apply_a must be symmetric and apply_pinv symmetric positive
// definite; a nonpositive preconditioned inner product raises ErrorKind::Breakdown.
// Passing an empty apply_pinv runs unpreconditioned MINRES.
MinresResult MinresSolve(const LinearMap &apply_a, const LinearMap &apply_pinv,
                         std::span<const double> rhs, const SolverConfig &config);

struct ComplexSolveResult
{
  ComplexVector solution;
  SolveReport report;
};

// Solves (K + lambda I) z = f through the block real system. pc may be null.
ComplexSolveResult SolveComplexShifted(const SaddleOperator &a,
                                       const SpectralPreconditioner *pc,
                                       const ComplexVector &f, const SolverConfig &config);

// Spectrum enclosure [-a1, -a2] U [a3, a4] with a1 - a2 = a4 - a3.
struct IndefiniteIntervals
{
  double a1, a2, a3, a4;
};

// Widens the shorter side outward so both sides have equal length.
IndefiniteIntervals SymmetrizeIntervals(double neg_outer, double neg_inner, double pos_inner,
                                        double pos_outer);

// (sqrt(a1 a4) - sqrt(a2 a3)) / (sqrt(a1 a4) + sqrt(a2 a3)).
double ConvergenceFactor(const IndefiniteIntervals &iv);

// Smallest even k with 2 rho^(k/2) <= tol; 2 when rho = 0.
int BoundIterations(double a1, double a2, double a3, double a4, double tol);

}  // namespace cslap
