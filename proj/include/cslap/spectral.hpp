#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cslap/grid.hpp"
#include "cslap/saddle.hpp"

namespace cslap
{

// Constructive eigendecomposition of M = [theta I, A^*; A, -theta I] from the SVD
// A = U Sigma V^*: M = Q blkdiag(S, -S) Q^* with S = sqrt(Sigma^2 + theta^2 I).
struct AbsBlockResult
{
  Eigen::MatrixXcd m;         // the block matrix itself
  Eigen::MatrixXcd q;         // unitary eigenvector matrix
  Eigen::VectorXd diag;       // (S, -S)
  Eigen::MatrixXcd abs_m;     // |M| = Q blkdiag(S, S) Q^*
  Eigen::MatrixXcd sign_m;    // |M|^-1 M = Q blkdiag(I, -I) Q^*
};

AbsBlockResult AbsBlock2x2(double theta, const Eigen::MatrixXcd &a_n);

enum class BoundBranch
{
  AlphaNonneg,
  AlphaNegValid,
  AssumptionsViolated,
};

const char *BranchName(BoundBranch branch);

// Interval endpoints and convergence factors for the averaged preconditioner.
struct BoundSet
{
  double mu0 = 0.0;
  double mu0_tilde = 0.0;
  double mu1_tilde = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  BoundBranch branch = BoundBranch::AssumptionsViolated;
  double c0 = 0.0;
  double a_min = 0.0;
  double a_max = 0.0;
  double gamma = 0.0;

  bool Trusted() const { return branch != BoundBranch::AssumptionsViolated; }
  // Positive half [lo, hi] of the symmetric enclosure for the active branch.
  double IntervalLo() const;
  double IntervalHi() const;
  // Convergence factor for the active branch.
  double Theta() const;
};

BoundSet ComputeBounds(const CoefficientField &a, double c0, const Shift &shift);

struct SpectrumCertificate
{
  int n = 0;
  int dim = 0;
  Shift shift;
  BoundSet bounds;
  std::vector<double> eigenvalues;  // sorted ascending
  double interval_lo_neg = 0.0;   // enclosure is [-hi_neg, -lo_neg] U [lo_pos, hi_pos]
  double interval_hi_neg = 0.0;
  double interval_lo_pos = 0.0;
  double interval_hi_pos = 0.0;
  bool all_inside = false;
  double max_violation = 0.0;

  std::string ToJson() const;
};

constexpr double kSpectrumSlack = 1e-9;

// Largest n accepted by VerifySpectrum.
int SpectrumDenseLimit(int dim);

// Eigenvalues of P^-1/2 A P^-1/2 (similar to P^-1 A), P the averaged preconditioner
// (identical to the ideal one for a = 1), checked against the enclosure of ComputeBounds.
SpectrumCertificate VerifySpectrum(const GridSpec &grid, const CoefficientField &a,
                                   const Shift &shift);

// Worst violation of sqrt(2)/2 <= z'sqrt(H1^2 + H2^2)z / z'(H1 + H2)z <= 1 over random z,
// for commuting PSD H1, H2 given by their diagonals in a shared eigenbasis.
double VerifySandwich(std::span<const double> h1_diag, std::span<const double> h2_diag,
                      int trials, std::uint64_t seed = 1);

struct MediantBounds
{
  double min_ratio;
  double mediant;
  double max_ratio;
};

// min theta_i / eta_i, sum theta / sum eta, max theta_i / eta_i for positive inputs.
MediantBounds Mediant(std::span<const double> theta, std::span<const double> eta);

}  // namespace cslap
