#include "cslap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

#include "cslap/error.hpp"
#include "cslap/precond.hpp"
#include "cslap/random.hpp"

namespace cslap
{

AbsBlockResult AbsBlock2x2(double theta, const Eigen::MatrixXcd &a_n)
{
  Require(a_n.rows() == a_n.cols() && a_n.rows() >= 1, ErrorKind::InvalidArgument,
          "abs_block: A_n must be square and nonempty");
  Require(a_n.rows() <= 128, ErrorKind::TooLarge, "abs_block: A_n larger than 128");
  const Eigen::Index n = a_n.rows();

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a_n, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  const Eigen::MatrixXcd &u = svd.matrixU();
  const Eigen::MatrixXcd &v = svd.matrixV();

  // Per singular value the 2x2 block [theta, s; s, -theta] has eigenvalues +-sqrt(s^2 +
  // theta^2), eigenvectors (s, r - theta)/D1 and (-s, r + theta)/D2. A vanishing D1 or D2
  // (s = 0) is replaced by its limit; with theta = 0 as well M is singular.
  Eigen::MatrixXd qt = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::VectorXd root(n);
  for (Eigen::Index k = 0; k < n; k++)
  {
    const double s = sigma(k);
    const double r = std::hypot(s, theta);
    if (r == 0.0)
    {
      Fail(ErrorKind::Singular, "abs_block: theta = 0 with a zero singular value");
    }
    root(k) = r;
    const double d1 = std::hypot(theta - r, s), d2 = std::hypot(r + theta, s);
    if (d1 > 0.0)
    {
      qt(k, k) = s / d1;
      qt(n + k, k) = (r - theta) / d1;
    }
    else
    {
      qt(k, k) = 1.0;
    }
    if (d2 > 0.0)
    {
      qt(k, n + k) = -s / d2;
      qt(n + k, n + k) = (r + theta) / d2;
    }
    else
    {
      qt(k, n + k) = -1.0;
    }
  }

  AbsBlockResult out;
  out.m.resize(2 * n, 2 * n);
  out.m.topLeftCorner(n, n) = theta * Eigen::MatrixXcd::Identity(n, n);
  out.m.topRightCorner(n, n) = a_n.adjoint();
  out.m.bottomLeftCorner(n, n) = a_n;
  out.m.bottomRightCorner(n, n) = -theta * Eigen::MatrixXcd::Identity(n, n);

  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  basis.topLeftCorner(n, n) = v;
  basis.bottomRightCorner(n, n) = u;
  out.q = basis * qt.cast<std::complex<double>>();

  out.diag.resize(2 * n);
  out.diag << root, -root;
  Eigen::VectorXd abs_diag(2 * n), sign_diag(2 * n);
  abs_diag << root, root;
  sign_diag << Eigen::VectorXd::Ones(n), -Eigen::VectorXd::Ones(n);
  out.abs_m = out.q * abs_diag.cast<std::complex<double>>().asDiagonal() * out.q.adjoint();
  out.sign_m = out.q * sign_diag.cast<std::complex<double>>().asDiagonal() * out.q.adjoint();
  return out;
}

const char *BranchName(BoundBranch branch)
{
  switch (branch)
  {
    case BoundBranch::AlphaNonneg:
      return "alpha_nonneg";
    case BoundBranch::AlphaNegValid:
      return "alpha_neg_valid";
    case BoundBranch::AssumptionsViolated:
      return "assumptions_violated";
  }
  return "unknown";
}

double BoundSet::IntervalLo() const
{
  return branch == BoundBranch::AlphaNonneg ? 1.0 / mu0 : mu1_tilde;
}

double BoundSet::IntervalHi() const
{
  return branch == BoundBranch::AlphaNonneg ? mu0 : mu0_tilde;
}

double BoundSet::Theta() const
{
  return branch == BoundBranch::AlphaNonneg ? theta1 : theta2;
}

BoundSet ComputeBounds(const CoefficientField &a, double c0, const Shift &shift)
{
  Require(a.a_min > 0.0 && a.a_max >= a.a_min, ErrorKind::InvalidArgument,
          "bounds: coefficient bounds must satisfy 0 < a_min <= a_max");
  Require(c0 > 0.0, ErrorKind::InvalidArgument, "bounds: c0 must be positive");
  BoundSet b;
  b.c0 = c0;
  b.a_min = a.a_min;
  b.a_max = a.a_max;
  b.gamma = std::sqrt(a.a_min * a.a_max);
  const double alpha = shift.alpha, abs_beta = std::abs(shift.beta);
  const double sqrt2 = std::numbers::sqrt2;

  b.mu0 = std::sqrt(2.0 * a.a_max / a.a_min);
  const double mu0_sq = b.mu0 * b.mu0;
  b.theta1 = (mu0_sq - 1.0) / (mu0_sq + 1.0);

  b.mu0_tilde = sqrt2 * (c0 * a.a_max + abs_beta - alpha) / (c0 * b.gamma + abs_beta + alpha);
  b.mu1_tilde =
      sqrt2 * (c0 * a.a_min + abs_beta + alpha) / (2.0 * (c0 * b.gamma + abs_beta - alpha));
  b.theta2 = (b.mu0_tilde - b.mu1_tilde) / (b.mu0_tilde + b.mu1_tilde);

  if (alpha >= 0.0)
  {
    b.branch = BoundBranch::AlphaNonneg;
  }
  else
  {
    const double abs_alpha = std::abs(alpha);
    const bool stated = a.a_min * c0 + abs_beta + alpha > 0.0;
    const bool upper = b.gamma * c0 + abs_beta - abs_alpha > 0.0;
    const bool lower = a.a_min * c0 + abs_beta - abs_alpha > 0.0;
    b.branch = stated && upper && lower ? BoundBranch::AlphaNegValid
                                        : BoundBranch::AssumptionsViolated;
  }
  return b;
}

int SpectrumDenseLimit(int dim)
{
  return dim == 1 ? 512 : 31;
}

SpectrumCertificate VerifySpectrum(const GridSpec &grid, const CoefficientField &a,
                                   const Shift &shift)
{
  Require(grid.n() <= SpectrumDenseLimit(grid.dim()), ErrorKind::TooLarge,
          "verify_spectrum: grid too large for the dense path");
  auto k_op = std::make_shared<const StencilOperator>(AssembleOperator(grid, a));
  const SaddleOperator op(k_op, shift);
  const auto pc = grid.dim() == 2 ? BuildAveraged(grid, a, shift) : BuildIdeal(grid, shift);

  const auto order = static_cast<Eigen::Index>(op.size());
  Eigen::MatrixXd b(order, order);
  std::vector<double> e(op.size(), 0.0), t1(op.size()), t2(op.size());
  for (Eigen::Index c = 0; c < order; c++)
  {
    e[c] = 1.0;
    pc.ApplyPower(e, t1, -0.5);
    e[c] = 0.0;
    op.Apply(t1, t2);
    pc.ApplyPower(t2, t1, -0.5);
    b.col(c) = Eigen::Map<const Eigen::VectorXd>(t1.data(), order);
  }
  const Eigen::MatrixXd sym = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  Require(solver.info() == Eigen::Success, ErrorKind::Breakdown,
          "verify_spectrum: eigensolver failed");

  SpectrumCertificate cert;
  cert.n = grid.n();
  cert.dim = grid.dim();
  cert.shift = shift;
  cert.bounds = ComputeBounds(a, SmallestLaplacianEigenvalue(grid), shift);
  const auto &ev = solver.eigenvalues();
  cert.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(cert.eigenvalues.begin(), cert.eigenvalues.end());

  if (!cert.bounds.Trusted())
  {
    // No enclosure is available, so nothing is certified.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cert.interval_lo_neg = cert.interval_hi_neg = cert.interval_lo_pos = cert.interval_hi_pos = nan;
    cert.max_violation = nan;
    cert.all_inside = false;
    return cert;
  }
  const double lo = cert.bounds.IntervalLo(), hi = cert.bounds.IntervalHi();
  cert.interval_lo_neg = lo;
  cert.interval_hi_neg = hi;
  cert.interval_lo_pos = lo;
  cert.interval_hi_pos = hi;
  double worst = 0.0;
  for (double lam : cert.eigenvalues)
  {
    const double mag = std::abs(lam);
    const double below = lo - mag, above = mag - hi;
    worst = std::max({worst, below, above});
  }
  cert.max_violation = worst;
  cert.all_inside = worst <= kSpectrumSlack;
  return cert;
}

std::string SpectrumCertificate::ToJson() const
{
  nlohmann::json j;
  j["grid"] = {{"n", n}, {"dim", dim}};
  j["alpha"] = shift.alpha;
  j["beta"] = shift.beta;
  j["branch"] = BranchName(bounds.branch);
  j["mu_bounds"] = {{"mu0", bounds.mu0},
                    {"mu0_tilde", bounds.mu0_tilde},
                    {"mu1_tilde", bounds.mu1_tilde},
                    {"theta1", bounds.theta1},
                    {"theta2", bounds.theta2},
                    {"c0", bounds.c0},
                    {"gamma", bounds.gamma},
                    {"interval", nullptr}};
  if (bounds.Trusted())
  {
    j["mu_bounds"]["interval"] = {{-interval_hi_neg, -interval_lo_neg},
                                  {interval_lo_pos, interval_hi_pos}};
  }
  double max_neg = -std::numeric_limits<double>::infinity();
  double min_pos = std::numeric_limits<double>::infinity();
  for (double lam : eigenvalues)
  {
    if (lam < 0.0)
    {
      max_neg = std::max(max_neg, lam);
    }
    else
    {
      min_pos = std::min(min_pos, lam);
    }
  }
  nlohmann::json extremes;
  extremes["min"] = eigenvalues.empty() ? nlohmann::json() : nlohmann::json(eigenvalues.front());
  extremes["max"] = eigenvalues.empty() ? nlohmann::json() : nlohmann::json(eigenvalues.back());
  extremes["max_negative"] = std::isfinite(max_neg) ? nlohmann::json(max_neg) : nlohmann::json();
  extremes["min_positive"] = std::isfinite(min_pos) ? nlohmann::json(min_pos) : nlohmann::json();
  j["eigenvalue_extremes"] = extremes;
  j["all_inside"] = all_inside;
  j["max_violation"] = std::isnan(max_violation) ? nlohmann::json() : nlohmann::json(max_violation);
  return j.dump();
}

double VerifySandwich(std::span<const double> h1_diag, std::span<const double> h2_diag,
                      int trials, std::uint64_t seed)
{
  Require(h1_diag.size() == h2_diag.size() && !h1_diag.empty(), ErrorKind::SizeMismatch,
          "sandwich: diagonals must be nonempty and of equal length");
  Require(trials >= 1, ErrorKind::InvalidArgument, "sandwich: trials must be at least 1");
  for (std::size_t i = 0; i < h1_diag.size(); i++)
  {
    Require(h1_diag[i] >= 0.0 && h2_diag[i] >= 0.0, ErrorKind::InvalidArgument,
            "sandwich: diagonals must be nonnegative");
    Require(h1_diag[i] + h2_diag[i] > 0.0, ErrorKind::InvalidArgument,
            "sandwich: ratio undefined where both diagonals vanish");
  }
  GaussianRng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; t++)
  {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < h1_diag.size(); i++)
    {
      const double z = rng.Normal(), z2 = z * z;
      num += z2 * std::hypot(h1_diag[i], h2_diag[i]);
      den += z2 * (h1_diag[i] + h2_diag[i]);
    }
    Require(den > 0.0, ErrorKind::InvalidArgument, "sandwich: zero denominator");
    const double ratio = num / den;
    worst = std::max({worst, std::numbers::sqrt2 / 2.0 - ratio, ratio - 1.0});
  }
  return worst;
}

MediantBounds Mediant(std::span<const double> theta, std::span<const double> eta)
{
  Require(theta.size() == eta.size() && !theta.empty(), ErrorKind::SizeMismatch,
          "mediant: inputs must be nonempty and of equal length");
  MediantBounds out{std::numeric_limits<double>::infinity(), 0.0,
                    -std::numeric_limits<double>::infinity()};
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < theta.size(); i++)
  {
    Require(theta[i] > 0.0 && eta[i] > 0.0, ErrorKind::InvalidArgument,
            "mediant: inputs must be positive");
    const double r = theta[i] / eta[i];
    out.min_ratio = std::min(out.min_ratio, r);
    out.max_ratio = std::max(out.max_ratio, r);
    num += theta[i];
    den += eta[i];
  }
  out.mediant = num / den;
  return out;
}

}  // namespace cslap
