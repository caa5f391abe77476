#include "cslap/precond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cslap/error.hpp"

namespace cslap
{

SpectralPreconditioner::SpectralPreconditioner(std::shared_ptr<const SineTransform> transform,
                                               std::vector<double> laplacian_eigenvalues,
                                               double gamma, Shift shift,
                                               PreconditionerKind kind)
  : transform_(std::move(transform)), gamma_(gamma), shift_(shift), kind_(kind)
{
  Require(transform_ != nullptr, ErrorKind::InvalidArgument, "precond: null transform");
  Require(laplacian_eigenvalues.size() == transform_->size(), ErrorKind::SizeMismatch,
          "precond: eigenvalue count does not match the transform");
  Require(gamma_ > 0.0, ErrorKind::InvalidArgument, "precond: gamma must be positive");
  double top = 0.0;
  for (double lam : laplacian_eigenvalues)
  {
    top = std::max(top, std::abs(gamma_ * lam) + std::abs(shift_.alpha));
  }
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * top;
  weights_.resize(laplacian_eigenvalues.size());
  sqrt_weights_.resize(laplacian_eigenvalues.size());
  for (std::size_t i = 0; i < weights_.size(); i++)
  {
    const double lam = laplacian_eigenvalues[i];
    const double d = std::hypot(gamma_ * lam + shift_.alpha, shift_.beta);
    if (!(d > floor))
    {
      std::ostringstream os;
      os << "precond: singular preconditioner, beta = 0 and alpha = " << shift_.alpha
         << " cancels the scaled Laplacian eigenvalue " << gamma_ * lam << " (mode " << i
         << ")";
      Fail(ErrorKind::Singular, os.str());
    }
    weights_[i] = d;
    sqrt_weights_[i] = std::sqrt(d);
  }
}

void SpectralPreconditioner::ApplyPower(std::span<const double> w, std::span<double> out,
                                        double exponent) const
{
  const std::size_t m = weights_.size();
  Require(w.size() == 2 * m && out.size() == 2 * m, ErrorKind::SizeMismatch,
          "precond: vector length must be 2m");
  enum class Op { Div, DivSqrt, MulSqrt, Mul };
  Op op;
  if (exponent == -1.0)
  {
    op = Op::Div;
  }
  else if (exponent == -0.5)
  {
    op = Op::DivSqrt;
  }
  else if (exponent == 0.5)
  {
    op = Op::MulSqrt;
  }
  else if (exponent == 1.0)
  {
    op = Op::Mul;
  }
  else
  {
    Fail(ErrorKind::InvalidArgument, "precond: exponent must be one of -1, -1/2, 1/2, 1");
  }
  for (int half = 0; half < 2; half++)
  {
    const auto src = w.subspan(half * m, m);
    auto dst = out.subspan(half * m, m);
    transform_->Apply(src, dst);
    for (std::size_t i = 0; i < m; i++)
    {
      switch (op)
      {
        case Op::Div:
          dst[i] /= weights_[i];
          break;
        case Op::DivSqrt:
          dst[i] /= sqrt_weights_[i];
          break;
        case Op::MulSqrt:
          dst[i] *= sqrt_weights_[i];
          break;
        case Op::Mul:
          dst[i] *= weights_[i];
          break;
      }
    }
    transform_->Apply(dst, dst);
  }
}

std::vector<double> SpectralPreconditioner::ApplyPower(std::span<const double> w,
                                                       double exponent) const
{
  std::vector<double> out(size());
  ApplyPower(w, out, exponent);
  return out;
}

void SpectralPreconditioner::ApplyInverse(std::span<const double> w, std::span<double> out) const
{
  ApplyPower(w, out, -1.0);
}

void SpectralPreconditioner::ApplyForward(std::span<const double> w, std::span<double> out) const
{
  ApplyPower(w, out, 1.0);
}

std::vector<double> SpectralPreconditioner::Dense(double exponent) const
{
  const std::size_t order = size();
  std::vector<double> dense(order * order, 0.0);
  std::vector<double> e(order, 0.0), col(order);
  for (std::size_t c = 0; c < order; c++)
  {
    e[c] = 1.0;
    ApplyPower(e, col, exponent);
    e[c] = 0.0;
    std::copy(col.begin(), col.end(), dense.begin() + static_cast<std::ptrdiff_t>(c * order));
  }
  return dense;
}

SpectralPreconditioner BuildIdeal(const GridSpec &grid, Shift shift)
{
  return SpectralPreconditioner(std::make_shared<const SineTransform>(grid),
                                LaplacianEigenvalues(grid), 1.0, shift,
                                PreconditionerKind::Ideal);
}

SpectralPreconditioner BuildAveraged(const GridSpec &grid, const CoefficientField &a,
                                     Shift shift)
{
  Require(a.a_min > 0.0 && a.a_max >= a.a_min, ErrorKind::InvalidArgument,
          "precond: coefficient bounds must satisfy 0 < a_min <= a_max");
  const double gamma = std::sqrt(a.a_min * a.a_max);
  return SpectralPreconditioner(std::make_shared<const SineTransform>(grid),
                                LaplacianEigenvalues(grid), gamma, shift,
                                PreconditionerKind::Averaged);
}

}  // namespace cslap
