#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cslap/dst.hpp"
#include "cslap/grid.hpp"
#include "cslap/saddle.hpp"

namespace cslap
{

enum class PreconditionerKind
{
  Ideal,     // |A| for K = L
  Averaged,  // |A| with K replaced by gamma L, gamma = sqrt(a_min a_max)
};

// blkdiag(W D W, W D W) with W the DST-I and D = diag(sqrt((s lambda_pq + alpha)^2 + beta^2)),
// lambda_pq the eigenvalues of L and s = gamma (1 for the ideal preconditioner).
class SpectralPreconditioner
{
public:
  SpectralPreconditioner(std::shared_ptr<const SineTransform> transform,
                         std::vector<double> laplacian_eigenvalues, double gamma, Shift shift,
                         PreconditionerKind kind);

  const SineTransform &transform() const { return *transform_; }
  std::span<const double> weights() const { return weights_; }
  double gamma() const { return gamma_; }
  const Shift &shift() const { return shift_; }
  PreconditionerKind kind() const { return kind_; }
  std::size_t size() const { return 2 * weights_.size(); }

  void ApplyInverse(std::span<const double> w, std::span<double> out) const;
  void ApplyForward(std::span<const double> w, std::span<double> out) const;

  // Fractional powers of the preconditioner; exponent in {-1, -1/2, 1/2, 1}.
  void ApplyPower(std::span<const double> w, std::span<double> out, double exponent) const;
  std::vector<double> ApplyPower(std::span<const double> w, double exponent) const;

  // Dense materialization (order 2m, column-major) of the given power.
  std::vector<double> Dense(double exponent = 1.0) const;

private:
  std::shared_ptr<const SineTransform> transform_;
  std::vector<double> weights_;
  std::vector<double> sqrt_weights_;
  double gamma_;
  Shift shift_;
  PreconditionerKind kind_;
};

SpectralPreconditioner BuildIdeal(const GridSpec &grid, Shift shift);
SpectralPreconditioner BuildAveraged(const GridSpec &grid, const CoefficientField &a,
                                     Shift shift);

}  // namespace cslap
