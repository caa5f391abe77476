#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cslap/grid.hpp"

namespace cslap
{

// Complex shift lambda = alpha + beta i.
struct Shift
{
  double alpha = 0.0;
  double beta = 0.0;
};

struct ComplexVector
{
  std::vector<double> re;
  std::vector<double> im;

  ComplexVector() = default;
  explicit ComplexVector(std::size_t m) : re(m, 0.0), im(m, 0.0) {}
  ComplexVector(std::vector<double> re_, std::vector<double> im_);

  std::size_t size() const { return re.size(); }
};

// Real symmetric indefinite form of (K + lambda I) z = f:
//
//   [ beta I    K + alpha I ] [z1]   [b]
//   [ K + alpha I  -beta I  ] [z2] = [a],   z = z1 + i z2,  f = a + i b.
//
// Unknowns stack as (z1; z2). With the block order above the right-hand side must stack
// the imaginary part on top, see SaddleRhs.
class SaddleOperator
{
public:
  SaddleOperator(std::shared_ptr<const StencilOperator> k_op, Shift shift);

  const StencilOperator &k_op() const { return *k_op_; }
  const Shift &shift() const { return shift_; }
  std::size_t size() const { return 2 * k_op_->size(); }

  // y = A x. Reentrant; x and y must not alias.
  void Apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> Apply(std::span<const double> x) const;

  // Dense A, column-major, order 2m.
  std::vector<double> Dense() const;

private:
  std::shared_ptr<const StencilOperator> k_op_;
  Shift shift_;
};

// (re; im) stacking, used for the unknown vector.
std::vector<double> ComplexToReal(const ComplexVector &f);
ComplexVector RealToComplex(std::span<const double> w);

// Right-hand side of the block system for a complex f = a + i b, i.e. (b; a).
std::vector<double> SaddleRhs(const ComplexVector &f);

// (K + lambda I) z in real arithmetic.
ComplexVector ApplyComplexShifted(const StencilOperator &k_op, const Shift &shift,
                                  const ComplexVector &z);

}  // namespace cslap
