#include "cslap/saddle.hpp"

#include <algorithm>

#include "cslap/error.hpp"

namespace cslap
{

ComplexVector::ComplexVector(std::vector<double> re_, std::vector<double> im_)
  : re(std::move(re_)), im(std::move(im_))
{
  Require(re.size() == im.size(), ErrorKind::SizeMismatch,
          "complex vector: real and imaginary parts differ in length");
}

SaddleOperator::SaddleOperator(std::shared_ptr<const StencilOperator> k_op, Shift shift)
  : k_op_(std::move(k_op)), shift_(shift)
{
  Require(k_op_ != nullptr, ErrorKind::InvalidArgument, "saddle: null operator");
}

void SaddleOperator::Apply(std::span<const double> x, std::span<double> y) const
{
  const std::size_t m = k_op_->size();
  Require(x.size() == 2 * m && y.size() == 2 * m, ErrorKind::SizeMismatch,
          "saddle: vector length must be 2m");
  const auto x1 = x.first(m), x2 = x.last(m);
  auto y1 = y.first(m), y2 = y.last(m);
  // y1 = K x2, y2 = K x1, then add the diagonal terms.
  k_op_->Apply(x2, y1);
  k_op_->Apply(x1, y2);
  const double a = shift_.alpha, b = shift_.beta;
  for (std::size_t i = 0; i < m; i++)
  {
    y1[i] += b * x1[i] + a * x2[i];
    y2[i] += a * x1[i] - b * x2[i];
  }
}

std::vector<double> SaddleOperator::Apply(std::span<const double> x) const
{
  std::vector<double> y(size());
  Apply(x, y);
  return y;
}

std::vector<double> SaddleOperator::Dense() const
{
  const std::size_t order = size();
  std::vector<double> dense(order * order, 0.0);
  std::vector<double> e(order, 0.0), col(order);
  for (std::size_t c = 0; c < order; c++)
  {
    e[c] = 1.0;
    Apply(e, col);
    e[c] = 0.0;
    std::copy(col.begin(), col.end(), dense.begin() + static_cast<std::ptrdiff_t>(c * order));
  }
  return dense;
}

std::vector<double> ComplexToReal(const ComplexVector &f)
{
  std::vector<double> w;
  w.reserve(2 * f.size());
  w.insert(w.end(), f.re.begin(), f.re.end());
  w.insert(w.end(), f.im.begin(), f.im.end());
  return w;
}

ComplexVector RealToComplex(std::span<const double> w)
{
  Require(w.size() % 2 == 0, ErrorKind::SizeMismatch,
          "real_to_complex: stacked vector must have even length");
  const std::size_t m = w.size() / 2;
  return ComplexVector(std::vector<double>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m)),
                       std::vector<double>(w.begin() + static_cast<std::ptrdiff_t>(m), w.end()));
}

std::vector<double> SaddleRhs(const ComplexVector &f)
{
  std::vector<double> w;
  w.reserve(2 * f.size());
  w.insert(w.end(), f.im.begin(), f.im.end());
  w.insert(w.end(), f.re.begin(), f.re.end());
  return w;
}

ComplexVector ApplyComplexShifted(const StencilOperator &k_op, const Shift &shift,
                                  const ComplexVector &z)
{
  const std::size_t m = k_op.size();
  Require(z.re.size() == m && z.im.size() == m, ErrorKind::SizeMismatch,
          "complex shifted apply: vector length does not match the operator");
  ComplexVector out(m);
  k_op.Apply(z.re, out.re);
  k_op.Apply(z.im, out.im);
  const double a = shift.alpha, b = shift.beta;
  for (std::size_t i = 0; i < m; i++)
  {
    out.re[i] += a * z.re[i] - b * z.im[i];
    out.im[i] += a * z.im[i] + b * z.re[i];
  }
  return out;
}

}  // namespace cslap
