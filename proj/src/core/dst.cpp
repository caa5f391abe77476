#include "cslap/dst.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "cslap/error.hpp"

namespace cslap
{

namespace
{

void Transpose(const double *in, double *out, std::size_t n)
{
  constexpr std::size_t block = 32;
  for (std::size_t jj = 0; jj < n; jj += block)
  {
    for (std::size_t ii = 0; ii < n; ii += block)
    {
      const std::size_t jmax = std::min(jj + block, n), imax = std::min(ii + block, n);
      for (std::size_t j = jj; j < jmax; j++)
      {
        for (std::size_t i = ii; i < imax; i++)
        {
          out[j + n * i] = in[i + n * j];
        }
      }
    }
  }
}

}  // namespace

SineTransform::SineTransform(int n, int dim) : n_(n), dim_(dim)
{
  Require(n >= 1, ErrorKind::InvalidArgument, "dst: n must be at least 1");
  Require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "dst: dim must be 1 or 2");
  const auto N = static_cast<std::size_t>(n);
  size_ = dim == 1 ? N : N * N;
  norm_ = std::sqrt(2.0 / (n + 1));
  const std::size_t period = 2 * (N + 1);
  sines_.resize(period);
  for (std::size_t k = 0; k < period; k++)
  {
    sines_[k] = std::sin(std::numbers::pi * static_cast<double>(k) / (n + 1));
  }
  if (std::has_single_bit(period))
  {
    twiddles_.resize(period / 2);
    for (std::size_t k = 0; k < period / 2; k++)
    {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(period);
      twiddles_[k] = {std::cos(angle), std::sin(angle)};
    }
    const int bits = std::countr_zero(period);
    bitrev_.resize(period);
    for (std::size_t k = 0; k < period; k++)
    {
      std::size_t r = 0;
      for (int b = 0; b < bits; b++)
      {
        r |= ((k >> b) & 1U) << (bits - 1 - b);
      }
      bitrev_[k] = r;
    }
  }
}

void SineTransform::Fft(std::vector<std::complex<double>> &buf) const
{
  const std::size_t N = buf.size();
  for (std::size_t k = 0; k < N; k++)
  {
    if (k < bitrev_[k])
    {
      std::swap(buf[k], buf[bitrev_[k]]);
    }
  }
  for (std::size_t len = 2; len <= N; len <<= 1)
  {
    const std::size_t half = len / 2, stride = N / len;
    for (std::size_t start = 0; start < N; start += len)
    {
      for (std::size_t k = 0; k < half; k++)
      {
        const auto t = twiddles_[k * stride] * buf[start + k + half];
        buf[start + k + half] = buf[start + k] - t;
        buf[start + k] += t;
      }
    }
  }
}

void SineTransform::FastPair(const double *x, const double *y, double *out_x, double *out_y,
                             std::vector<std::complex<double>> &buf) const
{
  // Odd extension: the FFT of a real odd sequence is -2i times its sine sum, so pack the
  // two rows as z = x + i y and read S x from -Im(Z)/2 and S y from Re(Z)/2.
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t N = 2 * (n + 1);
  buf[0] = 0.0;
  buf[n + 1] = 0.0;
  for (std::size_t j = 1; j <= n; j++)
  {
    const std::complex<double> v(x[j - 1], y ? y[j - 1] : 0.0);
    buf[j] = v;
    buf[N - j] = -v;
  }
  Fft(buf);
  const double c = 0.5 * norm_;
  for (std::size_t k = 1; k <= n; k++)
  {
    out_x[k - 1] = -c * buf[k].imag();
    if (out_y)
    {
      out_y[k - 1] = c * buf[k].real();
    }
  }
}

void SineTransform::ReferenceRow(const double *x, double *out) const
{
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t period = 2 * (n + 1);
  for (std::size_t k = 1; k <= n; k++)
  {
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; j++)
    {
      acc += x[j - 1] * sines_[(j * k) % period];
    }
    out[k - 1] = norm_ * acc;
  }
}

void SineTransform::TransformRows(const double *in, double *out, int rows, bool fast) const
{
  const auto n = static_cast<std::size_t>(n_);
  if (!fast)
  {
    for (int r = 0; r < rows; r++)
    {
      ReferenceRow(in + n * r, out + n * r);
    }
    return;
  }
  std::vector<std::complex<double>> buf(2 * (n + 1));
  int r = 0;
  for (; r + 1 < rows; r += 2)
  {
    FastPair(in + n * r, in + n * (r + 1), out + n * r, out + n * (r + 1), buf);
  }
  if (r < rows)
  {
    FastPair(in + n * r, nullptr, out + n * r, nullptr, buf);
  }
}

void SineTransform::Run(std::span<const double> in, std::span<double> out, bool fast) const
{
  Require(in.size() == size_ && out.size() == size_, ErrorKind::SizeMismatch,
          "dst: vector length does not match the transform size");
  const auto n = static_cast<std::size_t>(n_);
  std::vector<double> tmp(size_);
  if (dim_ == 1)
  {
    TransformRows(in.data(), tmp.data(), 1, fast);
    std::copy(tmp.begin(), tmp.end(), out.begin());
    return;
  }
  // (S (x) S) v = S V S with V the n x n array; S is symmetric.
  TransformRows(in.data(), tmp.data(), n_, fast);
  Transpose(tmp.data(), out.data(), n);
  TransformRows(out.data(), tmp.data(), n_, fast);
  Transpose(tmp.data(), out.data(), n);
}

void SineTransform::Apply(std::span<const double> in, std::span<double> out) const
{
  Run(in, out, HasFastPath());
}

std::vector<double> SineTransform::Apply(std::span<const double> in) const
{
  std::vector<double> out(size_);
  Apply(in, out);
  return out;
}

void SineTransform::ApplyReference(std::span<const double> in, std::span<double> out) const
{
  Run(in, out, false);
}

std::vector<double> SineTransform::ApplyReference(std::span<const double> in) const
{
  std::vector<double> out(size_);
  ApplyReference(in, out);
  return out;
}

std::vector<double> LaplacianEigenvalues(const GridSpec &grid)
{
  const int n = grid.n();
  const double h = grid.h();
  std::vector<double> modes(static_cast<std::size_t>(n));
  for (int k = 0; k < n; k++)
  {
    const double s = std::sin((k + 1) * std::numbers::pi * h / 2.0);
    modes[k] = 4.0 / (h * h) * s * s;
  }
  if (grid.dim() == 1)
  {
    return modes;
  }
  std::vector<double> eig(grid.m());
  const auto N = static_cast<std::size_t>(n);
  for (std::size_t q = 0; q < N; q++)
  {
    for (std::size_t p = 0; p < N; p++)
    {
      eig[p + N * q] = modes[p] + modes[q];
    }
  }
  return eig;
}

}  // namespace cslap
