#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cslap/grid.hpp"

namespace cslap
{

// Orthonormal DST-I, S_jk = sqrt(2/(n+1)) sin(jk pi/(n+1)), j,k = 1..n, and its 2D
// tensor product S (x) S. S is symmetric and involutory, so the same plan serves as both
// forward and inverse transform.
//
// When n+1 is a power of two the transform runs in O(n log n) through an odd extension
// into a length-2(n+1) complex FFT (two real rows per FFT). Other sizes fall back to the
// O(n^2) direct sum. The plan is immutable after construction and Apply is reentrant.
class SineTransform
{
public:
  SineTransform(int n, int dim);
  explicit SineTransform(const GridSpec &grid) : SineTransform(grid.n(), grid.dim()) {}

  int n() const { return n_; }
  int dim() const { return dim_; }
  std::size_t size() const { return size_; }
  bool HasFastPath() const { return !twiddles_.empty(); }

  // out = S v (1D) or (S (x) S) v (2D). in and out may alias.
  void Apply(std::span<const double> in, std::span<double> out) const;
  std::vector<double> Apply(std::span<const double> in) const;

  // Direct O(n^2)-per-row evaluation; same contract as Apply.
  void ApplyReference(std::span<const double> in, std::span<double> out) const;
  std::vector<double> ApplyReference(std::span<const double> in) const;

private:
  void TransformRows(const double *in, double *out, int rows, bool fast) const;
  void FastPair(const double *x, const double *y, double *out_x, double *out_y,
                std::vector<std::complex<double>> &buf) const;
  void ReferenceRow(const double *x, double *out) const;
  void Fft(std::vector<std::complex<double>> &buf) const;
  void Run(std::span<const double> in, std::span<double> out, bool fast) const;

  int n_;
  int dim_;
  std::size_t size_;
  double norm_;
  std::vector<double> sines_;                   // sin(k pi/(n+1)), k = 0..2n+1
  std::vector<std::complex<double>> twiddles_;  // exp(-2 pi i k/N), k < N/2
  std::vector<std::size_t> bitrev_;
};

// Eigenvalues of L in the transform's ordering: entry p + n q holds
// (4/h^2)(sin^2((p+1) pi h/2) + sin^2((q+1) pi h/2)); a single term in 1D.
std::vector<double> LaplacianEigenvalues(const GridSpec &grid);

}  // namespace cslap
