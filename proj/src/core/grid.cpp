#include "cslap/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cslap/error.hpp"

namespace cslap
{

GridSpec::GridSpec(int n, int dim) : n_(n), dim_(dim)
{
  Require(n >= 1, ErrorKind::InvalidArgument, "grid: n must be at least 1");
  Require(dim == 1 || dim == 2, ErrorKind::InvalidArgument, "grid: dim must be 1 or 2");
  h_ = 1.0 / (n + 1);
  m_ = dim == 1 ? static_cast<std::size_t>(n)
                : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
}

CoefficientField ConstantCoefficient(double value)
{
  Require(value > 0.0, ErrorKind::InvalidArgument, "coefficient: constant must be positive");
  return {[value](double, double) { return value; }, value, value};
}

CoefficientField Example2Coefficient()
{
  // Coordinate-wise increasing on [0,1]^2: min at the origin, max at (1,1).
  return {[](double x1, double x2) { return (20.0 + x1 * x1) * (20.0 + x2 * x2); }, 400.0,
          441.0};
}

StencilOperator::StencilOperator(GridSpec grid, StencilKind kind, std::vector<double> x_edges,
                                 std::vector<double> y_edges)
  : grid_(grid), kind_(kind), scale_(1.0 / (grid.h() * grid.h())),
    x_edges_(std::move(x_edges)), y_edges_(std::move(y_edges))
{
  if (kind_ == StencilKind::VariableLaplacian)
  {
    const auto n = static_cast<std::size_t>(grid_.n());
    Require(grid_.dim() == 2, ErrorKind::InvalidArgument,
            "stencil: variable coefficients require a 2D grid");
    Require(x_edges_.size() == (n + 1) * n && y_edges_.size() == n * (n + 1),
            ErrorKind::SizeMismatch, "stencil: edge coefficient arrays have the wrong size");
  }
}

double StencilOperator::XCoef(int k, int j) const
{
  return x_edges_[static_cast<std::size_t>(k) +
                  static_cast<std::size_t>(grid_.n() + 1) * static_cast<std::size_t>(j)];
}

double StencilOperator::YCoef(int i, int k) const
{
  return y_edges_[static_cast<std::size_t>(i) +
                  static_cast<std::size_t>(grid_.n()) * static_cast<std::size_t>(k)];
}

void StencilOperator::Apply(std::span<const double> x, std::span<double> y) const
{
  Require(x.size() == size() && y.size() == size(), ErrorKind::SizeMismatch,
          "stencil: vector length does not match the grid");
  const int n = grid_.n();
  const double s = scale_;
  if (grid_.dim() == 1)
  {
    for (int i = 0; i < n; i++)
    {
      const double left = i > 0 ? x[i - 1] : 0.0;
      const double right = i + 1 < n ? x[i + 1] : 0.0;
      y[i] = s * (2.0 * x[i] - left - right);
    }
    return;
  }
  const auto N = static_cast<std::size_t>(n);
  if (kind_ == StencilKind::ConstantLaplacian)
  {
    for (int j = 0; j < n; j++)
    {
      const double *row = x.data() + N * j;
      const double *below = j > 0 ? row - N : nullptr;
      const double *above = j + 1 < n ? row + N : nullptr;
      double *out = y.data() + N * j;
      for (int i = 0; i < n; i++)
      {
        double acc = 4.0 * row[i];
        if (i > 0)
        {
          acc -= row[i - 1];
        }
        if (i + 1 < n)
        {
          acc -= row[i + 1];
        }
        if (below)
        {
          acc -= below[i];
        }
        if (above)
        {
          acc -= above[i];
        }
        out[i] = s * acc;
      }
    }
    return;
  }
  for (int j = 0; j < n; j++)
  {
    const double *row = x.data() + N * j;
    double *out = y.data() + N * j;
    for (int i = 0; i < n; i++)
    {
      const double u = row[i];
      const double aw = XCoef(i, j), ae = XCoef(i + 1, j);
      const double as = YCoef(i, j), an = YCoef(i, j + 1);
      double acc = (aw + ae + as + an) * u;
      if (i > 0)
      {
        acc -= aw * row[i - 1];
      }
      if (i + 1 < n)
      {
        acc -= ae * row[i + 1];
      }
      if (j > 0)
      {
        acc -= as * row[i - N];
      }
      if (j + 1 < n)
      {
        acc -= an * row[i + N];
      }
      out[i] = s * acc;
    }
  }
}

std::vector<double> StencilOperator::Apply(std::span<const double> x) const
{
  std::vector<double> y(size());
  Apply(x, y);
  return y;
}

double StencilOperator::NormEstimate() const
{
  if (kind_ == StencilKind::ConstantLaplacian)
  {
    return 4.0 * grid_.dim() * scale_;
  }
  // Gershgorin: row sum of absolute values is at most twice the diagonal.
  double worst = 0.0;
  const int n = grid_.n();
  for (int j = 0; j < n; j++)
  {
    for (int i = 0; i < n; i++)
    {
      const double diag = XCoef(i, j) + XCoef(i + 1, j) + YCoef(i, j) + YCoef(i, j + 1);
      worst = std::max(worst, 2.0 * diag);
    }
  }
  return worst * scale_;
}

int DenseLimit(int dim)
{
  return dim == 1 ? 512 : 63;
}

std::vector<double> StencilOperator::Dense() const
{
  Require(grid_.n() <= DenseLimit(grid_.dim()), ErrorKind::TooLarge,
          "stencil: grid too large for dense materialization");
  const std::size_t m = size();
  std::vector<double> dense(m * m, 0.0);
  std::vector<double> e(m, 0.0), col(m);
  for (std::size_t c = 0; c < m; c++)
  {
    e[c] = 1.0;
    Apply(e, col);
    e[c] = 0.0;
    std::copy(col.begin(), col.end(), dense.begin() + static_cast<std::ptrdiff_t>(c * m));
  }
  return dense;
}

std::string StencilOperator::DenseHeaderJson() const
{
  std::ostringstream os;
  os << "{\"n\":" << grid_.n() << ",\"dim\":" << grid_.dim() << ",\"kind\":\""
     << (kind_ == StencilKind::ConstantLaplacian ? "constant_laplacian" : "variable_laplacian")
     << "\"}";
  return os.str();
}

StencilOperator AssembleLaplacian1D(const GridSpec &grid)
{
  Require(grid.dim() == 1, ErrorKind::InvalidArgument, "assemble: expected a 1D grid");
  return StencilOperator(grid, StencilKind::ConstantLaplacian, {}, {});
}

StencilOperator AssembleLaplacian2DConstant(const GridSpec &grid)
{
  Require(grid.dim() == 2, ErrorKind::InvalidArgument, "assemble: expected a 2D grid");
  return StencilOperator(grid, StencilKind::ConstantLaplacian, {}, {});
}

StencilOperator AssembleLaplacian2DVariable(const GridSpec &grid, const CoefficientField &a)
{
  Require(grid.dim() == 2, ErrorKind::InvalidArgument, "assemble: expected a 2D grid");
  Require(a.a_min > 0.0 && a.a_max >= a.a_min, ErrorKind::InvalidArgument,
          "assemble: coefficient bounds must satisfy 0 < a_min <= a_max");
  const int n = grid.n();
  const double h = grid.h();
  const auto N = static_cast<std::size_t>(n);
  const double slack = 1e-12 * a.a_max;
  auto sample = [&](double x1, double x2) {
    const double v = a(x1, x2);
    if (!(v > 0.0))
    {
      std::ostringstream os;
      os << "assemble: coefficient sample " << v << " at (" << x1 << ", " << x2
         << ") is not positive";
      Fail(ErrorKind::InvalidArgument, os.str());
    }
    if (v < a.a_min - slack || v > a.a_max + slack)
    {
      std::ostringstream os;
      os << "assemble: coefficient sample " << v << " at (" << x1 << ", " << x2
         << ") lies outside [" << a.a_min << ", " << a.a_max << "]";
      Fail(ErrorKind::InvalidArgument, os.str());
    }
    return v;
  };

  std::vector<double> x_edges((N + 1) * N), y_edges(N * (N + 1));
  for (int j = 0; j < n; j++)
  {
    for (int k = 0; k <= n; k++)
    {
      x_edges[k + (N + 1) * j] = sample((k + 0.5) * h, grid.node(j));
    }
  }
  for (int k = 0; k <= n; k++)
  {
    for (int i = 0; i < n; i++)
    {
      y_edges[i + N * k] = sample(grid.node(i), (k + 0.5) * h);
    }
  }
  return StencilOperator(grid, StencilKind::VariableLaplacian, std::move(x_edges),
                         std::move(y_edges));
}

StencilOperator AssembleOperator(const GridSpec &grid, const CoefficientField &a)
{
  if (grid.dim() == 1)
  {
    Require(a.IsConstant() && a.a_min == 1.0, ErrorKind::InvalidArgument,
            "assemble: 1D grids support only the unit coefficient");
    return AssembleLaplacian1D(grid);
  }
  if (a.IsConstant() && a.a_min == 1.0)
  {
    return AssembleLaplacian2DConstant(grid);
  }
  return AssembleLaplacian2DVariable(grid, a);
}

double SmallestLaplacianEigenvalue(const GridSpec &grid)
{
  const double h = grid.h();
  const double s = std::sin(std::numbers::pi * h / 2.0);
  return grid.dim() * 4.0 / (h * h) * s * s;
}

}  // namespace cslap
