#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cslap
{

// Uniform grid on the open unit interval/square with homogeneous Dirichlet boundary.
// Unknowns are numbered lexicographically, x1 fastest: index = i + n * j.
class GridSpec
{
public:
  GridSpec(int n, int dim);

  int n() const { return n_; }
  int dim() const { return dim_; }
  double h() const { return h_; }
  std::size_t m() const { return m_; }

  // Coordinate of interior node i (0-based) along one axis.
  double node(int i) const { return (i + 1) * h_; }

  bool operator==(const GridSpec &other) const = default;

private:
  int n_;
  int dim_;
  double h_;
  std::size_t m_;
};

// Diffusion coefficient a(x) with known bounds 0 < a_min <= a(x) <= a_max.
struct CoefficientField
{
  std::function<double(double, double)> evaluator;
  double a_min;
  double a_max;

  double operator()(double x1, double x2) const { return evaluator(x1, x2); }
  bool IsConstant() const { return a_min == a_max; }
};

CoefficientField ConstantCoefficient(double value);

// a(x) = (20 + x1^2)(20 + x2^2), bounds taken over the closed unit square.
CoefficientField Example2Coefficient();

enum class StencilKind
{
  ConstantLaplacian,
  VariableLaplacian,
};

// Symmetric positive definite finite-difference operator (L or K), applied matrix-free.
class StencilOperator
{
public:
  StencilOperator(GridSpec grid, StencilKind kind, std::vector<double> x_edges,
                  std::vector<double> y_edges);

  const GridSpec &grid() const { return grid_; }
  StencilKind kind() const { return kind_; }
  std::size_t size() const { return grid_.m(); }
  double scale() const { return scale_; }

  // Edge-midpoint coefficients. x_edges has (n+1)*n entries indexed k + (n+1)*j for the
  // edge between x1-nodes k-1 and k; y_edges has n*(n+1) entries indexed i + n*k.
  // Both are empty for the constant kind.
  std::span<const double> x_edges() const { return x_edges_; }
  std::span<const double> y_edges() const { return y_edges_; }

  // y = S x. Reentrant; x and y must not alias.
  void Apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> Apply(std::span<const double> x) const;

  // Upper bound on the spectral norm (Gershgorin).
  double NormEstimate() const;

  // Dense matrix, column-major. Limited to n <= 512 in 1D and n <= 63 in 2D.
  std::vector<double> Dense() const;

  // {"n":..,"dim":..,"kind":..} header accompanying Dense() exports.
  std::string DenseHeaderJson() const;

private:
  double XCoef(int k, int j) const;
  double YCoef(int i, int k) const;

  GridSpec grid_;
  StencilKind kind_;
  double scale_;
  std::vector<double> x_edges_;
  std::vector<double> y_edges_;
};

StencilOperator AssembleLaplacian1D(const GridSpec &grid);
StencilOperator AssembleLaplacian2DConstant(const GridSpec &grid);
StencilOperator AssembleLaplacian2DVariable(const GridSpec &grid, const CoefficientField &a);

// Convenience: constant Laplacian for any dim, variable-coefficient K for 2D.
StencilOperator AssembleOperator(const GridSpec &grid, const CoefficientField &a);

// Exact smallest eigenvalue of L: dim * (4/h^2) sin^2(pi h / 2). Used as c0.
double SmallestLaplacianEigenvalue(const GridSpec &grid);

// Largest n for which Dense() is permitted.
int DenseLimit(int dim);

}  // namespace cslap
