#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cslap/grid.hpp"
#include "cslap/saddle.hpp"

namespace cslap
{

enum class CoefficientChoice
{
  ConstantOne,
  Example2Poly,
};

enum class PreconditionerChoice
{
  None,
  Ideal,
  Averaged,
};

CoefficientField MakeCoefficient(CoefficientChoice choice);

struct ExperimentSpec
{
  std::vector<int> grid_sizes;
  std::vector<Shift> shifts;
  CoefficientChoice coefficient = CoefficientChoice::ConstantOne;
  PreconditionerChoice preconditioner = PreconditionerChoice::Ideal;
  double tol = 1e-8;
  int max_iter = 1000;
  std::uint64_t seed = 2024;
  int verify_spectrum_up_to = 0;  // 0 skips the dense check
  int jobs = 1;

  void Validate() const;

  // {"grid_sizes":[..], "shifts":[[alpha,beta],..], "coefficient":"constant_one"|
  //  "example2_poly", "preconditioner":"ideal"|"averaged"|"none", "tol", "max_iter",
  //  "seed", "verify_spectrum_up_to", "jobs"}; absent keys keep their defaults.
  static ExperimentSpec FromJson(const std::string &text);
  std::string ToJson() const;
};

enum class SpectrumVerdict
{
  Pass,
  Fail,
  Skipped,
};

struct ReportRow
{
  int n = 0;
  long long dof = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int iterations = 0;
  double wall_time = 0.0;
  double true_residual = 0.0;
  std::optional<int> bound_iterations;
  SpectrumVerdict spectrum_verdict = SpectrumVerdict::Skipped;

  // Not part of the emitted schema.
  bool converged = false;
  std::string error;
  std::vector<double> residual_history;
  double bound_theta = -1.0;  // convergence factor behind bound_iterations, if any

  bool Ok() const { return converged && error.empty() && spectrum_verdict != SpectrumVerdict::Fail; }
};

struct RhsPair
{
  ComplexVector exact;
  ComplexVector rhs;
};

// exact = N(0,1) + i N(0,1) entrywise (real parts first, then imaginary parts, from one
// seeded stream); rhs = (K + lambda I) exact.
RhsPair GenerateRhs(const StencilOperator &k_op, const Shift &shift, std::uint64_t seed);

ReportRow RunRow(int n, const Shift &shift, const ExperimentSpec &spec);

// Rows ordered by grid size, then shift, regardless of how many jobs run them.
std::vector<ReportRow> RunExperiment(const ExperimentSpec &spec);

enum class ReportFormat
{
  Json,
  Csv,
  TextTable,
};

ReportFormat ParseReportFormat(const std::string &name);

std::string EmitReport(const std::vector<ReportRow> &rows, ReportFormat format);

extern const char *const kCsvHeader;

}  // namespace cslap
