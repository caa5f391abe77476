#include "cslap/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cslap/error.hpp"
#include "cslap/minres.hpp"
#include "cslap/precond.hpp"
#include "cslap/random.hpp"
#include "cslap/spectral.hpp"

namespace cslap
{

const char *const kCsvHeader =
    "n,dof,alpha,beta,iterations,wall_time,true_residual,bound_iterations,spectrum_verdict";

namespace
{

const char *CoefficientName(CoefficientChoice c)
{
  return c == CoefficientChoice::ConstantOne ? "constant_one" : "example2_poly";
}

const char *PreconditionerName(PreconditionerChoice p)
{
  switch (p)
  {
    case PreconditionerChoice::None:
      return "none";
    case PreconditionerChoice::Ideal:
      return "ideal";
    case PreconditionerChoice::Averaged:
      return "averaged";
  }
  return "none";
}

const char *VerdictName(SpectrumVerdict v)
{
  switch (v)
  {
    case SpectrumVerdict::Pass:
      return "pass";
    case SpectrumVerdict::Fail:
      return "fail";
    case SpectrumVerdict::Skipped:
      return "skipped";
  }
  return "skipped";
}

// Shortest round-trip decimal with '.' separator, independent of the C locale.
std::string FormatReal(double v)
{
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

CoefficientField MakeCoefficient(CoefficientChoice choice)
{
  return choice == CoefficientChoice::ConstantOne ? ConstantCoefficient(1.0)
                                                  : Example2Coefficient();
}

void ExperimentSpec::Validate() const
{
  Require(!grid_sizes.empty(), ErrorKind::InvalidArgument, "experiment: no grid sizes");
  Require(!shifts.empty(), ErrorKind::InvalidArgument, "experiment: no shifts");
  for (int n : grid_sizes)
  {
    Require(n >= 1, ErrorKind::InvalidArgument, "experiment: grid sizes must be positive");
  }
  Require(!(preconditioner == PreconditionerChoice::Ideal &&
            coefficient != CoefficientChoice::ConstantOne),
          ErrorKind::InvalidArgument,
          "experiment: the ideal preconditioner requires the constant coefficient");
  Require(tol > 0.0 && tol < 1.0, ErrorKind::InvalidArgument, "experiment: tol must lie in (0, 1)");
  Require(max_iter >= 1, ErrorKind::InvalidArgument, "experiment: max_iter must be positive");
  Require(verify_spectrum_up_to >= 0, ErrorKind::InvalidArgument,
          "experiment: verify_spectrum_up_to must be nonnegative");
  Require(jobs >= 1, ErrorKind::InvalidArgument, "experiment: jobs must be positive");
}

ExperimentSpec ExperimentSpec::FromJson(const std::string &text)
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(text);
  }
  catch (const nlohmann::json::exception &e)
  {
    Fail(ErrorKind::InvalidArgument, std::string("experiment: malformed JSON: ") + e.what());
  }
  ExperimentSpec spec;
  try
  {
    if (j.contains("grid_sizes"))
    {
      spec.grid_sizes = j.at("grid_sizes").get<std::vector<int>>();
    }
    if (j.contains("shifts"))
    {
      spec.shifts.clear();
      for (const auto &s : j.at("shifts"))
      {
        Require(s.is_array() && s.size() == 2, ErrorKind::InvalidArgument,
                "experiment: each shift must be [alpha, beta]");
        spec.shifts.push_back({s[0].get<double>(), s[1].get<double>()});
      }
    }
    if (j.contains("coefficient"))
    {
      const auto c = j.at("coefficient").get<std::string>();
      if (c == "constant_one" || c == "const")
      {
        spec.coefficient = CoefficientChoice::ConstantOne;
      }
      else if (c == "example2_poly" || c == "example2")
      {
        spec.coefficient = CoefficientChoice::Example2Poly;
      }
      else
      {
        Fail(ErrorKind::InvalidArgument, "experiment: unknown coefficient '" + c + "'");
      }
    }
    if (j.contains("preconditioner"))
    {
      const auto p = j.at("preconditioner").get<std::string>();
      if (p == "ideal")
      {
        spec.preconditioner = PreconditionerChoice::Ideal;
      }
      else if (p == "averaged")
      {
        spec.preconditioner = PreconditionerChoice::Averaged;
      }
      else if (p == "none")
      {
        spec.preconditioner = PreconditionerChoice::None;
      }
      else
      {
        Fail(ErrorKind::InvalidArgument, "experiment: unknown preconditioner '" + p + "'");
      }
    }
    spec.tol = j.value("tol", spec.tol);
    spec.max_iter = j.value("max_iter", spec.max_iter);
    spec.seed = j.value("seed", spec.seed);
    spec.verify_spectrum_up_to = j.value("verify_spectrum_up_to", spec.verify_spectrum_up_to);
    spec.jobs = j.value("jobs", spec.jobs);
  }
  catch (const nlohmann::json::exception &e)
  {
    Fail(ErrorKind::InvalidArgument, std::string("experiment: bad field: ") + e.what());
  }
  spec.Validate();
  return spec;
}

std::string ExperimentSpec::ToJson() const
{
  nlohmann::json j;
  j["grid_sizes"] = grid_sizes;
  j["shifts"] = nlohmann::json::array();
  for (const auto &s : shifts)
  {
    j["shifts"].push_back({s.alpha, s.beta});
  }
  j["coefficient"] = CoefficientName(coefficient);
  j["preconditioner"] = PreconditionerName(preconditioner);
  j["tol"] = tol;
  j["max_iter"] = max_iter;
  j["seed"] = seed;
  j["verify_spectrum_up_to"] = verify_spectrum_up_to;
  j["jobs"] = jobs;
  return j.dump();
}

RhsPair GenerateRhs(const StencilOperator &k_op, const Shift &shift, std::uint64_t seed)
{
  const std::size_t m = k_op.size();
  GaussianRng rng(seed);
  ComplexVector exact(m);
  for (auto &v : exact.re)
  {
    v = rng.Normal();
  }
  for (auto &v : exact.im)
  {
    v = rng.Normal();
  }
  auto rhs = ApplyComplexShifted(k_op, shift, exact);
  return {std::move(exact), std::move(rhs)};
}

ReportRow RunRow(int n, const Shift &shift, const ExperimentSpec &spec)
{
  ReportRow row;
  row.n = n;
  row.dof = 2LL * n * n;
  row.alpha = shift.alpha;
  row.beta = shift.beta;
  try
  {
    const GridSpec grid(n, 2);
    const auto coef = MakeCoefficient(spec.coefficient);
    auto k_op = std::make_shared<const StencilOperator>(AssembleOperator(grid, coef));
    const SaddleOperator op(k_op, shift);

    std::optional<SpectralPreconditioner> pc;
    if (spec.preconditioner == PreconditionerChoice::Ideal)
    {
      pc.emplace(BuildIdeal(grid, shift));
    }
    else if (spec.preconditioner == PreconditionerChoice::Averaged)
    {
      pc.emplace(BuildAveraged(grid, coef, shift));
    }

    const auto [exact, rhs] = GenerateRhs(*k_op, shift, spec.seed);
    SolverConfig config{spec.tol, spec.max_iter, true};
    auto solved = SolveComplexShifted(op, pc ? &*pc : nullptr, rhs, config);
    row.iterations = solved.report.iterations;
    row.wall_time = solved.report.wall_time;
    row.true_residual = solved.report.final_true_residual;
    row.converged = solved.report.converged;
    row.residual_history = std::move(solved.report.residual_history);

    if (spec.preconditioner == PreconditionerChoice::Ideal)
    {
      // Two-point spectrum {-1, 1}.
      row.bound_iterations = BoundIterations(1.0, 1.0, 1.0, 1.0, spec.tol);
      row.bound_theta = 0.0;
    }
    else if (spec.preconditioner == PreconditionerChoice::Averaged)
    {
      const auto bounds = ComputeBounds(coef, SmallestLaplacianEigenvalue(grid), shift);
      if (bounds.Trusted() && bounds.IntervalLo() > 0.0 && bounds.IntervalHi() >= bounds.IntervalLo())
      {
        const double lo = bounds.IntervalLo(), hi = bounds.IntervalHi();
        row.bound_iterations = BoundIterations(hi, lo, lo, hi, spec.tol);
        row.bound_theta = bounds.Theta();
      }
    }

    if (pc && n <= spec.verify_spectrum_up_to)
    {
      const auto cert = VerifySpectrum(grid, coef, shift);
      if (!cert.bounds.Trusted())
      {
        row.spectrum_verdict = SpectrumVerdict::Skipped;
      }
      else
      {
        row.spectrum_verdict = cert.all_inside ? SpectrumVerdict::Pass : SpectrumVerdict::Fail;
      }
    }
  }
  catch (const std::exception &e)
  {
    row.error = e.what();
    row.converged = false;
  }
  return row;
}

std::vector<ReportRow> RunExperiment(const ExperimentSpec &spec)
{
  spec.Validate();
  std::vector<std::pair<int, Shift>> work;
  for (int n : spec.grid_sizes)
  {
    for (const auto &s : spec.shifts)
    {
      work.emplace_back(n, s);
    }
  }
  std::vector<ReportRow> rows(work.size());
  const int workers = std::min<int>(spec.jobs, static_cast<int>(work.size()));
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < work.size(); i++)
    {
      rows[i] = RunRow(work[i].first, work[i].second, spec);
    }
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; w++)
  {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < work.size(); i = next++)
      {
        rows[i] = RunRow(work[i].first, work[i].second, spec);
      }
    });
  }
  pool.clear();
  return rows;
}

ReportFormat ParseReportFormat(const std::string &name)
{
  if (name == "json")
  {
    return ReportFormat::Json;
  }
  if (name == "csv")
  {
    return ReportFormat::Csv;
  }
  if (name == "text" || name == "text_table" || name == "table")
  {
    return ReportFormat::TextTable;
  }
  Fail(ErrorKind::InvalidArgument, "report: unknown format '" + name + "'");
}

namespace
{

std::string EmitJson(const std::vector<ReportRow> &rows)
{
  auto arr = nlohmann::json::array();
  for (const auto &r : rows)
  {
    nlohmann::json j;
    j["n"] = r.n;
    j["dof"] = r.dof;
    j["alpha"] = r.alpha;
    j["beta"] = r.beta;
    j["iterations"] = r.iterations;
    j["wall_time"] = r.wall_time;
    j["true_residual"] = r.true_residual;
    j["bound_iterations"] = r.bound_iterations ? nlohmann::json(*r.bound_iterations)
                                               : nlohmann::json("n/a");
    j["spectrum_verdict"] = VerdictName(r.spectrum_verdict);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string EmitCsv(const std::vector<ReportRow> &rows)
{
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto &r : rows)
  {
    out += std::to_string(r.n) + ',' + std::to_string(r.dof) + ',' + FormatReal(r.alpha) + ',' +
           FormatReal(r.beta) + ',' + std::to_string(r.iterations) + ',' +
           FormatReal(r.wall_time) + ',' + FormatReal(r.true_residual) + ',' +
           (r.bound_iterations ? std::to_string(*r.bound_iterations) : std::string("n/a")) +
           ',' + VerdictName(r.spectrum_verdict) + '\n';
  }
  return out;
}

std::string EmitTable(const std::vector<ReportRow> &rows)
{
  // Grid sizes down, shifts across, each shift cell holding Iter and CPU.
  std::vector<int> sizes;
  std::vector<std::pair<double, double>> shifts;
  for (const auto &r : rows)
  {
    if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end())
    {
      sizes.push_back(r.n);
    }
    const std::pair<double, double> s{r.alpha, r.beta};
    if (std::find(shifts.begin(), shifts.end(), s) == shifts.end())
    {
      shifts.push_back(s);
    }
  }
  auto shift_label = [](const std::pair<double, double> &s) {
    std::ostringstream os;
    os << "(a,b)=(" << s.first << "," << s.second << ")";
    return os.str();
  };
  constexpr int iter_w = 6, cpu_w = 10;
  std::ostringstream os;
  os << std::setw(6) << "n" << " | " << std::setw(10) << "DoF";
  for (const auto &s : shifts)
  {
    os << " | " << std::setw(iter_w + cpu_w + 1) << shift_label(s);
  }
  os << '\n' << std::setw(6) << "" << " | " << std::setw(10) << "";
  for (std::size_t k = 0; k < shifts.size(); k++)
  {
    os << " | " << std::setw(iter_w) << "Iter" << ' ' << std::setw(cpu_w) << "CPU";
  }
  os << '\n';
  const std::size_t width = static_cast<std::size_t>(os.tellp()) / 2;
  os << std::string(width, '-') << '\n';
  for (int n : sizes)
  {
    os << std::setw(6) << n << " | " << std::setw(10) << 2LL * n * n;
    for (const auto &s : shifts)
    {
      const auto it = std::find_if(rows.begin(), rows.end(), [&](const ReportRow &r) {
        return r.n == n && r.alpha == s.first && r.beta == s.second;
      });
      if (it == rows.end())
      {
        os << " | " << std::setw(iter_w + cpu_w + 1) << "";
        continue;
      }
      std::ostringstream iter, cpu;
      iter << it->iterations << (it->Ok() ? "" : "*");
      cpu << std::fixed << std::setprecision(4) << it->wall_time;
      os << " | " << std::setw(iter_w) << iter.str() << ' ' << std::setw(cpu_w) << cpu.str();
    }
    os << '\n';
  }
  bool any_failed = false;
  for (const auto &r : rows)
  {
    if (!r.Ok())
    {
      if (!any_failed)
      {
        os << "\n* not converged or failed:\n";
        any_failed = true;
      }
      os << "  n=" << r.n << " (a,b)=(" << r.alpha << "," << r.beta << "): "
         << (r.error.empty() ? (r.converged ? "spectrum check failed" : "max_iter reached")
                             : r.error)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::string EmitReport(const std::vector<ReportRow> &rows, ReportFormat format)
{
  Require(!rows.empty(), ErrorKind::InvalidArgument, "report: no rows to emit");
  switch (format)
  {
    case ReportFormat::Json:
      return EmitJson(rows);
    case ReportFormat::Csv:
      return EmitCsv(rows);
    case ReportFormat::TextTable:
      return EmitTable(rows);
  }
  Fail(ErrorKind::InvalidArgument, "report: unknown format");
}

}  // namespace cslap
