#include "cslap/cslap.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "cslap/bench.hpp"
#include "cslap/error.hpp"
#include "cslap/minres.hpp"
#include "cslap/precond.hpp"
#include "cslap/spectral.hpp"

struct cslap_problem
{
  cslap::GridSpec grid;
  cslap::CoefficientField coef;
  std::shared_ptr<const cslap::StencilOperator> k_op;
  cslap::SaddleOperator op;
};

struct cslap_precond
{
  cslap::SpectralPreconditioner pc;
};

struct cslap_report
{
  cslap::SolveReport report;
};

namespace
{

thread_local std::string last_error;

cslap_status ToStatus(cslap::ErrorKind kind)
{
  switch (kind)
  {
    case cslap::ErrorKind::InvalidArgument:
      return CSLAP_ERR_INVALID_ARGUMENT;
    case cslap::ErrorKind::SizeMismatch:
      return CSLAP_ERR_SIZE_MISMATCH;
    case cslap::ErrorKind::Singular:
      return CSLAP_ERR_SINGULAR;
    case cslap::ErrorKind::Breakdown:
      return CSLAP_ERR_BREAKDOWN;
    case cslap::ErrorKind::TooLarge:
      return CSLAP_ERR_TOO_LARGE;
  }
  return CSLAP_ERR_INTERNAL;
}

template <typename F>
cslap_status Guard(F &&body)
{
  try
  {
    body();
    last_error.clear();
    return CSLAP_OK;
  }
  catch (const cslap::Error &e)
  {
    last_error = e.what();
    return ToStatus(e.kind());
  }
  catch (const std::bad_alloc &)
  {
    last_error = "out of memory";
    return CSLAP_ERR_INTERNAL;
  }
  catch (const std::exception &e)
  {
    last_error = e.what();
    return CSLAP_ERR_INTERNAL;
  }
  catch (...)
  {
    last_error = "unknown error";
    return CSLAP_ERR_INTERNAL;
  }
}

char *CopyString(const std::string &s)
{
  auto *out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cslap_status NullStatus(const char *what)
{
  last_error = std::string("null pointer: ") + what;
  return CSLAP_ERR_NULL_POINTER;
}

cslap_problem *MakeProblem(const cslap::GridSpec &grid, cslap::CoefficientField coef,
                           double alpha, double beta)
{
  auto k_op = std::make_shared<const cslap::StencilOperator>(cslap::AssembleOperator(grid, coef));
  cslap::SaddleOperator op(k_op, {alpha, beta});
  return new cslap_problem{grid, std::move(coef), std::move(k_op), std::move(op)};
}

}  // namespace

extern "C" {

const char *cslap_version(void)
{
  return "1.0.0";
}

const char *cslap_last_error(void)
{
  return last_error.c_str();
}

const char *cslap_status_string(cslap_status status)
{
  switch (status)
  {
    case CSLAP_OK:
      return "ok";
    case CSLAP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CSLAP_ERR_SIZE_MISMATCH:
      return "size mismatch";
    case CSLAP_ERR_SINGULAR:
      return "singular";
    case CSLAP_ERR_BREAKDOWN:
      return "breakdown";
    case CSLAP_ERR_TOO_LARGE:
      return "too large";
    case CSLAP_ERR_NULL_POINTER:
      return "null pointer";
    case CSLAP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void cslap_string_free(char *s)
{
  delete[] s;
}

cslap_status cslap_problem_create(int n, int dim, cslap_coefficient coef, double alpha,
                                  double beta, cslap_problem **out)
{
  if (!out)
  {
    return NullStatus("out");
  }
  *out = nullptr;
  return Guard([&] {
    if (coef != CSLAP_COEF_CONSTANT_ONE && coef != CSLAP_COEF_EXAMPLE2)
    {
      throw cslap::Error(cslap::ErrorKind::InvalidArgument, "unknown coefficient");
    }
    const cslap::GridSpec grid(n, dim);
    *out = MakeProblem(grid,
                       cslap::MakeCoefficient(coef == CSLAP_COEF_CONSTANT_ONE
                                                  ? cslap::CoefficientChoice::ConstantOne
                                                  : cslap::CoefficientChoice::Example2Poly),
                       alpha, beta);
  });
}

cslap_status cslap_problem_create_custom(int n, cslap_coefficient_fn fn, void *user_data,
                                         double a_min, double a_max, double alpha, double beta,
                                         cslap_problem **out)
{
  if (!out)
  {
    return NullStatus("out");
  }
  *out = nullptr;
  if (!fn)
  {
    return NullStatus("fn");
  }
  return Guard([&] {
    const cslap::GridSpec grid(n, 2);
    cslap::CoefficientField coef{[fn, user_data](double x1, double x2) { return fn(x1, x2, user_data); },
                                 a_min, a_max};
    cslap::Require(a_min > 0.0 && a_max >= a_min, cslap::ErrorKind::InvalidArgument,
                   "coefficient bounds must satisfy 0 < a_min <= a_max");
    // A user field always goes through the variable-coefficient stencil.
    auto k_op = std::make_shared<const cslap::StencilOperator>(
        cslap::AssembleLaplacian2DVariable(grid, coef));
    cslap::SaddleOperator op(k_op, {alpha, beta});
    *out = new cslap_problem{grid, std::move(coef), std::move(k_op), std::move(op)};
  });
}

void cslap_problem_destroy(cslap_problem *p)
{
  delete p;
}

size_t cslap_problem_unknowns(const cslap_problem *p)
{
  return p ? p->grid.m() : 0;
}

cslap_status cslap_problem_apply_saddle(const cslap_problem *p, const double *x, double *y,
                                        size_t len)
{
  if (!p || !x || !y)
  {
    return NullStatus("problem/x/y");
  }
  return Guard([&] {
    cslap::Require(len == p->op.size(), cslap::ErrorKind::SizeMismatch, "length must be 2m");
    p->op.Apply(std::span<const double>(x, len), std::span<double>(y, len));
  });
}

cslap_status cslap_problem_apply_shifted(const cslap_problem *p, const double *re,
                                         const double *im, double *out_re, double *out_im,
                                         size_t m)
{
  if (!p || !re || !im || !out_re || !out_im)
  {
    return NullStatus("problem/vectors");
  }
  return Guard([&] {
    cslap::Require(m == p->grid.m(), cslap::ErrorKind::SizeMismatch, "length must be m");
    const cslap::ComplexVector z(std::vector<double>(re, re + m), std::vector<double>(im, im + m));
    const auto r = cslap::ApplyComplexShifted(*p->k_op, p->op.shift(), z);
    std::copy(r.re.begin(), r.re.end(), out_re);
    std::copy(r.im.begin(), r.im.end(), out_im);
  });
}

cslap_status cslap_problem_export_dense(const cslap_problem *p, double *out, size_t len,
                                        char **header_json)
{
  if (!p || !out)
  {
    return NullStatus("problem/out");
  }
  return Guard([&] {
    const std::size_t m = p->grid.m();
    cslap::Require(len == m * m, cslap::ErrorKind::SizeMismatch, "length must be m*m");
    const auto dense = p->k_op->Dense();
    std::copy(dense.begin(), dense.end(), out);
    if (header_json)
    {
      *header_json = CopyString(p->k_op->DenseHeaderJson());
    }
  });
}

cslap_status cslap_generate_rhs(const cslap_problem *p, uint64_t seed, double *exact_re,
                                double *exact_im, double *f_re, double *f_im, size_t m)
{
  if (!p || !exact_re || !exact_im || !f_re || !f_im)
  {
    return NullStatus("problem/vectors");
  }
  return Guard([&] {
    cslap::Require(m == p->grid.m(), cslap::ErrorKind::SizeMismatch, "length must be m");
    const auto pair = cslap::GenerateRhs(*p->k_op, p->op.shift(), seed);
    std::copy(pair.exact.re.begin(), pair.exact.re.end(), exact_re);
    std::copy(pair.exact.im.begin(), pair.exact.im.end(), exact_im);
    std::copy(pair.rhs.re.begin(), pair.rhs.re.end(), f_re);
    std::copy(pair.rhs.im.begin(), pair.rhs.im.end(), f_im);
  });
}

cslap_status cslap_precond_create(const cslap_problem *p, cslap_precond_kind kind,
                                  cslap_precond **out)
{
  if (!p || !out)
  {
    return NullStatus("problem/out");
  }
  *out = nullptr;
  return Guard([&] {
    switch (kind)
    {
      case CSLAP_PRECOND_IDEAL:
        cslap::Require(p->coef.IsConstant() && p->coef.a_min == 1.0,
                       cslap::ErrorKind::InvalidArgument,
                       "the ideal preconditioner requires the constant coefficient");
        *out = new cslap_precond{cslap::BuildIdeal(p->grid, p->op.shift())};
        break;
      case CSLAP_PRECOND_AVERAGED:
        *out = new cslap_precond{p->grid.dim() == 2
                                     ? cslap::BuildAveraged(p->grid, p->coef, p->op.shift())
                                     : cslap::BuildIdeal(p->grid, p->op.shift())};
        break;
      default:
        throw cslap::Error(cslap::ErrorKind::InvalidArgument,
                           "preconditioner kind must be ideal or averaged");
    }
  });
}

void cslap_precond_destroy(cslap_precond *pc)
{
  delete pc;
}

cslap_status cslap_precond_apply_power(const cslap_precond *pc, double exponent,
                                       const double *in, double *out, size_t len)
{
  if (!pc || !in || !out)
  {
    return NullStatus("precond/in/out");
  }
  return Guard([&] {
    pc->pc.ApplyPower(std::span<const double>(in, len), std::span<double>(out, len), exponent);
  });
}

cslap_solver_config cslap_solver_config_default(void)
{
  const cslap::SolverConfig c;
  return {c.tol, c.max_iter, c.record_history ? 1 : 0};
}

cslap_status cslap_solve(const cslap_problem *p, const cslap_precond *pc, const double *f_re,
                         const double *f_im, size_t m, const cslap_solver_config *config,
                         double *z_re, double *z_im, cslap_report **report)
{
  if (report)
  {
    *report = nullptr;
  }
  if (!p || !f_re || !f_im || !z_re || !z_im)
  {
    return NullStatus("problem/vectors");
  }
  return Guard([&] {
    cslap::Require(m == p->grid.m(), cslap::ErrorKind::SizeMismatch, "length must be m");
    cslap::SolverConfig cfg;
    if (config)
    {
      cfg.tol = config->tol;
      cfg.max_iter = config->max_iter;
      cfg.record_history = config->record_history != 0;
    }
    const cslap::ComplexVector f(std::vector<double>(f_re, f_re + m),
                                 std::vector<double>(f_im, f_im + m));
    auto result = cslap::SolveComplexShifted(p->op, pc ? &pc->pc : nullptr, f, cfg);
    std::copy(result.solution.re.begin(), result.solution.re.end(), z_re);
    std::copy(result.solution.im.begin(), result.solution.im.end(), z_im);
    if (report)
    {
      *report = new cslap_report{std::move(result.report)};
    }
  });
}

int cslap_report_iterations(const cslap_report *r)
{
  return r ? r->report.iterations : -1;
}

int cslap_report_converged(const cslap_report *r)
{
  return r && r->report.converged ? 1 : 0;
}

double cslap_report_true_residual(const cslap_report *r)
{
  return r ? r->report.final_true_residual : -1.0;
}

double cslap_report_wall_time(const cslap_report *r)
{
  return r ? r->report.wall_time : -1.0;
}

size_t cslap_report_history(const cslap_report *r, const double **data)
{
  if (!r)
  {
    if (data)
    {
      *data = nullptr;
    }
    return 0;
  }
  if (data)
  {
    *data = r->report.residual_history.data();
  }
  return r->report.residual_history.size();
}

void cslap_report_destroy(cslap_report *r)
{
  delete r;
}

cslap_status cslap_problem_bounds(const cslap_problem *p, cslap_bounds *out)
{
  if (!p || !out)
  {
    return NullStatus("problem/out");
  }
  return Guard([&] {
    const auto b = cslap::ComputeBounds(p->coef, cslap::SmallestLaplacianEigenvalue(p->grid),
                                        p->op.shift());
    out->mu0 = b.mu0;
    out->mu0_tilde = b.mu0_tilde;
    out->mu1_tilde = b.mu1_tilde;
    out->theta1 = b.theta1;
    out->theta2 = b.theta2;
    out->c0 = b.c0;
    out->a_min = b.a_min;
    out->a_max = b.a_max;
    out->gamma = b.gamma;
    out->branch = b.branch == cslap::BoundBranch::AlphaNonneg     ? CSLAP_BRANCH_ALPHA_NONNEG
                  : b.branch == cslap::BoundBranch::AlphaNegValid ? CSLAP_BRANCH_ALPHA_NEG_VALID
                                                                  : CSLAP_BRANCH_ASSUMPTIONS_VIOLATED;
  });
}

cslap_status cslap_bound_iterations(double a1, double a2, double a3, double a4, double tol,
                                    int *k)
{
  if (!k)
  {
    return NullStatus("k");
  }
  return Guard([&] { *k = cslap::BoundIterations(a1, a2, a3, a4, tol); });
}

cslap_status cslap_verify_spectrum(const cslap_problem *p, char **certificate_json,
                                   int *all_inside)
{
  if (!p || !certificate_json)
  {
    return NullStatus("problem/certificate_json");
  }
  *certificate_json = nullptr;
  return Guard([&] {
    const auto cert = cslap::VerifySpectrum(p->grid, p->coef, p->op.shift());
    *certificate_json = CopyString(cert.ToJson());
    if (all_inside)
    {
      *all_inside = cert.all_inside ? 1 : 0;
    }
  });
}

cslap_status cslap_run_experiment(const char *spec_json, const char *format, char **output,
                                  int *all_ok)
{
  if (!spec_json || !format || !output)
  {
    return NullStatus("spec_json/format/output");
  }
  *output = nullptr;
  return Guard([&] {
    const auto spec = cslap::ExperimentSpec::FromJson(spec_json);
    const auto fmt = cslap::ParseReportFormat(format);
    const auto rows = cslap::RunExperiment(spec);
    *output = CopyString(cslap::EmitReport(rows, fmt));
    if (all_ok)
    {
      bool ok = true;
      for (const auto &r : rows)
      {
        ok = ok && r.Ok();
      }
      *all_ok = ok ? 1 : 0;
    }
  });
}

}  // extern "C"
