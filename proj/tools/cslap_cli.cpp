// Command-line front end: solve one instance, sweep a benchmark table, or certify the
// preconditioned spectrum of a small instance. Talks to the library only through cslap.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cslap/cslap.h"

namespace
{

struct CommonOptions
{
  std::vector<int> n{63};
  std::vector<double> alpha;
  std::vector<double> beta;
  std::string coef = "const";
  std::string precond;
  double tol = 1e-8;
  int max_iter = 1000;
  std::uint64_t seed = 2024;
  std::string format = "text";
  int verify_up_to = 0;
  std::string out;
  int jobs = 1;
};

// Default shift sweeps for the constant and the variable coefficient.
const std::vector<std::pair<double, double>> kConstantShifts = {
    {100, 100}, {-100, -100}, {100, -100}, {-100, 100}, {-100, 1}, {1, -100}};
const std::vector<std::pair<double, double>> kVariableShifts = {
    {-600, 150}, {-100, -25}, {100, -100}, {-100, 100}, {-100, 1}, {1, -100}};

void AddCommon(CLI::App *cmd, CommonOptions &o, bool multi)
{
  auto *n = cmd->add_option("--n", o.n, "Interior grid points per dimension (2^k - 1)");
  auto *a = cmd->add_option("--alpha", o.alpha, "Real part of the shift");
  auto *b = cmd->add_option("--beta", o.beta, "Imaginary part of the shift");
  if (multi)
  {
    n->delimiter(',');
    a->delimiter(',');
    b->delimiter(',');
  }
  else
  {
    n->expected(1);
    a->expected(1);
    b->expected(1);
  }
  cmd->add_option("--coef", o.coef, "Diffusion coefficient")
      ->check(CLI::IsMember({"const", "example2"}));
  cmd->add_option("--precond", o.precond, "Preconditioner (default: ideal for const, "
                                          "averaged for example2)")
      ->check(CLI::IsMember({"ideal", "averaged", "none"}));
  cmd->add_option("--tol", o.tol, "Relative reduction of the preconditioned residual");
  cmd->add_option("--max-iter", o.max_iter, "Iteration cap");
  cmd->add_option("--seed", o.seed, "Seed of the random exact solution");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--verify-spectrum-up-to", o.verify_up_to,
                  "Dense spectrum check for n up to this value (0 = off)");
  cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
  cmd->add_option("--jobs", o.jobs, "Rows solved in parallel");
}

int Emit(const std::string &text, const std::string &path)
{
  if (path.empty())
  {
    std::cout << text;
    if (!text.empty() && text.back() != '\n')
    {
      std::cout << '\n';
    }
    return 0;
  }
  std::ofstream f(path);
  if (!f)
  {
    std::cerr << "cannot open " << path << " for writing\n";
    return 2;
  }
  f << text;
  return 0;
}

int Fail(cslap_status status)
{
  std::cerr << "error (" << cslap_status_string(status) << "): " << cslap_last_error() << '\n';
  return 2;
}

int RunSweep(const CommonOptions &o, bool single)
{
  const bool example2 = o.coef == "example2";
  std::vector<std::pair<double, double>> shifts;
  if (o.alpha.empty() && o.beta.empty())
  {
    if (single)
    {
      shifts = {{100, 100}};
    }
    else
    {
      shifts = example2 ? kVariableShifts : kConstantShifts;
    }
  }
  else
  {
    if (o.alpha.size() != o.beta.size())
    {
      std::cerr << "--alpha and --beta must list the same number of values\n";
      return 2;
    }
    for (std::size_t i = 0; i < o.alpha.size(); i++)
    {
      shifts.emplace_back(o.alpha[i], o.beta[i]);
    }
  }
  nlohmann::json spec;
  spec["grid_sizes"] = o.n;
  spec["shifts"] = nlohmann::json::array();
  for (const auto &[a, b] : shifts)
  {
    spec["shifts"].push_back({a, b});
  }
  spec["coefficient"] = example2 ? "example2_poly" : "constant_one";
  spec["preconditioner"] = o.precond.empty() ? (example2 ? "averaged" : "ideal") : o.precond;
  spec["tol"] = o.tol;
  spec["max_iter"] = o.max_iter;
  spec["seed"] = o.seed;
  spec["verify_spectrum_up_to"] = o.verify_up_to;
  spec["jobs"] = o.jobs;

  char *output = nullptr;
  int all_ok = 0;
  const auto status =
      cslap_run_experiment(spec.dump().c_str(), o.format.c_str(), &output, &all_ok);
  if (status != CSLAP_OK)
  {
    return Fail(status);
  }
  const std::string text(output);
  cslap_string_free(output);
  if (const int rc = Emit(text, o.out); rc != 0)
  {
    return rc;
  }
  return all_ok ? 0 : 1;
}

int RunVerify(const CommonOptions &o)
{
  const double alpha = o.alpha.empty() ? 100.0 : o.alpha.front();
  const double beta = o.beta.empty() ? 100.0 : o.beta.front();
  const auto coef = o.coef == "example2" ? CSLAP_COEF_EXAMPLE2 : CSLAP_COEF_CONSTANT_ONE;
  cslap_problem *problem = nullptr;
  if (const auto s = cslap_problem_create(o.n.front(), 2, coef, alpha, beta, &problem);
      s != CSLAP_OK)
  {
    return Fail(s);
  }
  char *json = nullptr;
  int inside = 0;
  const auto s = cslap_verify_spectrum(problem, &json, &inside);
  cslap_problem_destroy(problem);
  if (s != CSLAP_OK)
  {
    return Fail(s);
  }
  std::string text(json);
  cslap_string_free(json);
  if (o.format == "text")
  {
    const auto j = nlohmann::json::parse(text);
    std::ostringstream os;
    const auto &iv = j["mu_bounds"]["interval"];
    os << "n=" << j["grid"]["n"] << " (alpha,beta)=(" << j["alpha"] << "," << j["beta"] << ")\n"
       << "branch:        " << j["branch"].get<std::string>() << '\n';
    if (iv.is_null())
    {
      os << "enclosure:     none (bound assumptions do not hold)\n";
    }
    else
    {
      os << "enclosure:     [" << iv[0][0] << ", " << iv[0][1] << "] U [" << iv[1][0] << ", "
         << iv[1][1] << "]\n";
    }
    os << "eigenvalues:   min " << j["eigenvalue_extremes"]["min"] << ", max negative "
       << j["eigenvalue_extremes"]["max_negative"] << ", min positive "
       << j["eigenvalue_extremes"]["min_positive"] << ", max "
       << j["eigenvalue_extremes"]["max"] << '\n';
    if (iv.is_null())
    {
      os << "all inside:    not certified\n";
    }
    else
    {
      os << "all inside:    " << (j["all_inside"].get<bool>() ? "yes" : "no")
         << " (max violation " << j["max_violation"] << ")\n";
    }
    text = os.str();
  }
  if (const int rc = Emit(text, o.out); rc != 0)
  {
    return rc;
  }
  return inside ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Absolute-value preconditioned MINRES for complex-shifted Laplacian systems"};
  app.require_subcommand(1);

  CommonOptions solve_opts, bench_opts, verify_opts;
  bench_opts.n = {15, 31, 63};
  verify_opts.n = {7};
  verify_opts.format = "json";

  auto *solve = app.add_subcommand("solve", "Solve one instance and report it as a row");
  AddCommon(solve, solve_opts, false);
  auto *bench = app.add_subcommand("bench", "Sweep grid sizes and shifts into a table");
  AddCommon(bench, bench_opts, true);
  auto *verify =
      app.add_subcommand("verify", "Dense spectrum certificate of the preconditioned system");
  AddCommon(verify, verify_opts, false);

  CLI11_PARSE(app, argc, argv);

  if (*solve)
  {
    return RunSweep(solve_opts, true);
  }
  if (*bench)
  {
    return RunSweep(bench_opts, false);
  }
  return RunVerify(verify_opts);
}
