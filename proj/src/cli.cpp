// Copyright 2026 The Filtrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "filtrate/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "filtrate/analytic.hpp"
#include "filtrate/ensemble.hpp"
#include "filtrate/error.hpp"
#include "filtrate/json_io.hpp"
#include "filtrate/neumark.hpp"
#include "filtrate/povm.hpp"
#include "filtrate/rng.hpp"
#include "filtrate/simulate.hpp"
#include "filtrate/verify.hpp"

namespace filtrate {

namespace {

constexpr double kOracleAgreementTolerance = 1e-9;
constexpr double kFidelityIdentityTolerance = 1e-12;
constexpr double kBlockTolerance = 1e-10;

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level_from_env() {
  const char *raw = std::getenv("FILTRATE_LOG");
  if (raw == nullptr) {
    return LogLevel::kInfo;
  }
  const std::string value(raw);
  if (value == "quiet") {
    return LogLevel::kQuiet;
  }
  if (value == "debug") {
    return LogLevel::kDebug;
  }
  return LogLevel::kInfo;
}

class Logger {
 public:
  Logger(LogLevel level, std::ostream &err) : level_(level), err_(&err) {}

  void info(const std::string &msg) const {
    if (level_ >= LogLevel::kInfo) {
      *err_ << "[filtrate] " << msg << "\n";
    }
  }
  void debug(const std::string &msg) const {
    if (level_ >= LogLevel::kDebug) {
      *err_ << "[filtrate:debug] " << msg << "\n";
    }
  }

 private:
  LogLevel level_;
  std::ostream *err_;
};

/// Input problems that cannot even be located or addressed; exit code 2.
struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("file not found: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FilteringProblem load_problem(const std::string &path, const Logger &log) {
  FilteringProblem problem = parse_problem(read_file(path));
  std::ostringstream msg;
  msg << "loaded " << path << ": N=" << problem.n_states()
      << ", d=" << problem.dim();
  log.info(msg.str());
  return problem;
}

Json solution_json(const FilteringSolution &sol) {
  Json doc;
  doc["s"] = sol.s;
  doc["parallel_norm_sq"] = sol.parallel_norm_sq;
  doc["eta_lower"] = sol.eta_lower;
  doc["eta_upper"] = sol.eta_upper;
  doc["regime"] = to_string(sol.regime);
  doc["q_alpha"] = sol.q_alpha;
  doc["q_beta"] = sol.q_beta;
  doc["q_individual"] = sol.q_individual;
  doc["q_opt"] = sol.q_opt;
  doc["q_povm"] = sol.q_povm;
  doc["q_alpha_strategy"] = sol.q_alpha_strategy;
  doc["q_beta_strategy"] = sol.q_beta_strategy;
  return doc;
}

Json probability_rows_json(const std::vector<std::array<double, 3>> &rows) {
  Json out = Json::array();
  for (const std::array<double, 3> &row : rows) {
    out.push_back(Json::array({row[0], row[1], row[2]}));
  }
  return out;
}

Json povm_validation_json(const PovmValidation &v) {
  Json doc;
  doc["ok"] = v.ok;
  doc["completeness_residual"] = v.completeness_residual;
  doc["min_eigenvalue_pi1"] = v.min_eigenvalue_pi1;
  doc["min_eigenvalue_pi2"] = v.min_eigenvalue_pi2;
  doc["min_eigenvalue_pi0"] = v.min_eigenvalue_pi0;
  doc["unambiguity_alpha"] = v.unambiguity_alpha;
  doc["unambiguity_beta"] = v.unambiguity_beta;
  doc["q_alpha_residual"] = v.q_alpha_residual;
  doc["q_beta_residual"] = v.q_beta_residual;
  doc["outcome_probabilities"] = probability_rows_json(v.outcome_probabilities);
  doc["violations"] = v.violations;
  return doc;
}

Json dilation_report_json(const DilationReport &r) {
  Json doc;
  doc["ok"] = r.ok;
  doc["unitarity_residual"] = r.unitarity_residual;
  doc["consistency_residual"] = r.consistency_residual;
  doc["failure_gram_residual"] = r.failure_gram_residual;
  doc["alpha_leak"] = r.alpha_leak;
  doc["beta_leak"] = r.beta_leak;
  doc["gram_residual"] = r.gram_residual;
  doc["outcome_probabilities"] = probability_rows_json(r.outcome_probabilities);
  doc["violations"] = r.violations;
  return doc;
}

int cmd_analyze(const std::string &path, std::ostream &out, const Logger &log) {
  const FilteringProblem problem = load_problem(path, log);
  const FilteringSolution sol = solve(problem);
  log.debug("regime: " + to_string(sol.regime));
  out << dump17(solution_json(sol)) << "\n";
  return 0;
}

int cmd_povm(const std::string &path, std::ostream &out, const Logger &log) {
  const FilteringProblem problem = load_problem(path, log);
  const FilteringSolution sol = solve(problem);
  const Povm povm = build_povm(problem, sol);
  const PovmValidation validation = validate_povm(povm, problem, sol);

  Json doc;
  doc["pi1"] = matrix_json(povm.pi1);
  doc["pi2"] = matrix_json(povm.pi2);
  doc["pi0"] = matrix_json(povm.pi0);
  doc["c1"] = povm.c1;
  doc["c2"] = povm.c2;
  doc["validation"] = povm_validation_json(validation);
  out << dump17(doc) << "\n";
  if (!validation.ok) {
    log.info("povm validation failed");
  }
  return validation.ok ? 0 : 1;
}

int cmd_neumark(const std::string &path, std::ostream &out, const Logger &log) {
  const FilteringProblem problem = load_problem(path, log);
  const FilteringSolution sol = solve(problem);
  const Povm povm = build_povm(problem, sol);
  const NeumarkDilation dilation = build_dilation(problem, sol);
  const DilationReport report = verify_dilation(dilation, problem, povm);

  Json doc;
  doc["system_dim"] = static_cast<std::int64_t>(dilation.system_dim);
  doc["padded"] = dilation.padded;
  doc["ancilla_dim"] = dilation.ancilla_dim;
  doc["chi"] = dilation.chi;
  doc["u"] = matrix_json(dilation.u);
  doc["report"] = dilation_report_json(report);
  out << dump17(doc) << "\n";
  if (!report.ok) {
    log.info("dilation verification failed");
  }
  return report.ok ? 0 : 1;
}

int cmd_simulate(const std::string &path, std::uint64_t trials,
                 std::uint64_t seed, int chunks, std::ostream &out,
                 const Logger &log) {
  const FilteringProblem problem = load_problem(path, log);
  const FilteringSolution sol = solve(problem);
  const Povm povm = build_povm(problem, sol);

  const auto t0 = std::chrono::steady_clock::now();
  const SimulationReport report =
      run_simulation(problem, povm, trials, seed, chunks);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  log.debug("simulated " + std::to_string(trials) + " trials in " +
            std::to_string(elapsed.count()) + " ms");

  Json doc;
  doc["trials"] = report.trials;
  doc["seed"] = report.seed;
  doc["chunks"] = report.chunks;
  Json counts = Json::array();
  for (const std::array<std::uint64_t, 3> &row : report.counts) {
    counts.push_back(Json::array({row[0], row[1], row[2]}));
  }
  doc["counts"] = counts;
  doc["empirical_q"] = report.empirical_q;
  doc["empirical_error_rate"] = report.empirical_error_rate;
  doc["expected_q"] = report.expected_q;
  out << dump17(doc) << "\n";
  return 0;
}

struct VerifyOutcome {
  Json doc;
  bool ok;
  double oracle_deviation;
};

VerifyOutcome verify_problem(const FilteringProblem &problem) {
  const FilteringSolution sol = solve(problem);

  const OracleResult oracle = numeric_oracle(problem);
  const double deviation = std::abs(oracle.q_star - sol.q_opt);
  const bool oracle_ok = deviation <= kOracleAgreementTolerance;

  const MixedStateView view = mixed_state_view(problem);
  const double trace_product = (view.rho_alpha * view.rho_beta).trace().real();
  const bool mixed_ok =
      std::abs(trace_product - sol.s) <= kFidelityIdentityTolerance &&
      std::abs(view.fidelity * view.fidelity - sol.s) <=
          kFidelityIdentityTolerance;

  const RudolphReport rudolph = check_rudolph_bound(problem, sol);

  const auto n = static_cast<std::size_t>(problem.n_states());
  std::vector<double> q(n);
  std::vector<double> phases(n);
  q[0] = sol.q_alpha;
  phases[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    q[i] = sol.q_individual[i - 1];
    phases[i] = std::arg(problem.overlaps()[i - 1]);
  }
  const PositivityReport positivity = positivity_matrix(problem, q, phases);
  const bool positivity_ok =
      positivity.psd && positivity.max_first_row_offdiag <= kBlockTolerance;

  const Povm povm = build_povm(problem, sol);
  const PovmValidation povm_report = validate_povm(povm, problem, sol);
  const NeumarkDilation dilation = build_dilation(problem, sol);
  const DilationReport dilation_report =
      verify_dilation(dilation, problem, povm);

  VerifyOutcome outcome;
  outcome.oracle_deviation = deviation;
  outcome.ok = oracle_ok && mixed_ok && rudolph.ok && positivity_ok &&
               povm_report.ok && dilation_report.ok;

  Json joracle;
  joracle["q1_star"] = oracle.q1_star;
  joracle["q_star"] = oracle.q_star;
  joracle["q_opt"] = sol.q_opt;
  joracle["deviation"] = deviation;
  joracle["ok"] = oracle_ok;
  outcome.doc["oracle"] = joracle;

  Json jmixed;
  jmixed["s"] = sol.s;
  jmixed["trace_product"] = trace_product;
  jmixed["fidelity"] = view.fidelity;
  jmixed["ok"] = mixed_ok;
  outcome.doc["mixed_state"] = jmixed;

  Json jrudolph;
  jrudolph["bound"] = rudolph.bound;
  jrudolph["q_opt"] = rudolph.q_opt;
  jrudolph["in_povm_window"] = rudolph.in_povm_window;
  jrudolph["ok"] = rudolph.ok;
  outcome.doc["rudolph"] = jrudolph;

  Json jpositivity;
  jpositivity["min_eigenvalue"] = positivity.min_eigenvalue;
  jpositivity["max_first_row_offdiag"] = positivity.max_first_row_offdiag;
  jpositivity["ok"] = positivity_ok;
  outcome.doc["positivity"] = jpositivity;

  outcome.doc["povm"] = povm_validation_json(povm_report);
  outcome.doc["neumark"] = dilation_report_json(dilation_report);
  outcome.doc["ok"] = outcome.ok;
  return outcome;
}

int cmd_verify(const std::string &path, std::ostream &out, const Logger &log) {
  const FilteringProblem problem = load_problem(path, log);
  const VerifyOutcome outcome = verify_problem(problem);
  out << dump17(outcome.doc) << "\n";
  if (!outcome.ok) {
    log.info("verification failed");
  }
  return outcome.ok ? 0 : 1;
}

int cmd_verify_random(int count, std::uint64_t seed, std::ostream &out,
                      const Logger &log) {
  std::mt19937_64 rng(seed);
  double max_deviation = 0.0;
  int failures = 0;
  Json failed_indices = Json::array();
  for (int k = 0; k < count; ++k) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 4);
    const int n_states = 2 + static_cast<int>(rng() % 5);
    const FilteringProblem problem = random_problem(rng, dim, n_states);
    const VerifyOutcome outcome = verify_problem(problem);
    max_deviation = std::max(max_deviation, outcome.oracle_deviation);
    if (!outcome.ok) {
      ++failures;
      if (failed_indices.size() < 5) {
        failed_indices.push_back(k);
      }
    }
  }
  log.info("verified " + std::to_string(count) + " random problems, " +
           std::to_string(failures) + " failures");

  Json doc;
  doc["problems"] = count;
  doc["seed"] = seed;
  doc["max_oracle_deviation"] = max_deviation;
  doc["failures"] = failures;
  doc["failed_indices"] = failed_indices;
  doc["ok"] = failures == 0;
  out << dump17(doc) << "\n";
  return failures == 0 ? 0 : 1;
}

FilteringProblem with_eta1(const FilteringProblem &problem, double eta1) {
  std::vector<double> priors;
  priors.reserve(static_cast<std::size_t>(problem.n_states()));
  priors.push_back(eta1);
  for (double beta : problem.beta_priors()) {
    priors.push_back((1.0 - eta1) * beta);
  }
  return FilteringProblem(problem.states(), std::move(priors));
}

// Rescales every |<psi_1|psi_j>| by t, moving each beta state along the
// geodesic between its component parallel to psi_1 and the orthogonal rest.
FilteringProblem with_overlap_scale(const FilteringProblem &problem, double t) {
  const Eigen::Index d = problem.dim();
  if (d < 2) {
    throw Error("overlap_scale sweep requires dimension >= 2");
  }
  const CVector &psi1 = problem.states().front().amplitudes();

  std::vector<PureState> states;
  states.reserve(static_cast<std::size_t>(problem.n_states()));
  states.push_back(problem.states().front());
  for (int j = 1; j < problem.n_states(); ++j) {
    const CVector &psi = problem.states()[static_cast<std::size_t>(j)].amplitudes();
    const Cplx a = psi1.dot(psi);
    const CVector perp = psi - a * psi1;
    const double perp_norm = perp.norm();
    CVector direction;
    if (perp_norm > 1e-8) {
      direction = perp / perp_norm;
    } else {
      // The state is parallel to psi_1; scale along the first canonical
      // direction with a healthy component orthogonal to psi_1.
      for (Eigen::Index k = 0; k < d; ++k) {
        CVector cand = CVector::Zero(d);
        cand(k) = 1.0;
        cand -= psi1.dot(cand) * psi1;
        if (cand.norm() > 0.5) {
          direction = cand / cand.norm();
          break;
        }
      }
    }
    const Cplx scaled = t * a;
    const double rest = std::sqrt(std::max(0.0, 1.0 - std::norm(scaled)));
    states.emplace_back(CVector(scaled * psi1 + rest * direction));
  }
  return FilteringProblem(std::move(states), problem.priors());
}

int cmd_sweep(const std::string &path, const std::string &parameter,
              double start, double stop, int steps, std::ostream &out,
              const Logger &log) {
  if (steps < 2) {
    throw UsageError("steps must be >= 2");
  }
  if (!(start < stop)) {
    throw UsageError("start must be < stop");
  }
  if (parameter == "eta1") {
    if (!(start > 0.0 && stop < 1.0)) {
      throw UsageError("eta1 sweep range must lie inside (0, 1)");
    }
  } else if (parameter == "overlap_scale") {
    if (!(start >= 0.0 && stop <= 1.0)) {
      throw UsageError("overlap_scale sweep range must lie inside [0, 1]");
    }
  } else {
    throw UsageError("unknown sweep parameter: " + parameter);
  }

  const FilteringProblem base = load_problem(path, log);
  out << parameter << ",regime,q_povm,q_alpha_strategy,q_beta_strategy,q_opt\n";
  for (int i = 0; i < steps; ++i) {
    const double t = start + (stop - start) * i / (steps - 1);
    const FilteringProblem point =
        parameter == "eta1" ? with_eta1(base, t) : with_overlap_scale(base, t);
    const FilteringSolution sol = solve(point);
    out << format17(t) << ',' << to_string(sol.regime) << ','
        << format17(sol.q_povm) << ',' << format17(sol.q_alpha_strategy) << ','
        << format17(sol.q_beta_strategy) << ',' << format17(sol.q_opt) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream &out,
            std::ostream &err) {
  const Logger log(log_level_from_env(), err);

  CLI::App app{"Optimal unambiguous quantum state filtering", "filtrate"};
  app.require_subcommand(1);

  std::string problem_path;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  int chunks = 1;
  int random_count = 0;
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  CLI::App *analyze_cmd = app.add_subcommand(
      "analyze", "Closed-form optimal solution for a problem file");
  analyze_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();

  CLI::App *povm_cmd =
      app.add_subcommand("povm", "Detection operators and their validation");
  povm_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();

  CLI::App *neumark_cmd = app.add_subcommand(
      "neumark", "Unitary dilation on system x 3-level ancilla");
  neumark_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();

  CLI::App *simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo measurement simulation");
  simulate_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  simulate_cmd->add_option("--trials", trials, "number of trials")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", seed, "base RNG seed")
      ->capture_default_str();
  simulate_cmd->add_option("--chunks", chunks, "independent trial chunks")
      ->capture_default_str();

  CLI::App *verify_cmd = app.add_subcommand(
      "verify", "Cross-check the analytic solution with numeric oracles");
  verify_cmd->add_option("problem", problem_path, "problem JSON file");
  verify_cmd->add_option("--random", random_count,
                         "verify this many random problems instead");
  verify_cmd->add_option("--seed", seed, "seed for --random")
      ->capture_default_str();

  CLI::App *sweep_cmd =
      app.add_subcommand("sweep", "CSV of branch values over a parameter grid");
  sweep_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  sweep_cmd->add_option("--parameter", parameter, "eta1 or overlap_scale")
      ->required();
  sweep_cmd->add_option("--start", start, "grid start")->required();
  sweep_cmd->add_option("--stop", stop, "grid stop")->required();
  sweep_cmd->add_option("--steps", steps, "grid points")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(analyze_cmd)) {
      return cmd_analyze(problem_path, out, log);
    }
    if (app.got_subcommand(povm_cmd)) {
      return cmd_povm(problem_path, out, log);
    }
    if (app.got_subcommand(neumark_cmd)) {
      return cmd_neumark(problem_path, out, log);
    }
    if (app.got_subcommand(simulate_cmd)) {
      return cmd_simulate(problem_path, trials, seed, chunks, out, log);
    }
    if (app.got_subcommand(verify_cmd)) {
      if (!problem_path.empty()) {
        return cmd_verify(problem_path, out, log);
      }
      if (random_count > 0) {
        return cmd_verify_random(random_count, seed, out, log);
      }
      err << "error: verify needs a problem file or --random K\n";
      return 2;
    }
    if (app.got_subcommand(sweep_cmd)) {
      return cmd_sweep(problem_path, parameter, start, stop, steps, out, log);
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace filtrate
