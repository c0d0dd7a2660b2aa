// Copyright 2026 The riskknap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riskknap/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "riskknap/bench.hpp"
#include "riskknap/exact_dp.hpp"
#include "riskknap/genetic.hpp"
#include "riskknap/greedy.hpp"
#include "riskknap/instgen.hpp"
#include "riskknap/io.hpp"
#include "riskknap/oracle.hpp"
#include "riskknap/rng.hpp"

namespace riskknap::cli {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

gen::Range parse_range(const std::string& flag, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParamError(flag + ": expected lo:hi, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    const double lo = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const double hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParamError(flag + ": expected lo:hi, got '" + text + "'");
  }
}

Money as_money(const std::string& flag, double v) {
  if (v != static_cast<double>(static_cast<Money>(v))) {
    throw ParamError(flag + ": bounds must be integers");
  }
  return static_cast<Money>(v);
}

struct SolveOptions {
  std::string instance;
  std::string algo = "proj";
  std::optional<std::uint64_t> seed;
  std::string ga_config;
  std::optional<std::size_t> ga_pop, ga_limit, ga_mutation_bits;
  std::optional<int> ga_two_point, ga_elitism, ga_good_fraction;
  bool ga_parallel = false;
  bool curve = false;
  bool greedy_allow_empty = false;
  bool sort_by_cost = false;
};

struct GenOptions {
  std::optional<std::size_t> threats, controls, affected;
  std::optional<Money> gcd;
  std::string cost, loss, freq, survival, pinit;
  std::optional<std::uint64_t> seed;
  std::string output;
};

struct BenchOptions {
  std::string spec;
  std::string curve_instance;
  std::string output;
  std::optional<std::size_t> workers;
  bool mask_timing = false;
};

struct VerifyOptions {
  std::string instance;
  std::string utility = "sqrt:0";
  std::optional<double> w0;
  std::size_t alpha_steps = 10;
  std::optional<std::size_t> batch;
  std::optional<std::uint64_t> seed;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text(path, text);
  }
}

int solve_cmd(const SolveOptions& o, std::ostream& out) {
  const Instance instance = io::load_instance(o.instance);
  std::optional<std::uint64_t> seed_out;
  Solution solution;
  if (o.algo == "dp" || o.algo == "proj") {
    dp::DpConfig config;
    config.dominance =
        o.algo == "dp" ? dp::Dominance::kPareto : dp::Dominance::kProjection;
    config.sort_by_cost = o.sort_by_cost;
    config.record_curve = o.curve;
    solution = dp::solve(instance, config);
  } else if (o.algo == "greedy") {
    solution = greedy::solve(instance,
                             {.keep_last_control = !o.greedy_allow_empty});
  } else if (o.algo == "brute") {
    solution = oracle::brute_force(instance, kernels::Exec::kSerial);
  } else {
    ga::GaSettings s;
    if (!o.ga_config.empty()) {
      s = io::ga_settings_from_json(io::read_json(o.ga_config));
    }
    if (o.ga_pop) s.population_size = *o.ga_pop;
    if (o.ga_limit) s.limit = *o.ga_limit;
    if (o.ga_mutation_bits) s.mutation_bits = *o.ga_mutation_bits;
    if (o.ga_two_point) s.two_point_pct = *o.ga_two_point;
    if (o.ga_elitism) s.elitism_pct = *o.ga_elitism;
    if (o.ga_good_fraction) s.good_fraction_pct = *o.ga_good_fraction;
    if (o.ga_parallel) s.parallel_eval = true;
    s.seed = resolve_seed(o.seed);
    seed_out = s.seed;
    solution = ga::solve(instance, s);
  }
  if (o.curve && solution.curve.empty()) {
    solution.curve = bench::expenditure_curve(instance);
  }
  out << io::dump(io::solution_to_json(instance, solution, o.algo, seed_out));
  return kOk;
}

int gen_cmd(const GenOptions& o, std::ostream& out, std::ostream& err) {
  gen::GenParams p;
  p.n_k = *o.controls;  // required by the parser
  if (o.threats) p.n_t = *o.threats;
  p.threats_per_control = o.affected ? *o.affected : p.n_t;
  if (o.gcd) p.gcd = *o.gcd;
  if (!o.cost.empty()) {
    const auto r = parse_range("--cost", o.cost);
    p.cost_min = as_money("--cost", r.lo);
    p.cost_max = as_money("--cost", r.hi);
  } else if (o.gcd) {
    p.cost_min = p.gcd;
    p.cost_max = 10 * p.gcd;
  }
  if (!o.loss.empty()) p.loss_range = parse_range("--loss", o.loss);
  if (!o.freq.empty()) p.frequency_range = parse_range("--freq", o.freq);
  if (!o.survival.empty()) {
    p.survival_range = parse_range("--survival", o.survival);
  }
  if (!o.pinit.empty()) p.p_init_range = parse_range("--pinit", o.pinit);
  p.seed = resolve_seed(o.seed);
  if (const auto bad = gen::validate(p); !bad.empty()) {
    std::ostringstream msg;
    msg << "invalid generator parameters:";
    for (const auto& v : bad) msg << "\n  " << v.field << ": " << v.rule;
    throw ParamError(msg.str());
  }
  const gen::GenResult result = gen::generate(p);
  auto echo = io::gen_params_to_json(p);
  echo["gcd_exact"] = result.gcd_exact;
  echo["attempts"] = result.attempts;
  err << "gen: " << echo.dump() << '\n';
  emit(o.output, io::dump(io::instance_to_json(result.instance)), out);
  return kOk;
}

int bench_cmd(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.curve_instance.empty()) {
    const Instance instance = io::load_instance(o.curve_instance);
    emit(o.output, bench::format_curve(bench::expenditure_curve(instance)),
         out);
    return kOk;
  }
  if (o.spec.empty()) {
    throw ParamError("bench: give a battery spec or --curve INSTANCE");
  }
  bench::BatterySpec spec;
  try {
    spec = bench::parse_battery_spec(io::read_json(o.spec));
  } catch (const ParseError& e) {
    throw ParamError(e.what());
  }
  if (o.workers) spec.workers = *o.workers;
  if (o.mask_timing) spec.mask_timing = true;
  const bench::BatteryReport report = bench::run_battery(spec);
  for (const auto& cell : report.cells) {
    err << bench::to_string(spec.dim) << ' '
        << bench::format_cell_summary(cell) << '\n';
  }
  emit(o.output, report.csv, out);
  return kOk;
}

void print_agreement_header(std::ostream& out) {
  out << "solver agreement (expenditure)\n"
      << "  instance            brute            pareto           "
         "projection       status\n";
}

void print_agreement(const AgreementRow& r, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "  %-18s  %-15s  %-15s  %-15s  %s\n",
                r.label.c_str(),
                r.brute ? fixed(*r.brute).c_str() : "skipped",
                fixed(r.pareto).c_str(), fixed(r.projection).c_str(),
                r.agree ? "ok" : "MISMATCH");
  out << line;
}

int verify_cmd(const VerifyOptions& o, const SolverSet& solvers,
               std::ostream& out) {
  bool ok = true;
  if (o.batch) {
    const std::uint64_t seed = resolve_seed(o.seed);
    const auto batch = small_batch(*o.batch, seed);
    print_agreement_header(out);
    std::size_t agreed = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto row =
          check_agreement("#" + std::to_string(i), batch[i], solvers);
      print_agreement(row, out);
      agreed += row.agree ? 1 : 0;
    }
    ok = agreed == batch.size();
    out << agreed << " of " << batch.size() << " instances agree\n";
  } else {
    if (o.instance.empty()) {
      throw ParamError("verify: give an instance path or --batch N");
    }
    if (o.alpha_steps < 1) throw ParamError("verify: --alpha-steps must be >= 1");
    const Instance instance = io::load_instance(o.instance);
    const oracle::UtilitySpec utility = oracle::parse_utility(o.utility);
    print_agreement_header(out);
    const auto row = check_agreement(o.instance, instance, solvers);
    print_agreement(row, out);
    ok = row.agree;

    const Solution best = solvers.projection(instance);
    std::vector<double> alphas(o.alpha_steps + 1);
    for (std::size_t s = 0; s <= o.alpha_steps; ++s) {
      alphas[s] = static_cast<double>(s) / static_cast<double>(o.alpha_steps);
    }
    const double w0 = o.w0 ? *o.w0 : safe_wealth(instance, best.x_star);
    const auto report = oracle::verify_full_insurance(
        instance, best.selection, best.x_star, w0, utility, alphas);
    out << "full insurance sweep (utility " << utility.name() << ", w0 "
        << fixed(w0, 2) << ", x " << best.x_star << ")\n"
        << "  alpha   E[U]\n";
    for (std::size_t s = 0; s < report.alphas.size(); ++s) {
      out << "  " << fixed(report.alphas[s], 3) << "   "
          << fixed(report.values[s], 9) << '\n';
    }
    out << "  max at alpha=1: " << (report.max_at_full ? "yes" : "no")
        << ", non-decreasing: " << (report.non_decreasing ? "yes" : "no")
        << '\n';
    ok = ok && report.max_at_full && report.non_decreasing;
  }
  out << "result: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

SolverSet default_solvers() {
  SolverSet s;
  s.brute = [](const Instance& i) {
    return oracle::brute_force(i, kernels::Exec::kSerial);
  };
  s.pareto = [](const Instance& i) {
    dp::DpConfig c;
    c.dominance = dp::Dominance::kPareto;
    return dp::solve(i, c);
  };
  s.projection = [](const Instance& i) {
    dp::DpConfig c;
    c.dominance = dp::Dominance::kProjection;
    return dp::solve(i, c);
  };
  return s;
}

AgreementRow check_agreement(const std::string& label,
                             const Instance& instance,
                             const SolverSet& solvers) {
  AgreementRow row;
  row.label = label;
  if (instance.num_controls() <= oracle::kMaxBruteForceControls) {
    row.brute = solvers.brute(instance).expenditure;
  }
  row.pareto = solvers.pareto(instance).expenditure;
  row.projection = solvers.projection(instance).expenditure;
  row.agree = approx_equal(row.pareto, row.projection) &&
              (!row.brute || (approx_equal(*row.brute, row.pareto) &&
                              approx_equal(*row.brute, row.projection)));
  return row;
}

std::vector<Instance> small_batch(std::size_t count, std::uint64_t seed) {
  static constexpr Money kSteps[] = {10, 20, 40};
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(Rng::derive(seed, i));
    gen::GenParams p;
    p.n_t = static_cast<std::size_t>(rng.uniform_int(1, 6));
    p.n_k = static_cast<std::size_t>(rng.uniform_int(1, 12));
    p.gcd = kSteps[rng.uniform_int(0, 2)];
    p.cost_min = p.gcd;
    p.cost_max = p.gcd * rng.uniform_int(2, 10);
    p.threats_per_control =
        static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(p.n_t)));
    p.seed = rng.next();
    Instance inst = gen::generate(p).instance;
    if (i % 4 == 3) {
      Money all = 0;
      for (const auto& c : inst.controls) all += c.cost;
      inst.budget_cap = all / 2;
    }
    out.push_back(std::move(inst));
  }
  return out;
}

double safe_wealth(const Instance& instance, Money x) {
  double w = static_cast<double>(x) + 1.0;
  for (std::size_t i = 0; i < instance.num_threats(); ++i) {
    const double mean = instance.frequencies[i] * instance.p_init[i];
    const auto pmf = oracle::truncated_poisson(mean);
    w += instance.losses[i] * (static_cast<double>(pmf.size()) + mean);
  }
  return w;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RISKKNAP_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ParamError("RISKKNAP_SEED is not an integer");
    return v;
  }
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err, const SolverSet* solvers) {
  CLI::App app{"Security investment optimizer", "riskknap"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("instance", so.instance, "Instance JSON")->required();
  solve->add_option("--algo", so.algo, "dp, proj, greedy, ga or brute")
      ->check(CLI::IsMember({"dp", "proj", "greedy", "ga", "brute"}));
  solve->add_option("--seed", so.seed, "GA seed (falls back to RISKKNAP_SEED)");
  solve->add_option("--ga-config", so.ga_config, "GA settings JSON");
  solve->add_option("--ga-pop", so.ga_pop);
  solve->add_option("--ga-limit", so.ga_limit);
  solve->add_option("--ga-mutation-bits", so.ga_mutation_bits);
  solve->add_option("--ga-two-point", so.ga_two_point, "percent");
  solve->add_option("--ga-elitism", so.ga_elitism, "percent");
  solve->add_option("--ga-good-fraction", so.ga_good_fraction, "percent");
  solve->add_flag("--ga-parallel", so.ga_parallel,
                  "Evaluate GA generations with OpenMP");
  solve->add_flag("--curve", so.curve, "Attach the expenditure curve");
  solve->add_flag("--greedy-allow-empty", so.greedy_allow_empty,
                  "Let greedy remove the last control");
  solve->add_flag("--sort-by-cost", so.sort_by_cost,
                  "DP processes controls by ascending cost");

  GenOptions go;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--controls", go.controls)->required();
  gen->add_option("--threats", go.threats);
  gen->add_option("--affected", go.affected, "threats touched per control");
  gen->add_option("--gcd", go.gcd);
  gen->add_option("--cost", go.cost, "min:max");
  gen->add_option("--loss", go.loss, "lo:hi");
  gen->add_option("--freq", go.freq, "lo:hi");
  gen->add_option("--survival", go.survival, "lo:hi");
  gen->add_option("--pinit", go.pinit, "lo:hi");
  gen->add_option("--seed", go.seed);
  gen->add_option("-o,--output", go.output);

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Run a battery or emit a curve");
  bench->add_option("spec", bo.spec, "Battery spec JSON");
  bench->add_option("--curve", bo.curve_instance, "Instance for curve output");
  bench->add_option("-o,--output", bo.output);
  bench->add_option("--workers", bo.workers);
  bench->add_flag("--mask-timing", bo.mask_timing);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Cross-check exact solvers");
  verify->add_option("instance", vo.instance);
  verify->add_option("--utility", vo.utility,
                     "linear, log_shifted:s, sqrt:s or exponential_crra:a");
  verify->add_option("--w0", vo.w0, "initial wealth");
  verify->add_option("--alpha-steps", vo.alpha_steps);
  verify->add_option("--batch", vo.batch, "number of generated instances");
  verify->add_option("--seed", vo.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "riskknap: " << e.what() << '\n';
    return kInvalidInput;
  }

  const SolverSet defaults = default_solvers();
  try {
    if (*solve) return solve_cmd(so, out);
    if (*gen) return gen_cmd(go, out, err);
    if (*bench) return bench_cmd(bo, out, err);
    return verify_cmd(vo, solvers ? *solvers : defaults, out);
  } catch (const ParseError& e) {
    err << "riskknap: " << e.what() << '\n';
    return kParseFailure;
  } catch (const SizeGuardError& e) {
    err << "riskknap: " << e.what() << '\n';
    return kGuardTripped;
  } catch (const Error& e) {
    // Validation, parameter, selection and domain errors.
    err << "riskknap: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "riskknap: internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace riskknap::cli
