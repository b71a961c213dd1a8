// mtum: estimate the exponential mean (or Pareto tail index) from grouped
// data by truncated moments, tabulate asymptotic efficiencies, and run
// seeded simulation studies.
//
// Exit codes: 0 success, 2 input error, 3 computation error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtum/boundary_spec.hpp"
#include "mtum/config.hpp"
#include "mtum/efficiency.hpp"
#include "mtum/error.hpp"
#include "mtum/estimator.hpp"
#include "mtum/grouped_data.hpp"
#include "mtum/mle.hpp"
#include "mtum/montecarlo.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kComputeError = 3;

struct InputError {
  std::string message;
};

std::string fmt(double x, int precision = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError{"cannot open '" + path + "'"};
  return in;
}

template <class F>
auto load(F&& f) {
  try {
    return f();
  } catch (const mtum::Error& e) {
    throw InputError{e.what()};
  }
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string data;
  bool raw = false;
  std::string cuts;
  std::optional<double> lower;
  std::optional<double> upper;
  std::string method = "mtum";
  std::optional<double> pareto_x0;
  std::optional<double> hint;
};

mtum::GroupedSample load_sample(const EstimateArgs& args) {
  auto in = open_input(args.data);
  if (!args.raw) return load([&] { return mtum::read_grouped_csv(in); });

  if (args.cuts.empty()) throw InputError{"--raw requires --cuts"};
  const auto boundaries = load([&] { return mtum::parse_boundary_spec(args.cuts); });
  std::optional<mtum::ParetoModel> pareto;
  if (args.pareto_x0) pareto = load([&] { return mtum::ParetoModel(1.0, *args.pareto_x0); });

  std::vector<double> values;
  std::string token;
  while (in >> token) {
    double y = 0.0;
    try {
      std::size_t used = 0;
      y = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InputError{"ParseError: bad value '" + token + "'"};
    }
    values.push_back(pareto ? load([&] { return mtum::pareto_to_exp(y, *pareto); }) : y);
  }
  return load([&] { return mtum::group_raw(values, boundaries); });
}

int run_estimate(const EstimateArgs& args) {
  const mtum::GroupedSample sample = load_sample(args);

  double theta = 0.0;
  double variance = 0.0;
  if (args.method == "mle") {
    const auto est = mtum::mle_estimate(sample);
    theta = est.theta_hat;
    variance = est.asymptotic_variance;
    std::cout << "method: mle\n"
              << "theta_hat: " << fmt(theta) << '\n'
              << "se: " << fmt(std::sqrt(variance)) << '\n'
              << "iterations: " << est.iterations << '\n'
              << "score: " << fmt(est.score) << '\n';
  } else {
    if (!args.lower || !args.upper) throw InputError{"--method mtum requires --t and --T"};
    const mtum::TruncationWindow window(sample.boundaries(), *args.lower, *args.upper);
    const auto est = mtum::solve(sample, window, args.hint);
    theta = est.theta_hat;
    variance = est.asymptotic_variance;
    std::cout << "method: mtum\n"
              << "window: [" << fmt(window.lower()) << ", " << fmt(window.upper()) << "]\n"
              << "mu_hat: " << fmt(est.mu_hat) << '\n'
              << "theta_hat: " << fmt(theta) << '\n'
              << "se: " << fmt(std::sqrt(variance)) << '\n'
              << "solver: " << mtum::to_string(est.solver) << '\n'
              << "iterations: " << est.iterations << '\n'
              << "residual: " << fmt(est.residual, 3) << '\n';
    if (est.non_monotone) {
      std::cout << "warning: bracket scan saw a non-monotone moment curve\n";
    }
  }
  std::cout << "n: " << sample.total() << '\n';
  if (args.pareto_x0) {
    std::cout << "alpha_hat: " << fmt(1.0 / theta) << '\n'
              << "alpha_se: " << fmt(std::sqrt(variance) / (theta * theta)) << '\n';
  }
  return 0;
}

// ---- group ----------------------------------------------------------------

int run_group(const EstimateArgs& args) {
  EstimateArgs raw = args;
  raw.raw = true;
  mtum::write_grouped_csv(std::cout, load_sample(raw));
  return 0;
}

// ---- are ------------------------------------------------------------------

struct AreArgs {
  double theta = 10.0;
  std::string cuts;
  std::string lowers;
  std::string uppers;
  std::string format = "text";
  std::string info_tail = "include";
  bool dump_gtt = false;
};

int run_are(const AreArgs& args) {
  const auto boundaries = load([&] { return mtum::parse_boundary_spec(args.cuts); });
  const auto lowers = load([&] { return mtum::parse_number_list(args.lowers); });
  const auto uppers = load([&] { return mtum::parse_number_list(args.uppers); });
  const auto model = load([&] { return mtum::ExponentialModel(args.theta); });
  const auto tail =
      args.info_tail == "exclude" ? mtum::TailTerm::Exclude : mtum::TailTerm::Include;

  if (args.dump_gtt) {
    std::cout << "t,T,theta,g_tT\n";
    for (double t : lowers) {
      for (double T : uppers) {
        std::optional<mtum::TruncationWindow> window;
        try {
          window.emplace(boundaries, t, T);
        } catch (const mtum::Error&) {
          continue;
        }
        for (int k = 0; k <= 200; ++k) {
          const double theta = args.theta * std::pow(10.0, -2.0 + 4.0 * k / 200.0);
          std::cout << fmt(t) << ',' << fmt(T) << ',' << fmt(theta, 17) << ','
                    << fmt(mtum::population_truncated_moment(mtum::ExponentialModel(theta),
                                                             *window),
                           17)
                    << '\n';
        }
      }
    }
    return 0;
  }

  const auto table = mtum::are_table(model, boundaries, lowers, uppers, tail);
  if (lowers.size() == 1 && uppers.size() == 1) {
    const auto& cell = table.cells[0][0];
    std::cout << (cell.are ? fmt(*cell.are, 17) : "-") << '\n';
  } else if (args.format == "csv") {
    mtum::write_table_csv(std::cout, table);
  } else {
    mtum::write_table_text(std::cout, table);
  }
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> batches;
  std::optional<std::uint64_t> reps;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  auto in = open_input(args.config);
  mtum::SimulationConfig config = load([&] { return mtum::parse_simulation_config(in); });
  if (args.seed) config.seed = *args.seed;
  if (args.threads) config.threads = *args.threads;
  if (args.batches) config.batches = *args.batches;
  if (args.reps) config.replications_per_batch = *args.reps;

  const auto report = mtum::run_study(config);
  if (args.out.empty()) {
    mtum::write_report_text(std::cout, report);
    return 0;
  }
  std::ofstream csv(args.out + ".csv");
  std::ofstream txt(args.out + ".txt");
  if (!csv || !txt) throw InputError{"cannot write '" + args.out + ".{csv,txt}'"};
  mtum::write_report_csv(csv, report);
  mtum::write_report_text(txt, report);
  std::cout << "wrote " << args.out << ".csv and " << args.out << ".txt (seed " << config.seed
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated-moment estimation for grouped exponential / Pareto data"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate theta from a grouped sample");
  estimate->add_option("--data", est.data, "Grouped CSV (lower,upper,count) or raw values")
      ->required();
  estimate->add_flag("--raw", est.raw, "Data file holds raw values; requires --cuts");
  estimate->add_option("--cuts", est.cuts, "Boundary spec for raw data, e.g. 0:5:30,inf");
  estimate->add_option("--t", est.lower, "Left truncation point");
  estimate->add_option("--T", est.upper, "Right truncation point");
  estimate->add_option("--method", est.method, "mtum or mle")
      ->check(CLI::IsMember({"mtum", "mle"}));
  estimate->add_option("--pareto-x0", est.pareto_x0,
                       "Pareto threshold; raw values are log(y/x0)-transformed and alpha is "
                       "reported");
  estimate->add_option("--hint", est.hint, "Starting theta for the solver");

  EstimateArgs grp;
  auto* group = app.add_subcommand("group", "Group raw values into a grouped CSV");
  group->add_option("--data", grp.data, "Raw values, whitespace separated")->required();
  group->add_option("--cuts", grp.cuts, "Boundary spec")->required();
  group->add_option("--pareto-x0", grp.pareto_x0, "Transform values by log(y/x0) first");

  AreArgs are;
  auto* are_cmd = app.add_subcommand("are", "Asymptotic relative efficiency vs grouped MLE");
  are_cmd->add_option("--theta", are.theta, "Exponential mean")->required();
  are_cmd->add_option("--cuts", are.cuts, "Boundary spec, e.g. 0:5:30,inf")->required();
  are_cmd->add_option("--t", are.lowers, "Left truncation points (list or ranges)")->required();
  are_cmd->add_option("--T", are.uppers, "Right truncation points (list or ranges)")->required();
  are_cmd->add_option("--format", are.format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  are_cmd->add_option("--info-tail", are.info_tail,
                      "Include the open group in the Fisher information")
      ->check(CLI::IsMember({"include", "exclude"}));
  are_cmd->add_flag("--dump-gtt", are.dump_gtt, "Emit the model truncated moment curve instead");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded simulation study");
  simulate->add_option("--config", sim.config, "JSON study config")->required();
  simulate->add_option("--seed", sim.seed, "Seed (default " +
                                               std::to_string(mtum::kDefaultSeed) +
                                               " unless the config sets one)");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--batches", sim.batches, "Override batch count");
  simulate->add_option("--reps", sim.reps, "Override replications per batch");
  simulate->add_option("--out", sim.out, "Output prefix for .csv and .txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*estimate) return run_estimate(est);
    if (*group) return run_group(grp);
    if (*are_cmd) return run_are(are);
    if (*simulate) return run_simulate(sim);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kInputError;
  } catch (const mtum::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kComputeError;
  }
  return 0;
}
