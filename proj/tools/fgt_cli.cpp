// fgt: FGT poverty-index estimation from income samples.
//
// Subcommands: estimate, simulate, efficiency, kernel-info.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fgt/csv.hpp"
#include "fgt/density.hpp"
#include "fgt/distribution.hpp"
#include "fgt/errors.hpp"
#include "fgt/estimators.hpp"
#include "fgt/json_writer.hpp"
#include "fgt/kernel.hpp"
#include "fgt/report.hpp"
#include "fgt/simulation.hpp"

namespace {

namespace fs = std::filesystem;

// Relative --out paths resolve against FGT_OUTPUT_DIR when it is set.
fs::path resolve_out_path(const std::string& out)
{
  fs::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("FGT_OUTPUT_DIR"); dir && *dir)
      path = fs::path(dir) / path;
  }
  return path;
}

void write_out_file(const std::string& out, const std::string& payload)
{
  const fs::path path = resolve_out_path(out);
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw fgt::IoError("cannot write output file '" + path.string() + "'");
  file << payload;
}

// --out files follow their extension (.json/.csv/.txt) over --format, so
// `--out report.json` always lands as JSON.
std::string out_format(const std::string& out, const std::string& format)
{
  const std::string ext = fs::path(out).extension().string();
  if (ext == ".json")
    return "json";
  if (ext == ".csv")
    return "csv";
  if (ext == ".txt")
    return "text";
  return format;
}

std::vector<double> parse_double_list(const std::vector<std::string>& tokens,
                                      const std::string& flag)
{
  std::vector<double> values;
  for (const auto& token : tokens) {
    std::stringstream ss(token);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty())
        continue;
      try {
        values.push_back(std::stod(piece));
      } catch (const std::exception&) {
        throw fgt::InvalidArgumentError("cannot parse '" + piece + "' for " + flag);
      }
    }
  }
  return values;
}

struct DistFlags {
  std::string name = "uniform";
  double x0 = 0.02;
  double beta = 0.2;
  double upper = 1.0;

  void attach(CLI::App* cmd)
  {
    cmd->add_option("--dist", name, "Income distribution: uniform or pareto")
      ->check(CLI::IsMember({ "uniform", "pareto" }));
    cmd->add_option("--x0", x0, "Pareto scale (support lower end)");
    cmd->add_option("--beta", beta, "Pareto shape");
    cmd->add_option("--upper", upper, "Pareto truncation upper end");
  }

  fgt::DistributionSpec spec() const
  {
    return name == "pareto" ? fgt::DistributionSpec::pareto(x0, beta, upper)
                            : fgt::DistributionSpec::uniform();
  }
};

std::string format_double(double v)
{
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string input;
  bool header = false;
  std::size_t column = 0;
  std::string delimiter;
  bool strict = false;
  double z = 0.0;
  double alpha = 0.0;
  std::string estimator = "bias-reduced";
  std::string bandwidth_rule = "nlogn";
  double fixed_h = 0.0;
  double sensitivity = 0.5;
  double pilot_h = 0.0;
  std::string kernel = "gaussian";
  std::string format = "text";
  std::string out;
};

int run_estimate(const EstimateArgs& args)
{
  fgt::CsvOptions csv;
  csv.header = args.header;
  csv.column = args.column;
  if (!args.delimiter.empty())
    csv.delimiter = args.delimiter[0];
  const fgt::IncomeFile file = fgt::load_income_file(args.input, csv);
  const fgt::IncomeSample sample = fgt::to_sample(file);

  const fgt::FgtParams params(args.z, args.alpha);
  const fgt::Kernel kernel = fgt::kernel_by_name(args.kernel);
  const fgt::EstimatorId id = fgt::estimator_from_string(args.estimator);

  fgt::BandwidthRule rule = fgt::bandwidth_rule_from_string(args.bandwidth_rule, args.fixed_h);
  if (args.fixed_h > 0.0)
    rule = fgt::BandwidthRule::fixed(args.fixed_h);

  fgt::FgtEstimate estimate;
  double h = 0.0;
  std::vector<std::string> notes;
  if (id == fgt::EstimatorId::empirical) {
    estimate = fgt::empirical_fgt(sample, params);
  } else {
    h = rule.resolve(sample.size());
    switch (id) {
      case fgt::EstimatorId::classical:
        estimate = fgt::classical_kernel_fgt(sample, kernel, h, params);
        break;
      case fgt::EstimatorId::bias_reduced:
        estimate = fgt::bias_reduced_fgt(sample, kernel, h, params);
        break;
      case fgt::EstimatorId::adaptive: {
        const double pilot = args.pilot_h > 0.0 ? args.pilot_h : h;
        const fgt::LocalFactors factors =
          fgt::local_bandwidth_factors(sample, kernel, pilot, args.sensitivity);
        estimate = fgt::adaptive_kernel_fgt(sample, kernel, h, factors, params);
        break;
      }
      default: break;
    }
    if (const std::string note = fgt::bandwidth_regime_note(rule, sample.size()); !note.empty())
      notes.push_back(note);
  }
  for (const auto& err : file.row_errors)
    notes.push_back("row error (line " + std::to_string(err.line) + "): " + err.message);

  const auto render = [&](const std::string& format) -> std::string {
    std::string payload;
    if (format == "json") {
      fgt::JsonWriter w;
      w.begin_object();
      w.kv("schema", "fgt-estimate/1");
      w.key("config");
      w.begin_object();
      w.kv("input", args.input);
      w.kv("header", args.header);
      w.kv("column", args.column);
      w.kv("strict", args.strict);
      w.kv("z", params.z);
      w.kv("alpha", params.alpha);
      w.kv("estimator", fgt::to_string(id));
      w.kv("kernel", args.kernel);
      w.kv("bandwidth_rule", rule.name());
      if (id != fgt::EstimatorId::empirical)
        w.kv("bandwidth", h);
      if (id == fgt::EstimatorId::adaptive) {
        w.kv("sensitivity", args.sensitivity);
        w.kv("pilot_bandwidth", args.pilot_h > 0.0 ? args.pilot_h : h);
      }
      w.end_object();
      w.key("input_rows");
      w.begin_object();
      w.kv("used", sample.size());
      w.kv("errors", file.row_errors.size());
      w.end_object();
      w.kv("value", estimate.value);
      if (estimate.grid_cells)
        w.kv("grid_cells", *estimate.grid_cells);
      w.kv("n", estimate.n);
      w.key("warnings");
      w.begin_array();
      for (const auto& warning : estimate.warnings)
        w.value(warning);
      w.end_array();
      w.key("notes");
      w.begin_array();
      for (const auto& note : notes)
        w.value(note);
      w.end_array();
      w.end_object();
      payload = w.take();
      payload += "\n";
    } else if (format == "csv") {
      std::ostringstream os;
      os << "estimator,value,n,z,alpha,bandwidth,grid_cells\n";
      os << fgt::to_string(id) << "," << std::setprecision(17) << estimate.value << ","
         << estimate.n << "," << params.z << "," << params.alpha << ",";
      if (estimate.bandwidth)
        os << *estimate.bandwidth;
      os << ",";
      if (estimate.grid_cells)
        os << *estimate.grid_cells;
      os << "\n";
      payload = os.str();
    } else {
      std::ostringstream os;
      os << "estimator    " << fgt::to_string(id) << "\n";
      os << "value        " << format_double(estimate.value) << "\n";
      os << "n            " << estimate.n << "\n";
      os << "z            " << format_double(params.z) << "\n";
      os << "alpha        " << format_double(params.alpha) << "\n";
      if (estimate.bandwidth)
        os << "bandwidth    " << format_double(*estimate.bandwidth) << " (rule: " << rule.name()
           << ")\n";
      if (estimate.grid_cells)
        os << "grid_cells   " << *estimate.grid_cells << "\n";
      for (const auto& warning : estimate.warnings)
        os << "warning      " << warning << "\n";
      for (const auto& note : notes)
        os << "note         " << note << "\n";
      payload = os.str();
    }
    return payload;
  };

  std::cout << render(args.format);
  if (!args.out.empty())
    write_out_file(args.out, render(out_format(args.out, args.format)));

  if (args.strict && !file.row_errors.empty()) {
    std::cerr << "error: " << file.row_errors.size() << " row error(s) with --strict\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config_path;
  bool paper_table = false;
  DistFlags dist;
  std::size_t n = 1000;
  std::size_t reps = 50;
  std::uint64_t seed = 1;
  std::vector<std::string> z_tokens;
  std::vector<std::string> alpha_tokens;
  std::vector<std::string> estimator_tokens;
  std::string bandwidth_rule = "nlogn";
  double fixed_h = 0.0;
  double sensitivity = 0.5;
  std::string kernel = "gaussian";
  unsigned threads = 0;
  std::string format = "text";
  std::string out;
};

int run_simulate(const SimulateArgs& args, const CLI::App* cmd)
{
  fgt::SimulationConfig cfg;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in)
      throw fgt::IoError("cannot open config file '" + args.config_path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    cfg = fgt::simulation_config_from_json(body.str());
  } else if (args.paper_table) {
    cfg = fgt::SimulationConfig::paper_table_preset(args.seed);
  } else {
    cfg.distribution = args.dist.spec();
    cfg.z_grid = { 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7 };
    cfg.alpha_grid = { 0.0, 1.0, 2.0 };
    cfg.estimators = { fgt::EstimatorId::empirical, fgt::EstimatorId::classical,
                       fgt::EstimatorId::adaptive, fgt::EstimatorId::bias_reduced };
  }

  // Explicit flags override the preset/config-file values.
  const auto given = [&](const std::string& flag) { return cmd->count(flag) > 0; };
  if (given("--n"))
    cfg.n = args.n;
  if (given("--reps"))
    cfg.replications = args.reps;
  if (given("--seed"))
    cfg.base_seed = args.seed;
  if (given("--dist"))
    cfg.distribution = args.dist.spec();
  if (given("--z-grid"))
    cfg.z_grid = parse_double_list(args.z_tokens, "--z-grid");
  if (given("--alphas"))
    cfg.alpha_grid = parse_double_list(args.alpha_tokens, "--alphas");
  if (given("--estimators")) {
    cfg.estimators.clear();
    for (const auto& token : args.estimator_tokens) {
      std::stringstream ss(token);
      std::string piece;
      while (std::getline(ss, piece, ','))
        if (!piece.empty())
          cfg.estimators.push_back(fgt::estimator_from_string(piece));
    }
  }
  if (given("--bandwidth-rule") || given("--bandwidth")) {
    cfg.bandwidth_rule = args.fixed_h > 0.0
                           ? fgt::BandwidthRule::fixed(args.fixed_h)
                           : fgt::bandwidth_rule_from_string(args.bandwidth_rule, args.fixed_h);
  }
  if (given("--sensitivity"))
    cfg.adaptive_sensitivity = args.sensitivity;
  if (given("--kernel"))
    cfg.kernel_name = args.kernel;

  const fgt::SimulationReport report = fgt::run_simulation(cfg, args.threads);

  const auto render = [&](const std::string& format) -> std::string {
    std::string payload;
    if (format == "json") {
      payload = fgt::to_json(report) + "\n";
    } else if (format == "csv") {
      if (args.paper_table) {
        payload = fgt::paper_table_csv(report);
      } else {
        std::ostringstream os;
        os << "z,alpha,estimator,mean,mse,variance,bias,true_value,bandwidth,failed\n";
        os << std::setprecision(17);
        for (const auto& cell : report.cells) {
          os << cell.z << "," << cell.alpha << "," << fgt::to_string(cell.estimator) << ","
             << cell.mean << "," << cell.mse << "," << cell.variance << "," << cell.bias << ","
             << cell.true_value << "," << cell.bandwidth << "," << (cell.failed ? 1 : 0) << "\n";
        }
        payload = os.str();
      }
    } else {
      if (args.paper_table) {
        payload = fgt::paper_table_text(report);
      } else {
        std::ostringstream os;
        os << "simulation: dist=" << cfg.distribution.name << " n=" << cfg.n
           << " R=" << cfg.replications << " seed=" << cfg.base_seed
           << " h=" << format_double(cfg.bandwidth_rule.resolve(cfg.n)) << "\n";
        for (const auto& note : report.notes)
          os << "note: " << note << "\n";
        os << std::left << std::setw(8) << "z" << std::setw(8) << "alpha" << std::setw(14)
           << "estimator" << std::right << std::setw(13) << "mean" << std::setw(13) << "mse"
           << std::setw(13) << "variance" << std::setw(13) << "true" << "\n";
        for (const auto& cell : report.cells) {
          os << std::left << std::setw(8) << cell.z << std::setw(8) << cell.alpha << std::setw(14)
             << fgt::to_string(cell.estimator) << std::right << std::setprecision(5)
             << std::scientific << std::setw(13) << cell.mean << std::setw(13) << cell.mse
             << std::setw(13) << cell.variance << std::setw(13) << cell.true_value
             << std::defaultfloat;
          if (cell.failed)
            os << "  FAILED: " << cell.error;
          os << "\n";
        }
        payload = os.str();
      }
    }
    return payload;
  };

  std::cout << render(args.format);
  if (!args.out.empty())
    write_out_file(args.out, render(out_format(args.out, args.format)));
  return 0;
}

// --------------------------------------------------------------- efficiency

struct EfficiencyArgs {
  DistFlags dist;
  double z = 0.5;
  double alpha = 1.0;
  std::string kernel = "gaussian";
  double tol = 1e-10;
  std::string format = "text";
  std::string out;
};

int run_efficiency(const EfficiencyArgs& args)
{
  const fgt::IncomeDistribution dist = args.dist.spec().build();
  const fgt::Kernel kernel = fgt::kernel_by_name(args.kernel);
  const fgt::FgtParams params(args.z, args.alpha);

  const double p_alpha = fgt::true_fgt(dist, args.z, args.alpha, args.tol);
  const double p_2alpha = fgt::true_fgt(dist, args.z, 2.0 * args.alpha, args.tol);
  std::vector<std::string> warnings;
  const double variance = fgt::asymptotic_variance(kernel, p_alpha, p_2alpha, &warnings);
  const double e = fgt::efficiency(kernel, p_alpha, p_2alpha);

  const auto render = [&](const std::string& format) -> std::string {
    std::string payload;
    if (format == "json") {
      fgt::JsonWriter w;
      w.begin_object();
      w.kv("schema", "fgt-efficiency/1");
      w.key("config");
      w.begin_object();
      w.kv("dist", args.dist.name);
      w.kv("z", args.z);
      w.kv("alpha", args.alpha);
      w.kv("kernel", args.kernel);
      w.kv("tol", args.tol);
      w.end_object();
      w.kv("p_z_alpha", p_alpha);
      w.kv("p_z_2alpha", p_2alpha);
      w.kv("asymptotic_variance", variance);
      w.kv("efficiency", e);
      w.key("warnings");
      w.begin_array();
      for (const auto& warning : warnings)
        w.value(warning);
      w.end_array();
      w.end_object();
      payload = w.take() + "\n";
    } else if (format == "csv") {
      std::ostringstream os;
      os << "z,alpha,p_z_alpha,p_z_2alpha,asymptotic_variance,efficiency\n"
         << std::setprecision(17) << args.z << "," << args.alpha << "," << p_alpha << ","
         << p_2alpha << "," << variance << "," << e << "\n";
      payload = os.str();
    } else {
      std::ostringstream os;
      os << "P(z,alpha)           " << format_double(p_alpha) << "\n";
      os << "P(z,2alpha)          " << format_double(p_2alpha) << "\n";
      os << "asymptotic variance  " << format_double(variance) << "\n";
      os << "efficiency e(z,a)    " << format_double(e) << "\n";
      for (const auto& warning : warnings)
        os << "warning              " << warning << "\n";
      payload = os.str();
    }
    return payload;
  };

  std::cout << render(args.format);
  if (!args.out.empty())
    write_out_file(args.out, render(out_format(args.out, args.format)));
  return 0;
}

// --------------------------------------------------------------- kernel-info

struct KernelInfoArgs {
  std::string kernel = "gaussian";
  double tol = 1e-6;
  std::string format = "text";
  std::string out;
};

int run_kernel_info(const KernelInfoArgs& args)
{
  const fgt::Kernel kernel = fgt::kernel_by_name(args.kernel);
  const fgt::HypothesisReport report = fgt::verify_hypotheses(kernel, args.tol);

  const auto render = [&](const std::string& format) -> std::string {
    std::string payload;
    if (format == "json") {
      payload = fgt::to_json(report) + "\n";
    } else {
      std::ostringstream os;
      os << "kernel                 " << kernel.name << "\n";
      os << "second_moment          " << format_double(kernel.second_moment) << "\n";
      os << "square_integral        " << format_double(kernel.square_integral) << "\n";
      os << "effective_radius       " << format_double(kernel.effective_support_radius) << "\n";
      os << "hypotheses (tol " << args.tol << "):\n";
      for (const auto& check : report.checks) {
        const char* status = check.status == fgt::HypothesisStatus::pass ? "pass"
                             : check.status == fgt::HypothesisStatus::fail ? "FAIL"
                                                                           : "info";
        os << "  " << std::left << std::setw(8) << check.id << std::setw(9) << check.subject
           << std::setw(6) << status << check.detail;
        for (const auto& [name, value] : check.measurements)
          os << "  " << name << "=" << std::setprecision(10) << value;
        os << "\n";
      }
      payload = os.str();
    }
    return payload;
  };

  std::cout << render(args.format);
  if (!args.out.empty())
    write_out_file(args.out, render(out_format(args.out, args.format)));
  return report.all_checkable_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "FGT poverty-index estimators (empirical, kernel, adaptive, bias-reduced)" };
  app.require_subcommand(1);

  const std::vector<std::string> formats = { "text", "json", "csv" };

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate P(z,alpha) from an income CSV");
  estimate->add_option("--input", est.input, "Income CSV file")->required();
  estimate->add_flag("--header", est.header, "Skip the first non-blank line");
  estimate->add_option("--column", est.column, "0-based column index");
  estimate->add_option("--delimiter", est.delimiter, "Field delimiter (default: auto)");
  estimate->add_flag("--strict", est.strict, "Fail on any row error");
  estimate->add_option("--z", est.z, "Poverty line (> 0)")->required();
  estimate->add_option("--alpha", est.alpha, "Poverty aversion (>= 0)")->required();
  estimate->add_option("--estimator", est.estimator, "empirical|classical|adaptive|bias-reduced");
  estimate->add_option("--bandwidth-rule", est.bandwidth_rule, "nlogn|lil|fixed");
  estimate->add_option("--bandwidth", est.fixed_h, "Fixed bandwidth (implies --bandwidth-rule fixed)");
  estimate->add_option("--sensitivity", est.sensitivity, "Adaptive sensitivity in [0,1]");
  estimate->add_option("--pilot-h", est.pilot_h, "Adaptive pilot bandwidth (default: h)");
  estimate->add_option("--kernel", est.kernel, "Kernel name");
  estimate->add_option("--format", est.format)->check(CLI::IsMember(formats));
  estimate->add_option("--out", est.out, "Write the formatted result to this file");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo benchmark over a (z, alpha) grid");
  simulate->add_option("--config", sim.config_path, "JSON config file (mirrors the report's config)");
  simulate->add_flag("--paper-table", sim.paper_table,
                     "Preset: pareto(0.02,0.2,1), n=1000, R=50, z=0.1..0.7, alpha=0,1,2");
  sim.dist.attach(simulate);
  simulate->add_option("--n", sim.n, "Sample size per replication");
  simulate->add_option("--reps", sim.reps, "Number of replications (>= 2)");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--z-grid", sim.z_tokens, "Poverty lines (comma or space separated)");
  simulate->add_option("--alphas", sim.alpha_tokens, "Aversion values");
  simulate->add_option("--estimators", sim.estimator_tokens, "Estimator subset");
  simulate->add_option("--bandwidth-rule", sim.bandwidth_rule, "nlogn|lil|fixed");
  simulate->add_option("--bandwidth", sim.fixed_h, "Fixed bandwidth");
  simulate->add_option("--sensitivity", sim.sensitivity, "Adaptive sensitivity in [0,1]");
  simulate->add_option("--kernel", sim.kernel, "Kernel name");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = hardware)");
  simulate->add_option("--format", sim.format)->check(CLI::IsMember(formats));
  simulate->add_option("--out", sim.out, "Write the formatted report to this file");

  EfficiencyArgs eff;
  CLI::App* efficiency = app.add_subcommand("efficiency",
                                            "Asymptotic variance and efficiency at (z, alpha)");
  eff.dist.attach(efficiency);
  efficiency->add_option("--z", eff.z, "Poverty line")->required();
  efficiency->add_option("--alpha", eff.alpha, "Poverty aversion")->required();
  efficiency->add_option("--kernel", eff.kernel, "Kernel name");
  efficiency->add_option("--tol", eff.tol, "Quadrature tolerance");
  efficiency->add_option("--format", eff.format)->check(CLI::IsMember(formats));
  efficiency->add_option("--out", eff.out, "Write the result to this file");

  KernelInfoArgs ki;
  CLI::App* kernel_info = app.add_subcommand("kernel-info", "Kernel metadata and hypothesis checks");
  kernel_info->add_option("--kernel", ki.kernel, "Kernel name");
  kernel_info->add_option("--tol", ki.tol, "Check tolerance");
  kernel_info->add_option("--format", ki.format)->check(CLI::IsMember(formats));
  kernel_info->add_option("--out", ki.out, "Write the report to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*estimate)
      return run_estimate(est);
    if (*simulate)
      return run_simulate(sim, simulate);
    if (*efficiency)
      return run_efficiency(eff);
    if (*kernel_info)
      return run_kernel_info(ki);
  } catch (const fgt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
