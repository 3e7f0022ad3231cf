// Benchmark CLI: run configured experiments, compare samplers on one target,
// and recompute diagnostics from a saved trace.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aimm/errors.hpp"
#include "aimm/harness.hpp"

namespace {

aimm::Json load_spec(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) {
    std::ifstream in(arg);
    if (!in) throw aimm::ValidationError("cannot open spec file: " + arg);
    return aimm::Json::parse(in);
  }
  // Not a file: try the built-in presets.
  return aimm::preset_spec(arg);
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::string out_dir = "out";
  int workers = 1;
};

int run_spec(const std::string& arg, const Overrides& ov, bool require_compare) {
  aimm::Json doc = load_spec(arg);
  if (ov.seed) doc["base_seed"] = *ov.seed;
  if (ov.replications) doc["replications"] = *ov.replications;
  aimm::ExperimentSpec spec = aimm::parse_experiment(doc);
  if (require_compare && spec.samplers.size() < 2) {
    throw aimm::ValidationError(
        "compare: spec must list at least two sampler blocks");
  }
  const auto output = aimm::run_experiment(spec, ov.out_dir, ov.workers);
  std::cout << aimm::aggregate_csv(output.reports);
  for (const auto& f : output.files) std::cerr << "wrote " << f.string() << "\n";
  return 0;
}

int run_report(const std::string& trace_path) {
  const aimm::TraceCsv csv = aimm::read_trace_csv(trace_path);
  aimm::Json j;
  j["iterations"] = csv.states.rows();
  j["ess"] = aimm::ess_min_marginal(csv.states);
  long accepted = 0;
  for (char f : csv.accept_flags) accepted += f;
  j["acc"] = csv.accept_flags.empty()
                 ? 0.0
                 : static_cast<double>(accepted) / csv.accept_flags.size();
  j["jmp"] = aimm::jumping_distance(csv.states);
  j["m_n"] = csv.component_counts.empty() ? 0 : csv.component_counts.back();
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AIMM benchmark harness"};
  app.require_subcommand(1);

  Overrides ov;
  std::string spec_arg;
  std::string trace_arg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", ov.seed, "Override base_seed");
    cmd->add_option("--replications", ov.replications,
                    "Override replication count");
    cmd->add_option("--out-dir", ov.out_dir, "Output directory");
    cmd->add_option("--workers", ov.workers, "Replication worker threads");
  };

  auto* run = app.add_subcommand("run", "Run one experiment spec");
  run->add_option("spec", spec_arg, "Spec JSON file or preset name")->required();
  add_common(run);

  auto* compare =
      app.add_subcommand("compare", "Run a multi-sampler comparison spec");
  compare->add_option("spec", spec_arg, "Spec JSON file or preset name")
      ->required();
  add_common(compare);

  auto* report =
      app.add_subcommand("report", "Recompute diagnostics from a trace CSV");
  report->add_option("trace", trace_arg, "Trace CSV file")->required();

  auto* presets = app.add_subcommand("presets", "List built-in preset names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (presets->parsed()) {
      for (const auto& n : aimm::preset_names()) std::cout << n << "\n";
      return 0;
    }
    if (report->parsed()) return run_report(trace_arg);
    return run_spec(spec_arg, ov, compare->parsed());
  } catch (const aimm::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const aimm::Json::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
