#ifndef AIMM_HARNESS_HPP
#define AIMM_HARNESS_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aimm/baselines.hpp"
#include "aimm/diagnostics.hpp"
#include "aimm/sampler.hpp"
#include "aimm/serialize.hpp"

namespace aimm {

enum class SamplerKind { aimm, f_aimm, rwmh, im, amh, agm };

SamplerKind sampler_kind_from_string(const std::string& s);
std::string to_string(SamplerKind kind);

enum class OutputKind {
  trace_csv,
  report_json,
  aggregate_csv,
  proposal_snapshot,
  density_grid,
  ellipse_set,
};

OutputKind output_kind_from_string(const std::string& s);

/// A benchmark target together with the pieces the samplers need: the
/// defensive kernel Q0, the metric / baseline covariance sigma0, and the
/// diagnostics that make sense for it (tail events, mode centers).
struct TargetBundle {
  TargetDensity target;
  DefensiveKernel q0;
  Eigen::MatrixXd sigma0;
  DiagnosticsOptions diag;
  // Recommended neighborhood radius cap for this target (sigma0-metric
  // units); 0 means the sampler's automatic choice. Targets whose defensive
  // kernel is much wider than their modes need a tighter cap, since the
  // metric unit is then far larger than the local scale of the density.
  double radius_cap = 0.0;
};

/// target block: {"name": "trimodal1d" | "banana" | "ridge" | "bimodal",
/// optional "d", "b", "convention", and an optional "q0" override
/// ({"kind": "gaussian", "mean", "covariance"} or
///  {"kind": "uniform_box", "lower", "upper"}).
TargetBundle make_target_bundle(const Json& block);

struct SamplerSpec {
  SamplerKind kind = SamplerKind::aimm;
  Json config;  // sampler-specific overrides, may be empty
};

struct ExperimentSpec {
  Json target_block;
  std::vector<SamplerSpec> samplers;
  int replications = 1;
  std::uint64_t base_seed = 0;
  long iterations = 0;
  std::vector<OutputKind> outputs;
  std::string name = "experiment";
  bool kl = false;  // KL(pi, chain-KDE) per replication; needs exact sampler
  long kl_samples = 5000;
};

/// Parses and validates; throws ValidationError with a field path on bad
/// input. Accepts either a single "sampler" block or a "samplers" array.
ExperimentSpec parse_experiment(const Json& j);

struct ReplicationResult {
  Trace trace;
  std::optional<IncrementalProposal> final_proposal;
  DiagnosticsReport report;
};

/// Runs one replication with seed = base_seed + r. Deterministic in
/// (spec, r) apart from the wall-time field.
ReplicationResult run_replication(const ExperimentSpec& spec,
                                  const TargetBundle& bundle,
                                  const SamplerSpec& sampler, int r);

struct ExperimentOutput {
  std::vector<std::filesystem::path> files;
  // Per sampler: one report per replication, in replication order.
  std::map<std::string, std::vector<DiagnosticsReport>> reports;
};

/// Runs every sampler block x replication (replications in parallel across
/// `workers` threads), writes the requested artifacts under out_dir.
ExperimentOutput run_experiment(const ExperimentSpec& spec,
                                const std::filesystem::path& out_dir,
                                int workers = 1);

/// Mean / variance rows per sampler over the replications, table layout
/// sampler,stat,M_n,ESS,ACC,KL,JMP,CPU,EFF,... with "NA" for statistics that
/// were not computed and for the variance row when replications == 1.
std::string aggregate_csv(
    const std::map<std::string, std::vector<DiagnosticsReport>>& reports);

/// CSV of (x, log_density) for d=1 or (x, y, log_density) for d=2, natural
/// logs. `density` is any evaluable log-density.
std::string density_grid_csv(
    const std::function<double(const Eigen::VectorXd&)>& log_density, int dim,
    const Eigen::VectorXd& lower, const Eigen::VectorXd& upper, int resolution);

/// Per-component rows: projected center, projected 2x2 covariance, the
/// chi-square radius^2 covering 75% of the mass, and the normalized weight.
Json ellipse_set_json(const IncrementalProposal& proposal, int coord_a,
                      int coord_b);

/// Named ready-to-run specs covering the benchmark table rows; throws
/// ValidationError for an unknown name.
Json preset_spec(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace aimm

#endif
