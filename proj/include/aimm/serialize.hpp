#ifndef AIMM_SERIALIZE_HPP
#define AIMM_SERIALIZE_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "aimm/diagnostics.hpp"
#include "aimm/proposal.hpp"
#include "aimm/sampler.hpp"

namespace aimm {

using Json = nlohmann::json;

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);
Json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j);

/// Mixture snapshot (defensive kernel, means, covariances, log-weights,
/// kappa, generation); round-trips through proposal_from_json.
Json proposal_to_json(const IncrementalProposal& p);
IncrementalProposal proposal_from_json(const Json& j);

Json report_to_json(const DiagnosticsReport& report);

/// One row per iteration: state coords, proposal coords, accept flag,
/// log-weight, component count. Floats with 17 significant digits.
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);

struct TraceCsv {
  Eigen::MatrixXd states;  // one row per iteration
  Eigen::MatrixXd proposal_points;
  std::vector<char> accept_flags;
  std::vector<double> log_weights;
  std::vector<int> component_counts;
};

TraceCsv read_trace_csv(const std::filesystem::path& path);

/// Writes to a temp file in the same directory, then renames into place.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string format_double(double v);  // %.17g, inf/nan spelled out

}  // namespace aimm

#endif
