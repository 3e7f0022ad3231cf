#include "aimm/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aimm/errors.hpp"

namespace aimm {

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected matrix rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) {
      throw ValidationError("ragged matrix rows");
    }
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected vector");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

Json proposal_to_json(const IncrementalProposal& p) {
  Json j;
  j["kappa"] = p.kappa();
  j["generation"] = p.generation();
  const auto& def = p.defensive();
  if (const auto* g = std::get_if<GaussianComponent>(&def.kind)) {
    j["defensive"] = {{"kind", "gaussian"},
                      {"mean", vector_to_json(g->mean)},
                      {"covariance", matrix_to_json(g->covariance)}};
  } else {
    const auto& box = std::get<UniformBox>(def.kind);
    j["defensive"] = {{"kind", "uniform_box"},
                      {"lower", vector_to_json(box.lower)},
                      {"upper", vector_to_json(box.upper)}};
  }
  Json comps = Json::array();
  for (size_t i = 0; i < p.components().size(); ++i) {
    comps.push_back({{"mean", vector_to_json(p.components()[i].mean)},
                     {"covariance", matrix_to_json(p.components()[i].covariance)},
                     {"log_weight", p.log_weights()[i]}});
  }
  j["components"] = std::move(comps);
  return j;
}

IncrementalProposal proposal_from_json(const Json& j) {
  const auto& dj = j.at("defensive");
  DefensiveKernel def;
  if (dj.at("kind") == "gaussian") {
    def = DefensiveKernel::gaussian(make_gaussian(
        vector_from_json(dj.at("mean")), matrix_from_json(dj.at("covariance"))));
  } else if (dj.at("kind") == "uniform_box") {
    def = DefensiveKernel::uniform_box(vector_from_json(dj.at("lower")),
                                       vector_from_json(dj.at("upper")));
  } else {
    throw ValidationError("unknown defensive kernel kind");
  }
  IncrementalProposal p(std::move(def), j.at("kappa").get<double>());
  for (const auto& cj : j.at("components")) {
    p.add_component_log_weight(
        make_gaussian(vector_from_json(cj.at("mean")),
                      matrix_from_json(cj.at("covariance"))),
        cj.at("log_weight").get<double>());
  }
  return p;
}

Json report_to_json(const DiagnosticsReport& report) {
  Json j;
  j["ess"] = report.ess;
  j["acc"] = report.acc;
  j["jmp"] = report.jmp;
  j["eff"] = report.eff;
  j["cpu_seconds"] = report.cpu_seconds;
  j["m_n"] = report.m_n;
  if (report.kl_chain) j["kl"] = *report.kl_chain;
  if (report.mode_fraction) j["mode_fraction"] = *report.mode_fraction;
  Json tails = Json::array();
  for (const auto& t : report.tail_stats) {
    tails.push_back({{"label", t.label},
                     {"frequency", t.frequency},
                     {"mean_return_time", std::isinf(t.mean_return_time)
                                              ? Json("inf")
                                              : Json(t.mean_return_time)}});
  }
  j["tail_stats"] = std::move(tails);
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
  const int d = static_cast<int>(trace.states.cols());
  std::ostringstream out;
  out << "iteration";
  for (int j = 0; j < d; ++j) out << ",x_" << j;
  for (int j = 0; j < d; ++j) out << ",prop_" << j;
  out << ",accept,log_weight,m_n\n";
  for (long n = 0; n < trace.iterations(); ++n) {
    out << (n + 1);
    for (int j = 0; j < d; ++j) out << ',' << format_double(trace.states(n + 1, j));
    for (int j = 0; j < d; ++j) {
      out << ',' << format_double(trace.proposal_points(n, j));
    }
    out << ',' << int(trace.accept_flags[n]) << ','
        << format_double(trace.log_weights_at_proposals[n]) << ','
        << trace.component_count_series[n] << '\n';
  }
  atomic_write(path, out.str());
}

TraceCsv read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trace CSV: " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("empty trace CSV");
  int d = 0;
  {
    std::stringstream hs(header);
    std::string col;
    while (std::getline(hs, col, ',')) {
      if (col.rfind("x_", 0) == 0) ++d;
    }
  }
  if (d == 0) throw ValidationError("trace CSV has no state columns");

  std::vector<std::vector<double>> rows;
  TraceCsv result;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) {
      if (cell == "inf") {
        vals.push_back(std::numeric_limits<double>::infinity());
      } else if (cell == "-inf") {
        vals.push_back(-std::numeric_limits<double>::infinity());
      } else if (cell == "nan") {
        vals.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        vals.push_back(std::stod(cell));
      }
    }
    if (static_cast<int>(vals.size()) != 2 * d + 4) {
      throw ValidationError("trace CSV row has wrong column count");
    }
    rows.push_back(std::move(vals));
  }
  const long n = static_cast<long>(rows.size());
  result.states.resize(n, d);
  result.proposal_points.resize(n, d);
  for (long i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      result.states(i, j) = rows[i][1 + j];
      result.proposal_points(i, j) = rows[i][1 + d + j];
    }
    result.accept_flags.push_back(rows[i][1 + 2 * d] != 0.0 ? 1 : 0);
    result.log_weights.push_back(rows[i][2 + 2 * d]);
    result.component_counts.push_back(static_cast<int>(rows[i][3 + 2 * d]));
  }
  return result;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

}  // namespace aimm
