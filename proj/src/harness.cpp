#include "aimm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "aimm/errors.hpp"

namespace aimm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// chi^2_2 quantile at 0.75: -2 log(0.25)
constexpr double kEllipseRadius2 = 2.772588722239781;

Eigen::MatrixXd defensive_covariance(const DefensiveKernel& q0) {
  if (const auto* g = std::get_if<GaussianComponent>(&q0.kind)) {
    return g->covariance;
  }
  const auto& box = std::get<UniformBox>(q0.kind);
  const Eigen::VectorXd width = box.upper - box.lower;
  return (width.array().square() / 12.0).matrix().asDiagonal();
}

DefensiveKernel parse_q0(const Json& j, int dim) {
  const std::string kind = j.value("kind", "gaussian");
  if (kind == "gaussian") {
    return DefensiveKernel::gaussian(
        make_gaussian(vector_from_json(j.at("mean")),
                      matrix_from_json(j.at("covariance"))));
  }
  if (kind == "uniform_box") {
    Eigen::VectorXd lower = vector_from_json(j.at("lower"));
    Eigen::VectorXd upper = vector_from_json(j.at("upper"));
    if (lower.size() != dim || upper.size() != dim) {
      throw ValidationError("target.q0: bounds dimension mismatch");
    }
    return DefensiveKernel::uniform_box(std::move(lower), std::move(upper));
  }
  throw ValidationError("target.q0.kind: unknown kernel kind '" + kind + "'");
}

}  // namespace

SamplerKind sampler_kind_from_string(const std::string& s) {
  if (s == "aimm") return SamplerKind::aimm;
  if (s == "f_aimm") return SamplerKind::f_aimm;
  if (s == "rwmh") return SamplerKind::rwmh;
  if (s == "im") return SamplerKind::im;
  if (s == "amh") return SamplerKind::amh;
  if (s == "agm") return SamplerKind::agm;
  throw ValidationError("sampler.type: unknown sampler '" + s + "'");
}

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::aimm: return "aimm";
    case SamplerKind::f_aimm: return "f_aimm";
    case SamplerKind::rwmh: return "rwmh";
    case SamplerKind::im: return "im";
    case SamplerKind::amh: return "amh";
    case SamplerKind::agm: return "agm";
  }
  throw ValidationError("sampler.type: invalid enum value");
}

OutputKind output_kind_from_string(const std::string& s) {
  if (s == "trace_csv") return OutputKind::trace_csv;
  if (s == "report_json") return OutputKind::report_json;
  if (s == "aggregate_csv") return OutputKind::aggregate_csv;
  if (s == "proposal_snapshot") return OutputKind::proposal_snapshot;
  if (s == "density_grid") return OutputKind::density_grid;
  if (s == "ellipse_set") return OutputKind::ellipse_set;
  throw ValidationError("outputs: unknown output kind '" + s + "'");
}

TargetBundle make_target_bundle(const Json& block) {
  if (!block.is_object() || !block.contains("name")) {
    throw ValidationError("target: block with a 'name' field required");
  }
  const std::string name = block.at("name").get<std::string>();
  TargetBundle bundle;

  if (name == "trimodal1d") {
    bundle.target = make_trimodal_1d();
    bundle.q0 = DefensiveKernel::gaussian(make_gaussian(
        Eigen::VectorXd::Zero(1), 10.0 * Eigen::MatrixXd::Identity(1, 1)));
    bundle.diag.tail_events.push_back({0, 5.0, false, "X>5"});
  } else if (name == "banana") {
    BananaParams p;
    p.d = block.value("d", 2);
    p.b = block.value("b", 0.1);
    bundle.target = make_banana(p);
    Eigen::VectorXd lower = Eigen::VectorXd::Constant(p.d, -10.0);
    Eigen::VectorXd upper = Eigen::VectorXd::Constant(p.d, 10.0);
    lower[0] = -50.0;
    upper[0] = 50.0;
    lower[1] = -100.0;
    upper[1] = 20.0;
    bundle.q0 = DefensiveKernel::uniform_box(std::move(lower), std::move(upper));
    bundle.diag.tail_events.push_back({1, -28.6, true, "X2<-28.6"});
    // The box metric unit is ~30 per axis while the ridge is ~10 x 2 wide;
    // 0.25 metric units keeps increment covariances ridge-local.
    bundle.radius_cap = 0.25;
  } else if (name == "ridge") {
    bundle.target = make_ridge_default();
    bundle.q0 = DefensiveKernel::gaussian(make_gaussian(
        Eigen::VectorXd::Ones(6), 0.5 * Eigen::MatrixXd::Identity(6, 6)));
  } else if (name == "bimodal") {
    BimodalParams p;
    p.d = block.value("d", 4);
    const std::string conv = block.value("convention", "abs_diff");
    if (conv != "abs_diff" && conv != "max_index") {
      throw ValidationError("target.convention: expected abs_diff or max_index");
    }
    bundle.target = make_bimodal(p, conv == "abs_diff" ? ArConvention::abs_diff
                                                       : ArConvention::max_index);
    bundle.q0 = DefensiveKernel::uniform_box(
        Eigen::VectorXd::Constant(p.d, p.box_lower),
        Eigen::VectorXd::Constant(p.d, p.box_upper));
    bundle.diag.mode_centers = {Eigen::VectorXd::Zero(p.d),
                                Eigen::VectorXd::Constant(p.d, 9.0)};
    // Metric sd per axis is ~4.3 while each mode has unit sd; 1.5 metric
    // units (~6.5 in state space) covers one mode without bridging both.
    bundle.radius_cap = 1.5;
  } else {
    throw ValidationError("target.name: unknown target '" + name + "'");
  }

  if (block.contains("q0")) {
    bundle.q0 = parse_q0(block.at("q0"), bundle.target.dim);
  }
  bundle.sigma0 = block.contains("sigma0")
                      ? matrix_from_json(block.at("sigma0"))
                      : defensive_covariance(bundle.q0);
  if (bundle.sigma0.rows() != bundle.target.dim) {
    throw ValidationError("target.sigma0: dimension mismatch");
  }
  return bundle;
}

ExperimentSpec parse_experiment(const Json& j) {
  if (!j.is_object()) throw ValidationError("spec: JSON object required");
  ExperimentSpec spec;
  spec.name = j.value("name", "experiment");
  if (!j.contains("target")) throw ValidationError("target: block required");
  spec.target_block = j.at("target");
  make_target_bundle(spec.target_block);  // validate eagerly

  if (j.contains("sampler") == j.contains("samplers")) {
    throw ValidationError("spec: exactly one of 'sampler' / 'samplers' required");
  }
  Json blocks = Json::array();
  if (j.contains("sampler")) {
    blocks.push_back(j.at("sampler"));
  } else {
    blocks = j.at("samplers");
    if (!blocks.is_array() || blocks.empty()) {
      throw ValidationError("samplers: non-empty array required");
    }
  }
  for (const auto& b : blocks) {
    if (!b.is_object() || !b.contains("type")) {
      throw ValidationError("sampler: block with a 'type' field required");
    }
    SamplerSpec s;
    s.kind = sampler_kind_from_string(b.at("type").get<std::string>());
    s.config = b;
    s.config.erase("type");
    spec.samplers.push_back(std::move(s));
  }

  spec.replications = j.value("replications", 1);
  if (spec.replications < 1) {
    throw ValidationError("replications: must be >= 1");
  }
  spec.base_seed = j.value("base_seed", std::uint64_t{0});
  spec.iterations = j.value("iterations", long{0});
  if (spec.iterations < 1) throw ValidationError("iterations: must be >= 1");
  spec.kl = j.value("kl", false);
  spec.kl_samples = j.value("kl_samples", long{5000});
  if (spec.kl_samples < 1) throw ValidationError("kl_samples: must be >= 1");

  for (const auto& o : j.value("outputs", Json::array())) {
    spec.outputs.push_back(output_kind_from_string(o.get<std::string>()));
  }
  return spec;
}

namespace {

AimmConfig parse_aimm_config(const ExperimentSpec& spec,
                             const TargetBundle& bundle, const SamplerSpec& s,
                             int r) {
  const Json& c = s.config;
  AimmConfig cfg = AimmConfig::defaults(bundle.target.dim);
  cfg.sigma0 = bundle.sigma0;
  cfg.iterations = c.value("iterations", spec.iterations);
  cfg.seed = spec.base_seed + static_cast<std::uint64_t>(r);
  if (c.contains("w_star") && c.contains("log_w_star")) {
    throw ValidationError("sampler: give w_star or log_w_star, not both");
  }
  if (c.contains("w_star")) cfg.w_star = c.at("w_star").get<double>();
  if (c.contains("log_w_star")) {
    cfg.w_star = std::exp(c.at("log_w_star").get<double>());
  }
  cfg.gamma = c.value("gamma", cfg.gamma);
  cfg.tau = c.value("tau", cfg.tau);
  cfg.kappa = c.value("kappa", cfg.kappa);
  cfg.n0 = c.value("n0", cfg.n0);
  if (c.contains("m_max")) cfg.m_max = c.at("m_max").get<int>();
  cfg.neighborhood_scale = c.value("neighborhood_scale", cfg.neighborhood_scale);
  cfg.radius_cap = c.value("radius_cap", bundle.radius_cap);
  cfg.threshold_batch = c.value("threshold_batch", cfg.threshold_batch);
  cfg.record_proposal_snapshots =
      c.value("record_snapshots", cfg.record_proposal_snapshots);
  if (c.contains("rho_mode")) {
    const std::string m = c.at("rho_mode").get<std::string>();
    if (m == "rate") {
      cfg.rho_mode = NeighborhoodRho::rate;
    } else if (m == "count") {
      cfg.rho_mode = NeighborhoodRho::count;
    } else {
      throw ValidationError("sampler.rho_mode: expected rate or count");
    }
  }

  if (s.kind == SamplerKind::f_aimm) {
    cfg.adapt_threshold = true;
    if (!cfg.m_max) cfg.m_max = 200;
  } else if (s.kind == SamplerKind::im) {
    cfg.n0 = kNeverAdapt;
  }
  return cfg;
}

}  // namespace

ReplicationResult run_replication(const ExperimentSpec& spec,
                                  const TargetBundle& bundle,
                                  const SamplerSpec& sampler, int r) {
  const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(r);
  const int d = bundle.target.dim;
  const Json& c = sampler.config;
  const long iterations = c.value("iterations", spec.iterations);

  ReplicationResult result;
  switch (sampler.kind) {
    case SamplerKind::aimm:
    case SamplerKind::f_aimm:
    case SamplerKind::im: {
      AimmRun run = run_aimm(bundle.target, bundle.q0,
                             parse_aimm_config(spec, bundle, sampler, r));
      result.trace = std::move(run.trace);
      result.final_proposal = std::move(run.final_proposal);
      break;
    }
    case SamplerKind::rwmh: {
      RwmhConfig cfg = RwmhConfig::defaults(bundle.sigma0, iterations, seed);
      if (c.contains("scale")) cfg.scale = matrix_from_json(c.at("scale"));
      if (c.contains("scale_scalar")) {
        cfg.scale = c.at("scale_scalar").get<double>() *
                    Eigen::MatrixXd::Identity(d, d);
      }
      if (c.contains("initial_state")) {
        cfg.initial_state = vector_from_json(c.at("initial_state"));
      }
      result.trace = run_rwmh(bundle.target, cfg);
      break;
    }
    case SamplerKind::amh: {
      AmhConfig cfg;
      cfg.sigma0 = (0.1 * 0.1 / d) * Eigen::MatrixXd::Identity(d, d);
      if (c.contains("sigma0")) cfg.sigma0 = matrix_from_json(c.at("sigma0"));
      cfg.n0 = c.value("n0", cfg.n0);
      cfg.p_fixed = c.value("p_fixed", cfg.p_fixed);
      cfg.s_d = c.value("s_d", cfg.s_d);
      cfg.iterations = iterations;
      cfg.seed = seed;
      result.trace = run_amh(bundle.target, cfg);
      break;
    }
    case SamplerKind::agm: {
      AgmConfig cfg;
      cfg.n_components = c.value("n_components", 10);
      cfg.init_cov = c.contains("init_cov")
                         ? matrix_from_json(c.at("init_cov"))
                         : Eigen::MatrixXd::Identity(d, d);
      cfg.iterations = iterations;
      cfg.seed = seed;
      result.trace = run_agm(bundle.target, bundle.q0, cfg);
      break;
    }
  }

  DiagnosticsOptions opts = bundle.diag;
  if (spec.kl) {
    if (!bundle.target.normalized || !bundle.target.exact_sampler) {
      throw ValidationError(
          "kl: target is unnormalized or has no exact sampler");
    }
    opts.kl_chain = true;
    opts.kl_samples = spec.kl_samples;
    opts.kl_seed = seed;
  }
  result.report = compute_report(result.trace, bundle.target, opts);
  return result;
}

namespace {

bool wants(const ExperimentSpec& spec, OutputKind kind) {
  return std::find(spec.outputs.begin(), spec.outputs.end(), kind) !=
         spec.outputs.end();
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

struct StatColumn {
  std::string header;
  std::function<std::optional<double>(const DiagnosticsReport&)> get;
};

const std::vector<StatColumn>& stat_columns() {
  static const std::vector<StatColumn> cols = {
      {"M_n", [](const DiagnosticsReport& r) {
         return std::optional<double>(r.m_n);
       }},
      {"ESS", [](const DiagnosticsReport& r) {
         return std::optional<double>(r.ess);
       }},
      {"ACC", [](const DiagnosticsReport& r) {
         return std::optional<double>(r.acc);
       }},
      {"KL", [](const DiagnosticsReport& r) { return r.kl_chain; }},
      {"JMP", [](const DiagnosticsReport& r) {
         return std::optional<double>(r.jmp);
       }},
      {"CPU", [](const DiagnosticsReport& r) {
         return std::optional<double>(r.cpu_seconds);
       }},
      {"EFF", [](const DiagnosticsReport& r) {
         return std::optional<double>(r.eff);
       }},
      {"MODE_FRAC", [](const DiagnosticsReport& r) { return r.mode_fraction; }},
      {"TAIL_FREQ", [](const DiagnosticsReport& r) -> std::optional<double> {
         if (r.tail_stats.empty()) return std::nullopt;
         return r.tail_stats.front().frequency;
       }},
      {"TAIL_RET", [](const DiagnosticsReport& r) -> std::optional<double> {
         if (r.tail_stats.empty()) return std::nullopt;
         return r.tail_stats.front().mean_return_time;
       }},
  };
  return cols;
}

std::optional<double> column_mean(const std::vector<std::optional<double>>& v) {
  double total = 0.0;
  for (const auto& x : v) {
    if (!x) return std::nullopt;
    total += *x;
  }
  return total / static_cast<double>(v.size());
}

std::optional<double> column_variance(
    const std::vector<std::optional<double>>& v,
    const std::optional<double>& mean) {
  if (!mean || v.size() < 2) return std::nullopt;
  if (std::isinf(*mean)) return kInf;
  double total = 0.0;
  for (const auto& x : v) total += (*x - *mean) * (*x - *mean);
  return total / static_cast<double>(v.size() - 1);
}

}  // namespace

std::string aggregate_csv(
    const std::map<std::string, std::vector<DiagnosticsReport>>& reports) {
  std::ostringstream out;
  out << "sampler,stat";
  for (const auto& col : stat_columns()) out << ',' << col.header;
  out << '\n';
  for (const auto& [label, reps] : reports) {
    std::vector<std::string> mean_cells, var_cells;
    for (const auto& col : stat_columns()) {
      std::vector<std::optional<double>> values;
      values.reserve(reps.size());
      for (const auto& r : reps) values.push_back(col.get(r));
      const auto mean = column_mean(values);
      mean_cells.push_back(csv_cell(mean));
      var_cells.push_back(csv_cell(column_variance(values, mean)));
    }
    out << label << ",mean";
    for (const auto& c : mean_cells) out << ',' << c;
    out << '\n' << label << ",variance";
    for (const auto& c : var_cells) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

std::string density_grid_csv(
    const std::function<double(const Eigen::VectorXd&)>& log_density, int dim,
    const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
    int resolution) {
  if (dim != 1 && dim != 2) {
    throw UnsupportedDimension("density_grid: only d=1 and d=2 supported");
  }
  if (resolution < 2) throw ValidationError("density_grid: resolution >= 2");
  if (lower.size() != dim || upper.size() != dim) {
    throw ValidationError("density_grid: bounds dimension mismatch");
  }
  std::ostringstream out;
  if (dim == 1) {
    out << "x,log_density\n";
    for (int i = 0; i < resolution; ++i) {
      Eigen::VectorXd x(1);
      x[0] = lower[0] + (upper[0] - lower[0]) * i / (resolution - 1);
      out << format_double(x[0]) << ',' << format_double(log_density(x)) << '\n';
    }
  } else {
    out << "x,y,log_density\n";
    for (int i = 0; i < resolution; ++i) {
      for (int j = 0; j < resolution; ++j) {
        Eigen::VectorXd p(2);
        p[0] = lower[0] + (upper[0] - lower[0]) * i / (resolution - 1);
        p[1] = lower[1] + (upper[1] - lower[1]) * j / (resolution - 1);
        out << format_double(p[0]) << ',' << format_double(p[1]) << ','
            << format_double(log_density(p)) << '\n';
      }
    }
  }
  return out.str();
}

Json ellipse_set_json(const IncrementalProposal& proposal, int coord_a,
                      int coord_b) {
  if (proposal.component_count() == 0) {
    throw EmptyMixture("ellipse_set: proposal has no incremental components");
  }
  const int d = proposal.dim();
  if (coord_a < 0 || coord_a >= d || coord_b < 0 || coord_b >= d ||
      coord_a == coord_b) {
    throw ValidationError("ellipse_set: invalid projection coordinates");
  }
  const auto weights = proposal.normalized_weights();
  Json components = Json::array();
  for (size_t l = 0; l < proposal.components().size(); ++l) {
    const auto& g = proposal.components()[l];
    Eigen::VectorXd center(2);
    center << g.mean[coord_a], g.mean[coord_b];
    Eigen::MatrixXd cov(2, 2);
    cov << g.covariance(coord_a, coord_a), g.covariance(coord_a, coord_b),
        g.covariance(coord_b, coord_a), g.covariance(coord_b, coord_b);
    components.push_back({{"center", vector_to_json(center)},
                          {"covariance", matrix_to_json(cov)},
                          {"weight", weights[l]}});
  }
  return Json{{"mass_level", 0.75},
              {"radius2", kEllipseRadius2},
              {"projection", {coord_a, coord_b}},
              {"components", std::move(components)}};
}

ExperimentOutput run_experiment(const ExperimentSpec& spec,
                                const std::filesystem::path& out_dir,
                                int workers) {
  if (workers < 1) throw ValidationError("workers: must be >= 1");
  const TargetBundle bundle = make_target_bundle(spec.target_block);
  std::filesystem::create_directories(out_dir);
  ExperimentOutput output;

  // Labels must be unique across sampler blocks of the same kind.
  std::vector<std::string> labels;
  std::map<std::string, int> seen;
  for (const auto& s : spec.samplers) {
    std::string label = s.config.value("label", to_string(s.kind));
    if (int n = seen[label]++; n > 0) label += "_" + std::to_string(n + 1);
    labels.push_back(std::move(label));
  }

  auto record = [&](const std::filesystem::path& p) {
    output.files.push_back(p);
  };

  for (size_t si = 0; si < spec.samplers.size(); ++si) {
    const SamplerSpec& sampler = spec.samplers[si];
    const std::string& label = labels[si];
    std::vector<ReplicationResult> results(spec.replications);

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= spec.replications) return;
        try {
          results[r] = run_replication(spec, bundle, sampler, r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    const int pool = std::min(workers, spec.replications);
    if (pool == 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < pool; ++w) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    auto& reps = output.reports[label];
    for (int r = 0; r < spec.replications; ++r) {
      const auto& res = results[r];
      reps.push_back(res.report);
      const std::string stem = spec.name + "_" + label + "_rep" +
                               std::to_string(r);
      if (wants(spec, OutputKind::trace_csv)) {
        const auto p = out_dir / (stem + ".trace.csv");
        write_trace_csv(p, res.trace);
        record(p);
      }
      if (wants(spec, OutputKind::report_json)) {
        const auto p = out_dir / (stem + ".report.json");
        atomic_write(p, report_to_json(res.report).dump(2) + "\n");
        record(p);
      }
      if (wants(spec, OutputKind::proposal_snapshot) && res.final_proposal) {
        const auto p = out_dir / (stem + ".proposal.json");
        atomic_write(p, proposal_to_json(*res.final_proposal).dump(2) + "\n");
        record(p);
      }
    }

    // Figure-style artifacts come from the first replication only.
    const auto& first = results.front();
    if (wants(spec, OutputKind::density_grid) && first.final_proposal &&
        bundle.target.dim <= 2) {
      const auto& q = *first.final_proposal;
      const int d = bundle.target.dim;
      Eigen::VectorXd lower(d), upper(d);
      if (const auto* box = std::get_if<UniformBox>(&bundle.q0.kind)) {
        lower = box->lower.head(d);
        upper = box->upper.head(d);
      } else {
        const auto& g = std::get<GaussianComponent>(bundle.q0.kind);
        const Eigen::VectorXd sd = g.covariance.diagonal().array().sqrt();
        lower = g.mean - 5.0 * sd;
        upper = g.mean + 5.0 * sd;
      }
      const auto p = out_dir / (spec.name + "_" + label + ".grid.csv");
      atomic_write(p, density_grid_csv(
                          [&q](const Eigen::VectorXd& x) {
                            return q.log_density(x);
                          },
                          d, lower, upper, d == 1 ? 601 : 201));
      record(p);
    }
    if (wants(spec, OutputKind::ellipse_set) && first.final_proposal &&
        first.final_proposal->component_count() > 0 && bundle.target.dim >= 2) {
      const auto p = out_dir / (spec.name + "_" + label + ".ellipses.json");
      atomic_write(p, ellipse_set_json(*first.final_proposal, 0, 1).dump(2) +
                          "\n");
      record(p);
    }
  }

  if (wants(spec, OutputKind::aggregate_csv)) {
    const auto p = out_dir / (spec.name + ".aggregate.csv");
    atomic_write(p, aggregate_csv(output.reports));
    record(p);
  }
  return output;
}

Json preset_spec(const std::string& name) {
  // Benchmark-table presets; each is a complete spec accepted by
  // parse_experiment.
  static const std::map<std::string, Json> presets = {
      {"pi1_aimm",
       {{"name", "pi1_aimm"},
        {"target", {{"name", "trimodal1d"}}},
        {"sampler", {{"type", "aimm"}, {"log_w_star", 1.0}, {"n0", 1000}}},
        {"iterations", 20000},
        {"replications", 100},
        {"base_seed", 1},
        {"outputs", {"aggregate_csv"}}}},
      {"pi1_aimm_desk",
       {{"name", "pi1_aimm_desk"},
        {"target", {{"name", "trimodal1d"}}},
        {"sampler", {{"type", "aimm"}, {"log_w_star", 1.0}, {"n0", 1000}}},
        {"iterations", 20000},
        {"replications", 5},
        {"base_seed", 1},
        {"outputs", {"aggregate_csv", "report_json"}}}},
      {"pi1_compare",
       {{"name", "pi1_compare"},
        {"target", {{"name", "trimodal1d"}}},
        {"samplers",
         {{{"type", "aimm"}, {"log_w_star", 1.0}, {"n0", 1000}},
          {{"type", "rwmh"}},
          {{"type", "im"}},
          {{"type", "amh"}},
          {{"type", "agm"}}}},
        {"iterations", 20000},
        {"replications", 5},
        {"base_seed", 1},
        {"outputs", {"aggregate_csv"}}}},
      {"pi2_aimm_logwstar1",
       {{"name", "pi2_aimm_logwstar1"},
        {"target", {{"name", "banana"}, {"d", 2}}},
        {"sampler", {{"type", "aimm"}, {"log_w_star", 1.0}}},
        {"iterations", 100000},
        {"replications", 1},
        {"base_seed", 1},
        {"kl", true},
        {"outputs", {"report_json", "ellipse_set", "density_grid"}}}},
      {"pi2_faimm_logwstar05",
       {{"name", "pi2_faimm_logwstar05"},
        {"target", {{"name", "banana"}, {"d", 2}}},
        {"sampler",
         {{"type", "f_aimm"}, {"log_w_star", 0.5}, {"m_max", 200}}},
        {"iterations", 100000},
        {"replications", 1},
        {"base_seed", 1},
        {"outputs", {"report_json"}}}},
      {"pi2_tail_compare",
       {{"name", "pi2_tail_compare"},
        {"target", {{"name", "banana"}, {"d", 2}}},
        {"samplers",
         {{{"type", "f_aimm"}, {"log_w_star", 0.5}, {"m_max", 200}},
          {{"type", "rwmh"}}}},
        {"iterations", 200000},
        {"replications", 1},
        {"base_seed", 1},
        {"outputs", {"aggregate_csv"}}}},
      {"pi2_d40_faimm",
       {{"name", "pi2_d40_faimm"},
        {"target", {{"name", "banana"}, {"d", 40}}},
        {"sampler", {{"type", "f_aimm"}, {"m_max", 200}}},
        {"iterations", 100000},
        {"replications", 1},
        {"base_seed", 1},
        {"outputs", {"report_json"}}}},
      {"pi3_faimm",
       {{"name", "pi3_faimm"},
        {"target", {{"name", "ridge"}}},
        {"sampler", {{"type", "f_aimm"}, {"m_max", 200}}},
        {"iterations", 100000},
        {"replications", 1},
        {"base_seed", 1},
        {"outputs", {"report_json"}}}},
      {"pi4_faimm",
       {{"name", "pi4_faimm"},
        {"target", {{"name", "bimodal"}, {"d", 4}}},
        {"sampler", {{"type", "f_aimm"}, {"m_max", 200}}},
        {"iterations", 100000},
        {"replications", 10},
        {"base_seed", 1},
        {"outputs", {"aggregate_csv"}}}},
      {"pi4_rwmh",
       {{"name", "pi4_rwmh"},
        {"target", {{"name", "bimodal"}, {"d", 4}}},
        {"sampler", {{"type", "rwmh"}}},
        {"iterations", 100000},
        {"replications", 10},
        {"base_seed", 1},
        {"outputs", {"aggregate_csv"}}}},
  };
  const auto it = presets.find(name);
  if (it == presets.end()) {
    throw ValidationError("preset: unknown preset '" + name + "'");
  }
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& n :
       {"pi1_aimm", "pi1_aimm_desk", "pi1_compare", "pi2_aimm_logwstar1",
        "pi2_faimm_logwstar05", "pi2_tail_compare", "pi2_d40_faimm",
        "pi3_faimm", "pi4_faimm", "pi4_rwmh"}) {
    names.emplace_back(n);
  }
  return names;
}

}  // namespace aimm
