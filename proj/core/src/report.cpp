#include "spc/experiment.hpp"

#include "spc/kernels.hpp"
#include "spc/matrix_io.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <limits>

namespace spc {

using nlohmann::ordered_json;

bool operator==(const SpcConfig& a, const SpcConfig& b) {
  return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.clusters == b.clusters &&
         a.max_iters == b.max_iters && a.rel_tol == b.rel_tol && a.adapt_beta == b.adapt_beta && a.seed == b.seed;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.data_path == b.data_path && a.labels_path == b.labels_path && a.moons == b.moons &&
         a.method == b.method && a.kernel == b.kernel && a.normalize == b.normalize && a.spc == b.spc &&
         a.metrics == b.metrics && a.save_graph == b.save_graph && a.plot == b.plot && a.out_dir == b.out_dir &&
         a.report_format == b.report_format;
}

bool RunReport::operator==(const RunReport& o) const {
  return format == o.format && config == o.config && samples == o.samples && clusters == o.clusters &&
         component_count == o.component_count && metrics == o.metrics && kernel_weights == o.kernel_weights &&
         kernel_names == o.kernel_names && iterations == o.iterations && converged == o.converged &&
         tolerance_reached == o.tolerance_reached && final_beta == o.final_beta &&
         objective_trace == o.objective_trace && rel_change_trace == o.rel_change_trace &&
         zero_eigenvalue_trace == o.zero_eigenvalue_trace && timings == o.timings;
}

double round_metric(double v) { return std::round(v * 1e6) / 1e6; }

void ExperimentConfig::validate() const {
  if (data_path.has_value() == moons.has_value()) {
    throw Error("experiment needs exactly one dataset source (data file or two-moons generator)");
  }
  if (data_path && !std::filesystem::exists(*data_path)) throw Error("data file not found: " + *data_path);
  if (labels_path && !std::filesystem::exists(*labels_path)) throw Error("labels file not found: " + *labels_path);
  if (kernel == "bank") {
    if (method == Method::spc) throw Error("the kernel bank is only valid with mspc");
  } else {
    parse_kernel_spec(kernel);
  }
  if (report_format != kReportFormat) throw Error("unsupported report format '" + report_format + "'");
}

namespace {

const char* method_name(Method m) { return m == Method::spc ? "spc" : "mspc"; }

Method parse_method(const std::string& s) {
  if (s == "spc") return Method::spc;
  if (s == "mspc") return Method::mspc;
  throw Error("unknown method '" + s + "'");
}

ordered_json spc_to_json(const SpcConfig& c) {
  ordered_json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["clusters"] = c.clusters;
  j["max_iters"] = c.max_iters;
  j["rel_tol"] = c.rel_tol;
  j["adapt_beta"] = c.adapt_beta;
  j["seed"] = c.seed;
  return j;
}

// Missing keys keep their defaults.
template <typename T>
void read_opt(const ordered_json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

SpcConfig spc_from_json(const ordered_json& j) {
  SpcConfig c;
  read_opt(j, "alpha", c.alpha);
  read_opt(j, "beta", c.beta);
  read_opt(j, "gamma", c.gamma);
  read_opt(j, "clusters", c.clusters);
  read_opt(j, "max_iters", c.max_iters);
  read_opt(j, "rel_tol", c.rel_tol);
  read_opt(j, "adapt_beta", c.adapt_beta);
  read_opt(j, "seed", c.seed);
  return c;
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  ordered_json data;
  if (c.data_path) {
    data["path"] = *c.data_path;
    if (c.labels_path) data["labels"] = *c.labels_path;
  }
  if (c.moons) {
    data["two_moons"] = {{"samples", c.moons->samples}, {"noise", c.moons->noise}, {"seed", c.moons->seed}};
  }
  j["data"] = data;
  j["method"] = method_name(c.method);
  j["kernel"] = c.kernel;
  j["normalize"] = c.normalize;
  j["spc"] = spc_to_json(c.spc);
  j["metrics"] = c.metrics;
  j["save_graph"] = c.save_graph;
  j["plot"] = c.plot;
  j["out_dir"] = c.out_dir;
  j["report_format"] = c.report_format;
  return j;
}

ExperimentConfig config_from_json(const ordered_json& j) {
  ExperimentConfig c;
  if (j.contains("data")) {
    const auto& data = j.at("data");
    if (data.contains("path")) c.data_path = data.at("path").get<std::string>();
    if (data.contains("labels")) c.labels_path = data.at("labels").get<std::string>();
    if (data.contains("two_moons")) {
      MoonsSource m;
      const auto& tm = data.at("two_moons");
      read_opt(tm, "samples", m.samples);
      read_opt(tm, "noise", m.noise);
      read_opt(tm, "seed", m.seed);
      c.moons = m;
    }
  }
  if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
  read_opt(j, "kernel", c.kernel);
  read_opt(j, "normalize", c.normalize);
  if (j.contains("spc")) c.spc = spc_from_json(j.at("spc"));
  read_opt(j, "metrics", c.metrics);
  read_opt(j, "save_graph", c.save_graph);
  read_opt(j, "plot", c.plot);
  read_opt(j, "out_dir", c.out_dir);
  read_opt(j, "report_format", c.report_format);
  return c;
}

// JSON has no NaN/inf; the objective of a valid run is always finite, but a
// relative change can be infinite when the previous graph was all zero.
ordered_json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double number_from(const ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

ordered_json doubles_to_json(const std::vector<double>& v) {
  ordered_json arr = ordered_json::array();
  for (double d : v) arr.push_back(number_or_string(d));
  return arr;
}

std::vector<double> doubles_from_json(const ordered_json& j) {
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number_from(e));
  return out;
}

ExperimentConfig parse_config_text(std::string_view text) {
  try {
    return config_from_json(ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid experiment config: ") + e.what());
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) { return parse_config_text(json_text); }

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_config_text(read_file(path));
}

std::string format_experiment_config(const ExperimentConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

std::string format_report(const RunReport& r, bool include_timings) {
  ordered_json j;
  j["format"] = r.format;
  j["config"] = config_to_json(r.config);
  ordered_json result;
  result["samples"] = r.samples;
  result["clusters"] = r.clusters;
  result["component_count"] = r.component_count;
  result["iterations"] = r.iterations;
  result["converged"] = r.converged;
  result["tolerance_reached"] = r.tolerance_reached;
  result["final_beta"] = r.final_beta;
  j["result"] = result;
  if (r.metrics) {
    j["metrics"] = {{"accuracy", r.metrics->accuracy}, {"nmi", r.metrics->nmi}, {"purity", r.metrics->purity}};
  }
  if (r.kernel_weights) {
    ordered_json k;
    if (r.kernel_names) k["names"] = *r.kernel_names;
    k["weights"] = doubles_to_json(*r.kernel_weights);
    j["kernels"] = k;
  }
  j["trace"] = {{"objective", doubles_to_json(r.objective_trace)},
                {"rel_change", doubles_to_json(r.rel_change_trace)},
                {"zero_eigenvalues", r.zero_eigenvalue_trace}};
  if (include_timings) {
    j["timings"] = {{"total_seconds", r.timings.total_seconds},
                    {"iteration_seconds", doubles_to_json(r.timings.iteration_seconds)}};
  }
  return j.dump(2) + "\n";
}

RunReport parse_report(std::string_view json_text) {
  try {
    const ordered_json j = ordered_json::parse(json_text);
    RunReport r;
    r.format = j.at("format").get<std::string>();
    if (r.format != kReportFormat) throw Error("unsupported report format '" + r.format + "'");
    r.config = config_from_json(j.at("config"));
    const auto& res = j.at("result");
    r.samples = res.at("samples").get<int>();
    r.clusters = res.at("clusters").get<int>();
    r.component_count = res.at("component_count").get<int>();
    r.iterations = res.at("iterations").get<int>();
    r.converged = res.at("converged").get<bool>();
    r.tolerance_reached = res.at("tolerance_reached").get<bool>();
    r.final_beta = res.at("final_beta").get<double>();
    if (j.contains("metrics")) {
      const auto& m = j.at("metrics");
      r.metrics = MetricScores{m.at("accuracy").get<double>(), m.at("nmi").get<double>(), m.at("purity").get<double>()};
    }
    if (j.contains("kernels")) {
      const auto& k = j.at("kernels");
      r.kernel_weights = doubles_from_json(k.at("weights"));
      if (k.contains("names")) r.kernel_names = k.at("names").get<std::vector<std::string>>();
    }
    const auto& t = j.at("trace");
    r.objective_trace = doubles_from_json(t.at("objective"));
    r.rel_change_trace = doubles_from_json(t.at("rel_change"));
    r.zero_eigenvalue_trace = t.at("zero_eigenvalues").get<std::vector<int>>();
    if (j.contains("timings")) {
      const auto& tm = j.at("timings");
      r.timings.total_seconds = tm.at("total_seconds").get<double>();
      r.timings.iteration_seconds = doubles_from_json(tm.at("iteration_seconds"));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid report: ") + e.what());
  }
}

}  // namespace spc
