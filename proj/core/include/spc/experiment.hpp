#pragma once

#include "spc/moons.hpp"
#include "spc/spc.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spc {

inline constexpr std::string_view kReportFormat = "spc-report/1";

enum class Method { spc, mspc };

struct MoonsSource {
  int samples = kDefaultMoonsSamples;
  double noise = kDefaultMoonsNoise;
  std::uint64_t seed = kDefaultMoonsSeed;
  bool operator==(const MoonsSource&) const = default;
};

struct ExperimentConfig {
  // Exactly one of data_path / moons.
  std::optional<std::string> data_path;
  std::optional<std::string> labels_path;
  std::optional<MoonsSource> moons;

  Method method = Method::spc;
  std::string kernel = "gaussian:10";  // a kernel spec, or "bank"
  bool normalize = true;
  SpcConfig spc;
  bool metrics = true;
  bool save_graph = false;
  bool plot = false;
  std::string out_dir = "spc-out";
  std::string report_format = std::string(kReportFormat);

  /// Source exclusivity, kernel syntax and file existence.
  void validate() const;
};

bool operator==(const SpcConfig& a, const SpcConfig& b);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

struct MetricScores {
  double accuracy = 0.0;
  double nmi = 0.0;
  double purity = 0.0;
  bool operator==(const MetricScores&) const = default;
};

struct RunTimings {
  double total_seconds = 0.0;
  std::vector<double> iteration_seconds;
  bool operator==(const RunTimings&) const = default;
};

struct RunReport {
  std::string format = std::string(kReportFormat);
  ExperimentConfig config;
  int samples = 0;
  int clusters = 0;
  int component_count = 0;
  std::optional<MetricScores> metrics;  // present iff ground truth was available
  std::optional<std::vector<double>> kernel_weights;
  std::optional<std::vector<std::string>> kernel_names;
  int iterations = 0;
  bool converged = false;
  bool tolerance_reached = false;
  double final_beta = 0.0;
  std::vector<double> objective_trace;
  std::vector<double> rel_change_trace;
  std::vector<int> zero_eigenvalue_trace;
  RunTimings timings;

  bool operator==(const RunReport&) const;
};

/// Round to 6 fractional digits, as stored in reports.
double round_metric(double v);

ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string format_experiment_config(const ExperimentConfig& cfg);

/// JSON text; `include_timings = false` drops the timings section.
std::string format_report(const RunReport& report, bool include_timings = true);
RunReport parse_report(std::string_view json_text);

/// Loads or generates data, builds kernels, runs SPC or mSPC, scores
/// against ground truth when present, and writes report.json, labels.txt
/// (plus graph.csv / scatter.svg when requested) into cfg.out_dir.
RunReport run_experiment(const ExperimentConfig& cfg);

}  // namespace spc
