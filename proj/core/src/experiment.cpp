#include "spc/experiment.hpp"

#include "spc/eval.hpp"
#include "spc/kernels.hpp"
#include "spc/matrix_io.hpp"
#include "spc/mkl.hpp"
#include "spc/svg.hpp"

#include <chrono>
#include <filesystem>

namespace spc {

namespace fs = std::filesystem;

namespace {

Dataset load_source(const ExperimentConfig& cfg) {
  if (cfg.moons) return generate_two_moons(cfg.moons->samples, cfg.moons->noise, cfg.moons->seed);
  std::optional<fs::path> labels;
  if (cfg.labels_path) labels = fs::path(*cfg.labels_path);
  return load_dense_matrix(*cfg.data_path, labels);
}

KernelMatrix single_kernel(const Dataset& x, const ExperimentConfig& cfg) {
  KernelMatrix k = make_kernel(x, parse_kernel_spec(cfg.kernel));
  return cfg.normalize ? normalize_kernel(k) : k;
}

void fill_trace(RunReport& report, const ClusteringResult& result) {
  for (const IterationRecord& rec : result.trace.iterations) {
    report.objective_trace.push_back(rec.objective);
    report.rel_change_trace.push_back(rec.rel_change);
    report.zero_eigenvalue_trace.push_back(rec.zero_eigenvalues);
    report.timings.iteration_seconds.push_back(rec.seconds);
  }
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  const Dataset x = load_source(cfg);

  RunReport report;
  report.config = cfg;
  report.samples = static_cast<int>(x.samples());
  report.clusters = cfg.spc.clusters;

  ClusteringResult result;
  if (cfg.method == Method::spc) {
    result = run_spc(single_kernel(x, cfg), cfg.spc);
  } else {
    std::vector<KernelMatrix> bank;
    std::vector<std::string> names;
    if (cfg.kernel == "bank") {
      bank = build_standard_bank(x);
    } else {
      bank.push_back(single_kernel(x, cfg));
    }
    for (const KernelMatrix& k : bank) names.push_back(to_string(k.spec));
    MspcResult mspc = run_mspc(bank, cfg.spc);
    result = std::move(mspc.clustering);
    report.kernel_weights = std::vector<double>(mspc.state.weights.begin(), mspc.state.weights.end());
    report.kernel_names = std::move(names);
  }

  report.component_count = result.component_count;
  report.iterations = static_cast<int>(result.trace.iterations.size());
  report.converged = result.converged;
  report.tolerance_reached = result.tolerance_reached;
  report.final_beta = result.final_beta;
  fill_trace(report, result);

  const Partition predicted = Partition::canonical(result.labels);
  if (cfg.metrics && x.labels()) {
    const Partition truth = Partition::canonical(*x.labels());
    report.metrics = MetricScores{round_metric(accuracy(predicted, truth)), round_metric(nmi(predicted, truth)),
                                  round_metric(purity(predicted, truth))};
  }

  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  save_labels(out / "labels.txt", predicted.labels());
  if (cfg.save_graph) save_matrix(out / "graph.csv", result.graph.values());
  if (cfg.plot && x.features() == 2) emit_scatter_svg(x, predicted, out / "scatter.svg");

  report.timings.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file_atomic(out / "report.json", format_report(report));
  return report;
}

}  // namespace spc
