// Command-line front end: data generation, kernel construction, SPC / mSPC
// runs, metric evaluation and scatter plots.

#include "spc/eval.hpp"
#include "spc/experiment.hpp"
#include "spc/kernels.hpp"
#include "spc/matrix_io.hpp"
#include "spc/moons.hpp"
#include "spc/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct RunFlags {
  std::string config;
  std::string data;
  std::string labels;
  bool moons = false;
  int moons_samples = spc::kDefaultMoonsSamples;
  double moons_noise = spc::kDefaultMoonsNoise;
  std::uint64_t moons_seed = spc::kDefaultMoonsSeed;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int clusters = 0;
  std::string kernel;
  int max_iters = 0;
  double rel_tol = 0.0;
  bool adapt_beta = false;
  bool no_normalize = false;
  bool save_graph = false;
  bool plot = false;
  std::string out;
};

struct RunOptions {
  RunFlags flags;
  CLI::Option* seed = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* clusters = nullptr;
  CLI::Option* kernel = nullptr;
  CLI::Option* max_iters = nullptr;
  CLI::Option* rel_tol = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* moons_samples = nullptr;
  CLI::Option* moons_noise = nullptr;
  CLI::Option* moons_seed = nullptr;
};

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  RunFlags& f = o.flags;
  cmd->add_option("--config", f.config, "JSON experiment config; flags override its values")
      ->check(CLI::ExistingFile);
  cmd->add_option("--data", f.data, "dense matrix file, one sample per column")->check(CLI::ExistingFile);
  cmd->add_option("--labels", f.labels, "ground-truth labels file")->check(CLI::ExistingFile);
  cmd->add_flag("--moons", f.moons, "use the two-moons generator as the data source");
  o.moons_samples = cmd->add_option("--moons-n", f.moons_samples, "two-moons sample count");
  o.moons_noise = cmd->add_option("--moons-noise", f.moons_noise, "two-moons noise sigma");
  o.moons_seed = cmd->add_option("--moons-seed", f.moons_seed, "two-moons generator seed");
  o.seed = cmd->add_option("--seed", f.seed, "seed for the random initial graph");
  o.alpha = cmd->add_option("--alpha", f.alpha, "similarity-preserving weight (>= 1)");
  o.beta = cmd->add_option("--beta", f.beta, "Laplacian rank weight");
  o.gamma = cmd->add_option("--gamma", f.gamma, "Frobenius regularizer");
  o.clusters = cmd->add_option("--clusters", f.clusters, "number of clusters c");
  o.kernel = cmd->add_option("--kernel", f.kernel, "gaussian:t | rbf:t | poly:a,b | linear | bank");
  o.max_iters = cmd->add_option("--max-iters", f.max_iters, "outer iteration cap");
  o.rel_tol = cmd->add_option("--rel-tol", f.rel_tol, "stop when the relative change of Z drops below this");
  cmd->add_flag("--adapt-beta", f.adapt_beta, "double/halve beta until the graph has c components");
  cmd->add_flag("--no-normalize", f.no_normalize, "skip min-max normalization of a single kernel");
  cmd->add_flag("--save-graph", f.save_graph, "write the learned graph to graph.csv");
  cmd->add_flag("--plot", f.plot, "write scatter.svg for 2-D data");
  o.out = cmd->add_option("--out", f.out, "output directory");
}

spc::ExperimentConfig resolve_config(const RunOptions& o, spc::Method method) {
  const RunFlags& f = o.flags;
  spc::ExperimentConfig cfg;
  if (method == spc::Method::mspc) cfg.kernel = "bank";
  if (!f.config.empty()) cfg = spc::load_experiment_config(f.config);
  cfg.method = method;

  if (!f.data.empty()) {
    cfg.data_path = f.data;
    cfg.moons.reset();
  }
  if (!f.labels.empty()) cfg.labels_path = f.labels;
  if (f.moons || o.moons_samples->count() || o.moons_noise->count() || o.moons_seed->count()) {
    spc::MoonsSource m = cfg.moons.value_or(spc::MoonsSource{});
    if (o.moons_samples->count()) m.samples = f.moons_samples;
    if (o.moons_noise->count()) m.noise = f.moons_noise;
    if (o.moons_seed->count()) m.seed = f.moons_seed;
    cfg.moons = m;
    cfg.data_path.reset();
    cfg.labels_path.reset();
  }
  if (o.seed->count()) cfg.spc.seed = f.seed;
  if (o.alpha->count()) cfg.spc.alpha = f.alpha;
  if (o.beta->count()) cfg.spc.beta = f.beta;
  if (o.gamma->count()) cfg.spc.gamma = f.gamma;
  if (o.clusters->count()) cfg.spc.clusters = f.clusters;
  if (o.kernel->count()) cfg.kernel = f.kernel;
  if (o.max_iters->count()) cfg.spc.max_iters = f.max_iters;
  if (o.rel_tol->count()) cfg.spc.rel_tol = f.rel_tol;
  if (f.adapt_beta) cfg.spc.adapt_beta = true;
  if (f.no_normalize) cfg.normalize = false;
  if (f.save_graph) cfg.save_graph = true;
  if (f.plot) cfg.plot = true;
  if (o.out->count()) cfg.out_dir = f.out;
  return cfg;
}

int run_clustering(const RunOptions& o, spc::Method method) {
  const spc::ExperimentConfig cfg = resolve_config(o, method);
  const spc::RunReport report = spc::run_experiment(cfg);
  std::printf("samples=%d clusters=%d components=%d iterations=%d converged=%s\n", report.samples,
              report.clusters, report.component_count, report.iterations, report.converged ? "yes" : "no");
  if (report.metrics) {
    std::printf("acc=%.6f nmi=%.6f purity=%.6f\n", report.metrics->accuracy, report.metrics->nmi,
                report.metrics->purity);
  }
  if (report.kernel_weights) {
    for (std::size_t i = 0; i < report.kernel_weights->size(); ++i) {
      std::printf("w[%zu] %-16s %.6g\n", i, (*report.kernel_names)[i].c_str(), (*report.kernel_weights)[i]);
    }
  }
  std::printf("report: %s\n", (fs::path(cfg.out_dir) / "report.json").string().c_str());
  return report.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-preserving graph clustering"};
  app.require_subcommand(1);

  // gen-moons
  int moons_n = spc::kDefaultMoonsSamples;
  double moons_noise = spc::kDefaultMoonsNoise;
  std::uint64_t moons_seed = spc::kDefaultMoonsSeed;
  std::string moons_out = "moons";
  bool moons_plot = false;
  auto* gen = app.add_subcommand("gen-moons", "write a two-moons dataset (moons.csv + moons.labels)");
  gen->add_option("--n", moons_n, "sample count (even)");
  gen->add_option("--noise", moons_noise, "gaussian noise sigma");
  gen->add_option("--seed", moons_seed, "generator seed");
  gen->add_option("--out", moons_out, "output directory");
  gen->add_flag("--plot", moons_plot, "also write truth.svg");

  // build-kernels
  std::string bk_data;
  std::string bk_kernel = "bank";
  std::string bk_out = "kernels";
  bool bk_raw = false;
  auto* bk = app.add_subcommand("build-kernels", "compute kernel matrices for a dataset");
  bk->add_option("--data", bk_data, "dense matrix file")->required()->check(CLI::ExistingFile);
  bk->add_option("--kernel", bk_kernel, "gaussian:t | rbf:t | poly:a,b | linear | bank");
  bk->add_option("--out", bk_out, "output directory");
  bk->add_flag("--no-normalize", bk_raw, "skip min-max normalization (single kernel only)");

  RunOptions spc_opts;
  auto* spc_cmd = app.add_subcommand("spc", "single-kernel similarity-preserving clustering");
  add_run_flags(spc_cmd, spc_opts);
  RunOptions mspc_opts;
  auto* mspc_cmd = app.add_subcommand("mspc", "multiple-kernel similarity-preserving clustering");
  add_run_flags(mspc_cmd, mspc_opts);

  // eval
  std::string ev_pred;
  std::string ev_truth;
  std::string ev_data;
  int ev_kmeans = 0;
  std::uint64_t ev_seed = 0;
  auto* ev = app.add_subcommand("eval", "score predicted labels (or a k-means baseline) against ground truth");
  ev->add_option("--pred", ev_pred, "predicted labels file")->check(CLI::ExistingFile);
  ev->add_option("--truth", ev_truth, "ground-truth labels file")->required()->check(CLI::ExistingFile);
  ev->add_option("--data", ev_data, "dense matrix file (with --kmeans)")->check(CLI::ExistingFile);
  ev->add_option("--kmeans", ev_kmeans, "run Lloyd k-means with this k instead of reading --pred");
  ev->add_option("--seed", ev_seed, "k-means seed");

  // plot
  std::string pl_data;
  std::string pl_labels;
  std::string pl_out = "scatter.svg";
  auto* pl = app.add_subcommand("plot", "write an SVG scatter of 2-D data colored by label");
  pl->add_option("--data", pl_data, "dense matrix file")->required()->check(CLI::ExistingFile);
  pl->add_option("--labels", pl_labels, "labels file")->required()->check(CLI::ExistingFile);
  pl->add_option("--out", pl_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      const spc::Dataset x = spc::generate_two_moons(moons_n, moons_noise, moons_seed);
      const fs::path out(moons_out);
      spc::save_dataset(out / "moons.csv", x);
      if (moons_plot) spc::emit_scatter_svg(x, spc::Partition(*x.labels()), out / "truth.svg");
      std::printf("wrote %s\n", (out / "moons.csv").string().c_str());
      return kExitOk;
    }
    if (bk->parsed()) {
      const spc::Dataset x = spc::load_dense_matrix(bk_data);
      std::vector<spc::KernelMatrix> kernels;
      if (bk_kernel == "bank") {
        kernels = spc::build_standard_bank(x);
      } else {
        spc::KernelMatrix k = spc::make_kernel(x, spc::parse_kernel_spec(bk_kernel));
        kernels.push_back(bk_raw ? k : spc::normalize_kernel(k));
      }
      const fs::path out(bk_out);
      std::string index;
      for (std::size_t i = 0; i < kernels.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "kernel_%02zu.csv", i);
        spc::save_matrix(out / name, kernels[i].values());
        index += std::string(name) + "," + spc::to_string(kernels[i].spec) + "," +
                 (kernels[i].normalized ? "normalized" : "raw") + "\n";
      }
      spc::write_file_atomic(out / "kernels.txt", index);
      std::printf("wrote %zu kernel(s) to %s\n", kernels.size(), out.string().c_str());
      return kExitOk;
    }
    if (spc_cmd->parsed()) return run_clustering(spc_opts, spc::Method::spc);
    if (mspc_cmd->parsed()) return run_clustering(mspc_opts, spc::Method::mspc);
    if (ev->parsed()) {
      const spc::Partition truth = spc::Partition::canonical(spc::load_labels(ev_truth));
      spc::Partition pred;
      if (ev_kmeans > 0) {
        if (ev_data.empty()) throw spc::Error("--kmeans needs --data");
        pred = spc::lloyd_kmeans(spc::load_dense_matrix(ev_data), ev_kmeans, ev_seed).partition;
      } else {
        if (ev_pred.empty()) throw spc::Error("eval needs --pred or --kmeans");
        pred = spc::Partition::canonical(spc::load_labels(ev_pred));
      }
      std::printf("acc=%.6f nmi=%.6f purity=%.6f\n", spc::accuracy(pred, truth), spc::nmi(pred, truth),
                  spc::purity(pred, truth));
      return kExitOk;
    }
    if (pl->parsed()) {
      const spc::Dataset x = spc::load_dense_matrix(pl_data);
      spc::emit_scatter_svg(x, spc::Partition::canonical(spc::load_labels(pl_labels)), pl_out);
      std::printf("wrote %s\n", pl_out.c_str());
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
