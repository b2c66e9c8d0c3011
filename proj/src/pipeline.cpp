#include "vdm/pipeline.hpp"

#include <cmath>

#include "vdm/errors.hpp"

namespace vdm {

namespace {

bool has_boundary(ManifoldKind kind) {
  return kind == ManifoldKind::interval || kind == ManifoldKind::square;
}

} // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult result;

  if (config.input_csv) {
    result.cloud = read_point_cloud_csv(*config.input_csv);
  } else {
    result.cloud = sample(config.manifold);
  }

  double eps_pca = config.eps_pca;
  if (!(eps_pca > 0.0)) {
    if (config.input_csv)
      throw DataError("run_pipeline: --eps-pca is required for external clouds");
    const int d = config.fixed_dim ? *config.fixed_dim
                                   : config.manifold.intrinsic_dim();
    const double rate = has_boundary(config.manifold.kind)
                            ? -2.0 / (d + 1)
                            : -2.0 / (d + 2);
    eps_pca = std::pow(static_cast<double>(result.cloud.n()), rate);
  }
  result.eps_pca = eps_pca;

  result.pca_graph = build_neighbor_graph(result.cloud, std::sqrt(eps_pca));
  auto pca = local_pca(result.cloud, result.pca_graph, config.kernel_pca,
                       config.gamma, config.fixed_dim);
  result.report = std::move(pca.report);
  result.frames = std::move(pca.frames);

  double eps = config.eps;
  if (!(eps > 0.0)) {
    const int d = result.frames.dim;
    eps = std::pow(eps_pca, static_cast<double>(d + 1) / (d + 4));
  }
  result.eps = eps;

  result.w_graph = build_neighbor_graph(result.cloud, std::sqrt(eps));
  result.agraph = align_frames(result.frames, result.w_graph, config.kernel_w);
  result.op = build_operator(result.agraph, config.alpha);

  const int m = std::min(config.num_eigs, result.op.size());
  result.spectrum = eigensolve(result.op, m, config.seed, config.solver);
  result.profile = detect_multiplicities(result.spectrum, config.tau);

  if (config.repair_auto) {
    result.spectrum = repair_degeneracy(result.spectrum, result.profile.counts());
  } else if (!config.repair_groups.empty()) {
    result.spectrum = repair_degeneracy(result.spectrum, config.repair_groups);
  }
  return result;
}

VdmEmbedding pipeline_embedding(const PipelineConfig& config,
                                const PipelineResult& result) {
  return vdm_embed(result.spectrum, config.t, config.delta, config.normalized,
                   result.op.deg_alpha);
}

Manifest manifest_from_config(const PipelineConfig& config,
                              const PipelineResult& result) {
  Manifest manifest;
  manifest.manifold = config.manifold;
  manifest.input_csv = config.input_csv;
  manifest.eps_pca = result.eps_pca;
  manifest.eps = result.eps;
  manifest.alpha = config.alpha;
  manifest.t = config.t;
  manifest.delta = config.delta;
  manifest.gamma = config.gamma;
  manifest.tau = config.tau;
  manifest.kernel_pca = config.kernel_pca.name();
  manifest.kernel_w = config.kernel_w.name();
  manifest.fixed_dim = config.fixed_dim;
  manifest.num_eigs = config.num_eigs;
  manifest.normalized = config.normalized;
  manifest.seed = config.seed;
  return manifest;
}

PipelineConfig config_from_manifest(const Manifest& manifest) {
  PipelineConfig config;
  config.manifold = manifest.manifold;
  config.input_csv = manifest.input_csv;
  config.eps_pca = manifest.eps_pca;
  config.eps = manifest.eps;
  config.alpha = manifest.alpha;
  config.t = manifest.t;
  config.delta = manifest.delta;
  config.gamma = manifest.gamma;
  config.tau = manifest.tau;
  config.kernel_pca = KernelSpec::parse(manifest.kernel_pca);
  config.kernel_w = KernelSpec::parse(manifest.kernel_w);
  config.fixed_dim = manifest.fixed_dim;
  config.num_eigs = manifest.num_eigs;
  config.normalized = manifest.normalized;
  config.seed = manifest.seed;
  return config;
}

} // namespace vdm
