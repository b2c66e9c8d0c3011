#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vdm/alignment.hpp"
#include "vdm/embedding.hpp"
#include "vdm/io.hpp"
#include "vdm/local_pca.hpp"
#include "vdm/manifold.hpp"
#include "vdm/neighbor_graph.hpp"
#include "vdm/spectral.hpp"
#include "vdm/vdm_operator.hpp"

namespace vdm {

/// End-to-end configuration: sample -> frames -> align -> operator ->
/// spectrum. Non-positive eps_pca/eps select the default schedules
/// (eps_pca = n^(-2/(d+2)) closed, n^(-2/(d+1)) with boundary;
/// eps = eps_pca^((d+1)/(d+4)) with the estimated d).
struct PipelineConfig {
  ManifoldSpec manifold;
  std::optional<std::string> input_csv;
  double eps_pca = -1.0;
  double eps = -1.0;
  double alpha = 1.0;
  double gamma = 0.9;
  double t = 100.0;
  double delta = 0.2;
  double tau = 0.01;
  KernelSpec kernel_pca = KernelSpec::gaussian();
  KernelSpec kernel_w = KernelSpec::gaussian();
  std::optional<int> fixed_dim;
  int num_eigs = 30;
  bool normalized = true;
  bool repair_auto = false;        // repair using the detected groups
  std::vector<int> repair_groups;  // or these explicit group sizes
  std::uint64_t seed = 0;
  SolverOptions solver;
};

struct PipelineResult {
  PointCloud cloud;
  NeighborGraph pca_graph;
  NeighborGraph w_graph;
  LocalPcaReport report;
  TangentFrames frames;
  AlignmentGraph agraph;
  VdmOperator op;
  Spectrum spectrum; // after degeneracy repair, when requested
  MultiplicityProfile profile;
  double eps_pca = 0.0;
  double eps = 0.0;

  int dim() const { return frames.dim; }
};

PipelineResult run_pipeline(const PipelineConfig& config);

/// Embedding with the configured t/delta/normalization.
VdmEmbedding pipeline_embedding(const PipelineConfig& config,
                                const PipelineResult& result);

Manifest manifest_from_config(const PipelineConfig& config,
                              const PipelineResult& result);
PipelineConfig config_from_manifest(const Manifest& manifest);

} // namespace vdm
