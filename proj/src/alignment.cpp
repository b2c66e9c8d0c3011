#include "vdm/alignment.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SVD>

#include "vdm/errors.hpp"
#include "vdm/threading.hpp"

namespace vdm {

Eigen::MatrixXd closest_orthogonal(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[sigma.size() - 1] < 1e-12)
    throw NumericalError(
        "closest_orthogonal: rank-deficient input (tangent planes nearly "
        "orthogonal)");
  return svd.matrixU() * svd.matrixV().transpose();
}

AlignmentGraph align_frames(const TangentFrames& frames,
                            const NeighborGraph& graph,
                            const KernelSpec& kernel) {
  const int n = graph.n;
  if (frames.n() != n) throw DataError("align_frames: frames/graph size mismatch");

  AlignmentGraph out;
  out.n = n;
  out.d = frames.dim;
  out.radius = graph.radius;
  out.edges.resize(graph.edges.size());

  std::vector<char> keep(graph.edges.size(), 0);
  parallel_for(0, static_cast<int>(graph.edges.size()), [&](int e) {
    const auto& ge = graph.edges[e];
    const double w = kernel(ge.dist / graph.radius);
    if (w <= 0.0) return; // kernel support boundary
    Eigen::MatrixXd cross =
        frames.basis[ge.i].transpose() * frames.basis[ge.j];
    Eigen::MatrixXd rot;
    try {
      rot = closest_orthogonal(cross);
    } catch (const NumericalError&) {
      throw NumericalError("align_frames: edge (" + std::to_string(ge.i) +
                           "," + std::to_string(ge.j) +
                           ") is ill-conditioned (tangent planes nearly "
                           "orthogonal)");
    }
    out.edges[e] = AlignmentGraph::Edge{ge.i, ge.j, w, std::move(rot)};
    keep[e] = 1;
  });

  std::size_t used = 0;
  for (std::size_t e = 0; e < out.edges.size(); ++e)
    if (keep[e]) out.edges[used++] = std::move(out.edges[e]);
  out.edges.resize(used);

  out.degrees = Eigen::VectorXd::Zero(n);
  out.adjacency.resize(n);
  for (int e = 0; e < static_cast<int>(out.edges.size()); ++e) {
    const auto& edge = out.edges[e];
    out.degrees[edge.i] += edge.w;
    out.degrees[edge.j] += edge.w;
    out.adjacency[edge.i].push_back({edge.j, e});
    out.adjacency[edge.j].push_back({edge.i, e});
  }
  for (auto& adj : out.adjacency) std::sort(adj.begin(), adj.end());

  for (int i = 0; i < n; ++i)
    if (!(out.degrees[i] > 0.0))
      throw DataError("align_frames: point " + std::to_string(i) +
                      " has no aligned neighbors (degree 0)");
  return out;
}

} // namespace vdm
