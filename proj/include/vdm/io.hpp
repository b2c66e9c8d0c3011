#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "vdm/embedding.hpp"
#include "vdm/manifold.hpp"
#include "vdm/point_cloud.hpp"
#include "vdm/spectral.hpp"

namespace vdm {

/// Full-precision decimal formatting: read(write(x)) == x for every finite
/// double.
std::string format_double(double value);

/// Matrices are CSV (one row per line, %.17g fields); metadata is JSON.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      bool header = false, const std::string& prefix = "c");
Eigen::MatrixXd read_matrix_csv(const std::string& path, bool header = false,
                                bool allow_infinite = false);

void write_point_cloud_csv(const std::string& path, const PointCloud& cloud,
                           bool header = false);
PointCloud read_point_cloud_csv(const std::string& path, bool header = false);

/// One distance per row; +inf is legal (unreachable vertices), NaN is not.
void write_distances_csv(const std::string& path, const Eigen::VectorXd& dist);
Eigen::VectorXd read_distances_csv(const std::string& path);

void write_spectrum_json(const std::string& path, const Spectrum& spectrum,
                         const MultiplicityProfile* profile = nullptr);
struct SpectrumFile {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd residuals;
  std::vector<std::pair<double, int>> groups;
};
SpectrumFile read_spectrum_json(const std::string& path);

/// Embedding artifacts: coordinates CSV plus a JSON sidecar with
/// {t, delta, m, normalized}.
void write_vdm_embedding(const std::string& csv_path,
                         const std::string& sidecar_path,
                         const VdmEmbedding& emb);
VdmEmbedding read_vdm_embedding(const std::string& csv_path,
                                const std::string& sidecar_path);

/// Reproducibility manifest for one pipeline run.
struct Manifest {
  int schema_version = 1;
  ManifoldSpec manifold;
  std::optional<std::string> input_csv; // external cloud instead of a sampler
  double eps_pca = 0.0;
  double eps = 0.0;
  double alpha = 1.0;
  double t = 100.0;
  double delta = 0.2;
  double gamma = 0.9;
  double tau = 0.01;
  std::string kernel_pca = "gaussian:5";
  std::string kernel_w = "gaussian:5";
  std::optional<int> fixed_dim;
  int num_eigs = 30;
  bool normalized = true;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> artifacts; // name -> relative path
};

void write_manifest(const std::string& path, const Manifest& manifest);
Manifest read_manifest(const std::string& path);

} // namespace vdm
