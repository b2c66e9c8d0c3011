#include "vdm/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "vdm/errors.hpp"

namespace vdm {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open for reading: " + path);
  return in;
}

double parse_double(const std::string& field, const std::string& path,
                    std::size_t line) {
  const char* start = field.c_str();
  char* end = nullptr;
  const double value = std::strtod(start, &end);
  while (end && *end == ' ') ++end;
  if (end == start || (end && *end != '\0'))
    throw DataError(path + ": line " + std::to_string(line) +
                    ": cannot parse value '" + field + "'");
  return value;
}

} // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      bool header, const std::string& prefix) {
  auto out = open_out(path);
  if (header) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out << (c ? "," : "") << prefix << c;
    out << "\n";
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out << (c ? "," : "") << format_double(m(r, c));
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + path);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path, bool header,
                                bool allow_infinite) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  Eigen::Index cols = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (header && lineno == 1) continue;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
      row.push_back(parse_double(field, path, lineno));
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw DataError(path + ": line " + std::to_string(lineno) + ": expected " +
                      std::to_string(cols) + " columns, got " +
                      std::to_string(row.size()));
    }
    for (double v : row) {
      if (std::isnan(v))
        throw DataError(path + ": line " + std::to_string(lineno) +
                        ": NaN value");
      if (!allow_infinite && std::isinf(v))
        throw DataError(path + ": line " + std::to_string(lineno) +
                        ": non-finite value");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": empty file");
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

void write_point_cloud_csv(const std::string& path, const PointCloud& cloud,
                           bool header) {
  cloud.validate();
  write_matrix_csv(path, cloud.points, header, "x");
}

PointCloud read_point_cloud_csv(const std::string& path, bool header) {
  PointCloud cloud{read_matrix_csv(path, header)};
  cloud.validate();
  return cloud;
}

void write_distances_csv(const std::string& path, const Eigen::VectorXd& dist) {
  for (Eigen::Index i = 0; i < dist.size(); ++i)
    if (std::isnan(dist[i]))
      throw DataError("write_distances_csv: NaN distance at row " +
                      std::to_string(i));
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < dist.size(); ++i)
    out << format_double(dist[i]) << "\n";
  if (!out) throw DataError("write failed: " + path);
}

Eigen::VectorXd read_distances_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path, false, true);
  if (m.cols() != 1)
    throw DataError(path + ": expected a single column of distances");
  return m.col(0);
}

void write_spectrum_json(const std::string& path, const Spectrum& spectrum,
                         const MultiplicityProfile* profile) {
  json doc;
  doc["eigenvalues"] = std::vector<double>(
      spectrum.values.data(), spectrum.values.data() + spectrum.size());
  doc["residuals"] = std::vector<double>(
      spectrum.residuals.data(), spectrum.residuals.data() + spectrum.size());
  doc["groups"] = json::array();
  if (profile) {
    for (const auto& g : profile->groups)
      doc["groups"].push_back(json::array({g.representative, g.count}));
  }
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

SpectrumFile read_spectrum_json(const std::string& path) {
  auto in = open_in(path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  SpectrumFile file;
  const auto values = doc.at("eigenvalues").get<std::vector<double>>();
  const auto residuals = doc.at("residuals").get<std::vector<double>>();
  file.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
  file.residuals =
      Eigen::Map<const Eigen::VectorXd>(residuals.data(), residuals.size());
  for (const auto& g : doc.at("groups"))
    file.groups.push_back({g.at(0).get<double>(), g.at(1).get<int>()});
  return file;
}

void write_vdm_embedding(const std::string& csv_path,
                         const std::string& sidecar_path,
                         const VdmEmbedding& emb) {
  write_matrix_csv(csv_path, emb.coords);
  json doc;
  doc["t"] = emb.t;
  doc["delta"] = emb.delta;
  doc["m"] = emb.m;
  doc["normalized"] = emb.normalized;
  auto out = open_out(sidecar_path);
  out << doc.dump(2) << "\n";
}

VdmEmbedding read_vdm_embedding(const std::string& csv_path,
                                const std::string& sidecar_path) {
  VdmEmbedding emb;
  emb.coords = read_matrix_csv(csv_path);
  auto in = open_in(sidecar_path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError(sidecar_path + ": " + e.what());
  }
  emb.t = doc.at("t").get<double>();
  emb.delta = doc.at("delta").get<double>();
  emb.m = doc.at("m").get<int>();
  emb.normalized = doc.at("normalized").get<bool>();
  if (emb.coords.cols() != emb.m * (emb.m + 1) / 2)
    throw DataError(csv_path + ": column count does not match m(m+1)/2");
  return emb;
}

void write_manifest(const std::string& path, const Manifest& manifest) {
  json doc;
  doc["schema_version"] = manifest.schema_version;
  doc["manifold"] = {{"kind", manifold_kind_name(manifest.manifold.kind)},
                     {"dim", manifest.manifold.dim},
                     {"n", manifest.manifold.n},
                     {"seed", manifest.manifold.seed},
                     {"sampling", sampling_mode_name(manifest.manifold.sampling)}};
  if (manifest.input_csv) doc["input_csv"] = *manifest.input_csv;
  json params;
  params["eps_pca"] = manifest.eps_pca;
  params["eps"] = manifest.eps;
  params["alpha"] = manifest.alpha;
  params["t"] = manifest.t;
  params["delta"] = manifest.delta;
  params["gamma"] = manifest.gamma;
  params["tau"] = manifest.tau;
  params["kernel_pca"] = manifest.kernel_pca;
  params["kernel_w"] = manifest.kernel_w;
  if (manifest.fixed_dim) params["fixed_dim"] = *manifest.fixed_dim;
  params["num_eigs"] = manifest.num_eigs;
  params["normalized"] = manifest.normalized;
  params["seed"] = manifest.seed;
  doc["params"] = params;
  doc["artifacts"] = manifest.artifacts;
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

Manifest read_manifest(const std::string& path) {
  auto in = open_in(path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  Manifest manifest;
  const int version = doc.at("schema_version").get<int>();
  if (version != manifest.schema_version)
    throw DataError(path + ": unsupported schema_version " +
                    std::to_string(version));
  const auto& mdoc = doc.at("manifold");
  manifest.manifold.kind = parse_manifold_kind(mdoc.at("kind").get<std::string>());
  manifest.manifold.dim = mdoc.at("dim").get<int>();
  manifest.manifold.n = mdoc.at("n").get<int>();
  manifest.manifold.seed = mdoc.at("seed").get<std::uint64_t>();
  manifest.manifold.sampling =
      parse_sampling_mode(mdoc.at("sampling").get<std::string>());
  if (doc.contains("input_csv"))
    manifest.input_csv = doc.at("input_csv").get<std::string>();
  const auto& params = doc.at("params");
  manifest.eps_pca = params.at("eps_pca").get<double>();
  manifest.eps = params.at("eps").get<double>();
  manifest.alpha = params.at("alpha").get<double>();
  manifest.t = params.at("t").get<double>();
  manifest.delta = params.at("delta").get<double>();
  manifest.gamma = params.at("gamma").get<double>();
  manifest.tau = params.at("tau").get<double>();
  manifest.kernel_pca = params.at("kernel_pca").get<std::string>();
  manifest.kernel_w = params.at("kernel_w").get<std::string>();
  if (params.contains("fixed_dim"))
    manifest.fixed_dim = params.at("fixed_dim").get<int>();
  manifest.num_eigs = params.at("num_eigs").get<int>();
  manifest.normalized = params.at("normalized").get<bool>();
  manifest.seed = params.at("seed").get<std::uint64_t>();
  if (doc.contains("artifacts"))
    manifest.artifacts =
        doc.at("artifacts").get<std::map<std::string, std::string>>();
  return manifest;
}

} // namespace vdm
