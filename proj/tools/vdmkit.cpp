#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vdm/errors.hpp"
#include "vdm/geodesic.hpp"
#include "vdm/io.hpp"
#include "vdm/nystrom.hpp"
#include "vdm/pipeline.hpp"
#include "vdm/threading.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
  std::string manifest_path;
  std::string manifold = "sphere";
  int dim = 2;
  int n = 1000;
  std::uint64_t seed = 0;
  std::string sampling; // empty: default for the manifold
  std::string input_csv;
  double eps_pca = -1.0;
  double eps = -1.0;
  double alpha = 1.0;
  double gamma = 0.9;
  double t = 100.0;
  double delta = 0.2;
  double tau = 0.01;
  std::string kernel = "gaussian:5";
  std::string kernel_pca; // empty: same as kernel
  int frame_dim = 0;      // 0: estimate via gamma rule
  int num_eigs = 30;
  bool normalized = true;
  std::string repair; // "", "auto" or comma-separated group sizes
  int threads = 0;    // 0: keep VDMKIT_THREADS / default
};

void add_pipeline_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--manifest", o.manifest_path,
                  "load parameters from a manifest.json instead of flags");
  cmd->add_option("--manifold", o.manifold, "sphere|torus|interval|square");
  cmd->add_option("--dim", o.dim, "sphere dimension d");
  cmd->add_option("--n", o.n, "number of sample points");
  cmd->add_option("--seed", o.seed, "RNG seed (sampling and solver)");
  cmd->add_option("--sampling", o.sampling, "uniform|grid");
  cmd->add_option("--input", o.input_csv, "read the cloud from a CSV file");
  cmd->add_option("--eps-pca", o.eps_pca, "local PCA scale (radius^2)");
  cmd->add_option("--eps", o.eps,
                  "alignment scale; default eps_pca^((d+1)/(d+4))");
  cmd->add_option("--alpha", o.alpha, "density normalization exponent [0,1]");
  cmd->add_option("--gamma", o.gamma, "local PCA variance threshold");
  cmd->add_option("--t", o.t, "diffusion time");
  cmd->add_option("--delta", o.delta, "spectral truncation threshold");
  cmd->add_option("--tau", o.tau, "multiplicity grouping tolerance");
  cmd->add_option("--kernel", o.kernel, "epanechnikov|gaussian[:a]");
  cmd->add_option("--kernel-pca", o.kernel_pca,
                  "override the kernel for the local PCA stage");
  cmd->add_option("--frame-dim", o.frame_dim, "fixed tangent dimension");
  cmd->add_option("--num-eigs", o.num_eigs, "eigenpairs to compute");
  cmd->add_flag("--normalized,!--no-normalized", o.normalized,
                "use the degree-normalized mapping V' (default on)");
  cmd->add_option("--repair-degeneracy", o.repair,
                  "'auto' or comma-separated group sizes, e.g. 6,10,14");
  cmd->add_option("--threads", o.threads, "worker thread cap");
}

std::vector<int> parse_group_sizes(const std::string& arg) {
  std::vector<int> sizes;
  std::stringstream ss(arg);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      sizes.push_back(std::stoi(field));
    } catch (const std::exception&) {
      throw vdm::DataError("cannot parse group size '" + field + "'");
    }
  }
  if (sizes.empty()) throw vdm::DataError("empty group size list");
  return sizes;
}

vdm::PipelineConfig make_config(const CommonOpts& o) {
  vdm::PipelineConfig config;
  if (!o.manifest_path.empty()) {
    config = vdm::config_from_manifest(vdm::read_manifest(o.manifest_path));
  } else {
    config.manifold.kind = vdm::parse_manifold_kind(o.manifold);
    config.manifold.dim = o.dim;
    config.manifold.n = o.n;
    config.manifold.seed = o.seed;
    config.manifold.sampling =
        o.sampling.empty() ? vdm::ManifoldSpec::default_sampling(config.manifold.kind)
                           : vdm::parse_sampling_mode(o.sampling);
    if (!o.input_csv.empty()) config.input_csv = o.input_csv;
    config.eps_pca = o.eps_pca;
    config.eps = o.eps;
    config.alpha = o.alpha;
    config.gamma = o.gamma;
    config.t = o.t;
    config.delta = o.delta;
    config.tau = o.tau;
    config.kernel_w = vdm::KernelSpec::parse(o.kernel);
    config.kernel_pca = o.kernel_pca.empty()
                            ? config.kernel_w
                            : vdm::KernelSpec::parse(o.kernel_pca);
    if (o.frame_dim > 0) config.fixed_dim = o.frame_dim;
    config.num_eigs = o.num_eigs;
    config.normalized = o.normalized;
    config.seed = o.seed;
  }
  if (!o.repair.empty()) {
    if (o.repair == "auto")
      config.repair_auto = true;
    else
      config.repair_groups = parse_group_sizes(o.repair);
  }
  if (o.threads > 0) vdm::set_max_threads(o.threads);
  return config;
}

void print_summary(const vdm::PipelineConfig& config,
                   const vdm::PipelineResult& result) {
  std::cout << "n=" << result.cloud.n() << " p=" << result.cloud.ambient_dim()
            << " d_hat=" << result.dim() << " eps_pca=" << result.eps_pca
            << " eps=" << result.eps << " alpha=" << config.alpha
            << " edges=" << result.agraph.edges.size() << "\n";
  std::cout << "leading eigenvalue groups (tau=" << config.tau << "):";
  for (const auto& g : result.profile.groups)
    std::cout << " " << g.count << "@" << g.representative;
  std::cout << "\n";
}

int run_sample(const CommonOpts& o, const std::string& out_path, bool header) {
  vdm::ManifoldSpec spec;
  spec.kind = vdm::parse_manifold_kind(o.manifold);
  spec.dim = o.dim;
  spec.n = o.n;
  spec.seed = o.seed;
  spec.sampling = o.sampling.empty()
                      ? vdm::ManifoldSpec::default_sampling(spec.kind)
                      : vdm::parse_sampling_mode(o.sampling);
  const vdm::PointCloud cloud = vdm::sample(spec);
  vdm::write_point_cloud_csv(out_path, cloud, header);
  std::cout << "wrote " << cloud.n() << " points to " << out_path << "\n";
  return 0;
}

int run_pipeline_cmd(const CommonOpts& o, const std::string& out_dir) {
  const auto config = make_config(o);
  auto result = vdm::run_pipeline(config);

  fs::create_directories(out_dir);
  const auto path = [&out_dir](const std::string& name) {
    return (fs::path(out_dir) / name).string();
  };

  vdm::write_point_cloud_csv(path("cloud.csv"), result.cloud);
  vdm::write_spectrum_json(path("spectrum.json"), result.spectrum,
                           &result.profile);
  const auto embedding = vdm::pipeline_embedding(config, result);
  vdm::write_vdm_embedding(path("embedding.csv"), path("embedding.json"),
                           embedding);

  auto manifest = vdm::manifest_from_config(config, result);
  manifest.artifacts = {{"cloud", "cloud.csv"},
                        {"spectrum", "spectrum.json"},
                        {"embedding", "embedding.csv"},
                        {"embedding_meta", "embedding.json"}};
  vdm::write_manifest(path("manifest.json"), manifest);

  print_summary(config, result);
  std::cout << "m(t=" << config.t << ", delta=" << config.delta
            << ")=" << embedding.m << " embedded_dim=" << embedding.embedded_dim()
            << "\n";
  std::cout << "artifacts in " << out_dir << "\n";
  return 0;
}

int run_spectrum(const CommonOpts& o, const std::string& out_path) {
  const auto config = make_config(o);
  auto result = vdm::run_pipeline(config);
  vdm::write_spectrum_json(out_path, result.spectrum, &result.profile);
  print_summary(config, result);
  return 0;
}

int run_distances(const CommonOpts& o, const std::string& mode, int ref,
                  const std::string& out_path) {
  const auto config = make_config(o);
  auto result = vdm::run_pipeline(config);
  if (ref < 0 || ref >= result.cloud.n())
    throw vdm::DataError("reference index out of range");

  Eigen::VectorXd dist(result.cloud.n());
  if (mode == "geodesic") {
    dist = vdm::dijkstra(result.w_graph, ref).distances;
  } else if (mode == "dm") {
    const auto dm = vdm::dm_embed(result.agraph, config.t, config.delta,
                                  config.num_eigs, config.seed);
    for (int i = 0; i < result.cloud.n(); ++i)
      dist[i] = vdm::dm_distance(dm, ref, i);
  } else if (mode == "vdm" || mode == "vdm-norm") {
    const auto emb = vdm::vdm_embed(result.spectrum, config.t, config.delta,
                                    mode == "vdm-norm", result.op.deg_alpha);
    for (int i = 0; i < result.cloud.n(); ++i)
      dist[i] = vdm::vdm_distance(emb, ref, i);
  } else {
    throw vdm::DataError("unknown distance mode: " + mode);
  }
  vdm::write_distances_csv(out_path, dist);
  std::cout << "wrote " << dist.size() << " distances to " << out_path << "\n";
  return 0;
}

int run_compare(const CommonOpts& o, int ref, const std::string& out_path) {
  const auto config = make_config(o);
  auto result = vdm::run_pipeline(config);
  if (ref < 0 || ref >= result.cloud.n())
    throw vdm::DataError("reference index out of range");

  const auto emb = vdm::pipeline_embedding(config, result);
  const auto dm = vdm::dm_embed(result.agraph, config.t, config.delta,
                                config.num_eigs, config.seed);
  const auto geo = vdm::dijkstra(result.w_graph, ref);

  std::ofstream out(out_path);
  if (!out) throw vdm::DataError("cannot open for writing: " + out_path);
  out << "index,d_vdm,d_dm,d_geodesic\n";
  for (int i = 0; i < result.cloud.n(); ++i) {
    out << i << "," << vdm::format_double(vdm::vdm_distance(emb, ref, i)) << ","
        << vdm::format_double(vdm::dm_distance(dm, ref, i)) << ","
        << vdm::format_double(geo.distances[i]) << "\n";
  }
  std::cout << "wrote comparison table to " << out_path << "\n";
  return 0;
}

int run_extend(const CommonOpts& o, const std::string& queries_path,
               const std::string& field_path, double ext_delta,
               const std::string& out_path) {
  const auto config = make_config(o);
  auto result = vdm::run_pipeline(config);

  const Eigen::MatrixXd queries = vdm::read_matrix_csv(queries_path);
  const Eigen::MatrixXd ambient = vdm::read_matrix_csv(field_path);
  if (queries.cols() != result.cloud.ambient_dim())
    throw vdm::DataError("extend: query ambient dimension mismatch");

  vdm::ExtensionConfig cfg;
  cfg.delta = ext_delta;
  cfg.eps_pca = result.eps_pca;
  cfg.kernel_pca = config.kernel_pca;
  cfg.kernel_w = config.kernel_w;
  vdm::NystromExtender extender(result.cloud, result.frames, result.agraph,
                                result.spectrum, config.alpha, cfg);
  const auto field = extender.project_field(ambient);

  Eigen::MatrixXd extended(queries.rows(), queries.cols());
  for (Eigen::Index q = 0; q < queries.rows(); ++q)
    extended.row(q) = extender.extend(field, queries.row(q).transpose()).transpose();
  vdm::write_matrix_csv(out_path, extended);
  std::cout << "extended the field to " << queries.rows() << " points ("
            << extender.retained() << " eigen-vector-fields retained)\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"vector diffusion maps toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw a synthetic point cloud");
  std::string sample_out = "cloud.csv";
  bool sample_header = false;
  sample_cmd->add_option("--manifold", opts.manifold, "sphere|torus|interval|square");
  sample_cmd->add_option("--dim", opts.dim, "sphere dimension d");
  sample_cmd->add_option("--n", opts.n, "number of points")->required();
  sample_cmd->add_option("--seed", opts.seed, "RNG seed");
  sample_cmd->add_option("--sampling", opts.sampling, "uniform|grid");
  sample_cmd->add_option("-o,--output", sample_out, "output CSV path");
  sample_cmd->add_flag("--header", sample_header, "write a header row");

  // pipeline
  auto* pipeline_cmd =
      app.add_subcommand("pipeline", "run the full pipeline and write artifacts");
  std::string out_dir = "out";
  add_pipeline_flags(pipeline_cmd, opts);
  pipeline_cmd->add_option("--out-dir", out_dir, "artifact directory");

  // spectrum
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "run up to the eigensolve and emit JSON");
  std::string spectrum_out = "spectrum.json";
  add_pipeline_flags(spectrum_cmd, opts);
  spectrum_cmd->add_option("-o,--output", spectrum_out, "output JSON path");

  // distances
  auto* distances_cmd = app.add_subcommand(
      "distances", "distances from a reference point (vdm|vdm-norm|dm|geodesic)");
  std::string dist_mode;
  int ref = 0;
  std::string dist_out = "distances.csv";
  distances_cmd->add_option("mode", dist_mode, "vdm|vdm-norm|dm|geodesic")
      ->required();
  add_pipeline_flags(distances_cmd, opts);
  distances_cmd->add_option("--ref", ref, "reference point index");
  distances_cmd->add_option("-o,--output", dist_out, "output CSV path");

  // compare
  auto* compare_cmd = app.add_subcommand(
      "compare", "per-pair table of VDM, DM and geodesic distances");
  std::string compare_out = "compare.csv";
  add_pipeline_flags(compare_cmd, opts);
  compare_cmd->add_option("--ref", ref, "reference point index");
  compare_cmd->add_option("-o,--output", compare_out, "output CSV path");

  // extend
  auto* extend_cmd =
      app.add_subcommand("extend", "Nystrom extension of a sampled vector field");
  std::string queries_path, field_path;
  double ext_delta = 0.05;
  std::string extend_out = "extended.csv";
  add_pipeline_flags(extend_cmd, opts);
  extend_cmd->add_option("--queries", queries_path, "query points CSV")->required();
  extend_cmd->add_option("--field", field_path, "ambient field CSV (n x p)")
      ->required();
  extend_cmd->add_option("--ext-delta", ext_delta, "conditioning cutoff");
  extend_cmd->add_option("-o,--output", extend_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sample_cmd) return run_sample(opts, sample_out, sample_header);
    if (*pipeline_cmd) return run_pipeline_cmd(opts, out_dir);
    if (*spectrum_cmd) return run_spectrum(opts, spectrum_out);
    if (*distances_cmd) return run_distances(opts, dist_mode, ref, dist_out);
    if (*compare_cmd) return run_compare(opts, ref, compare_out);
    if (*extend_cmd)
      return run_extend(opts, queries_path, field_path, ext_delta, extend_out);
  } catch (const vdm::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vdm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
