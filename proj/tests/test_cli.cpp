#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "test_support.hpp"
#include "vdm/io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("vdmcli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(VDMKIT_BIN) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe))
    output.append(buf, got);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("sample writes the expected interval grid") {
  TempDir dir;
  const auto out = dir.file("i.csv");
  const auto result = run("sample --manifold interval --n 3 -o " + out);
  CHECK(result.exit_code == 0);
  const auto cloud = vdm::read_point_cloud_csv(out);
  REQUIRE(cloud.n() == 3);
  CHECK(cloud.points(0, 0) == -M_PI);
  CHECK(cloud.points(2, 0) == M_PI);
}

TEST_CASE("sample --n 5000 interval is an equally spaced grid") {
  TempDir dir;
  const auto out = dir.file("grid.csv");
  const auto result = run("sample --manifold interval --n 5000 -o " + out);
  CHECK(result.exit_code == 0);
  const auto cloud = vdm::read_point_cloud_csv(out);
  REQUIRE(cloud.n() == 5000);
  const double spacing = 2.0 * M_PI / 4999.0;
  for (int i = 1; i < 5000; ++i)
    CHECK(cloud.points(i, 0) - cloud.points(i - 1, 0) ==
          doctest::Approx(spacing).epsilon(1e-12));
}

TEST_CASE("sampling is byte-deterministic for a fixed seed") {
  TempDir dir;
  const auto a = dir.file("a.csv");
  const auto b = dir.file("b.csv");
  CHECK(run("sample --manifold sphere --dim 2 --n 100 --seed 7 -o " + a).exit_code == 0);
  CHECK(run("sample --manifold sphere --dim 2 --n 100 --seed 7 -o " + b).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto c = dir.file("c.csv");
  CHECK(run("sample --manifold sphere --dim 2 --n 100 --seed 8 -o " + c).exit_code == 0);
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("exit codes: usage=1, data error=2") {
  TempDir dir;
  CHECK(run("no-such-command").exit_code == 1);
  CHECK(run("sample --manifold interval --n 3 --bogus-flag x").exit_code == 1);
  CHECK(run("sample --manifold nosuch --n 3 -o " + dir.file("x.csv")).exit_code == 2);
  // Unsupported kind/sampling combination.
  CHECK(run("sample --manifold interval --n 3 --sampling uniform -o " +
            dir.file("y.csv"))
            .exit_code == 2);
  // Missing input file.
  CHECK(run("spectrum --input /nonexistent.csv --eps-pca 0.1 -o " +
            dir.file("s.json"))
            .exit_code == 2);
}

TEST_CASE("pipeline artifacts are complete and byte-deterministic") {
  TempDir dir;
  const std::string flags =
      "pipeline --manifold sphere --dim 2 --n 300 --seed 3 --eps-pca 0.3 "
      "--alpha 1 --num-eigs 8 --t 10 --delta 0.2 ";
  const auto out1 = dir.file("run1");
  const auto out2 = dir.file("run2");
  CHECK(run(flags + "--out-dir " + out1).exit_code == 0);
  CHECK(run(flags + "--out-dir " + out2).exit_code == 0);
  for (const std::string name :
       {"manifest.json", "cloud.csv", "spectrum.json", "embedding.csv",
        "embedding.json"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(fs::path(out1) / name));
    CHECK(slurp((fs::path(out1) / name).string()) ==
          slurp((fs::path(out2) / name).string()));
  }
  // The manifest re-runs the same pipeline.
  const auto out3 = dir.file("run3");
  CHECK(run("pipeline --manifest " + out1 + "/manifest.json --out-dir " + out3)
            .exit_code == 0);
  CHECK(slurp(out1 + "/spectrum.json") == slurp(out3 + "/spectrum.json"));
}

TEST_CASE("thread cap does not change artifacts") {
  TempDir dir;
  const std::string flags =
      "pipeline --manifold sphere --dim 2 --n 250 --seed 5 --eps-pca 0.3 "
      "--num-eigs 6 ";
  const auto out1 = dir.file("t1");
  const auto out4 = dir.file("t4");
  CHECK(run(flags + "--threads 1 --out-dir " + out1).exit_code == 0);
  CHECK(run(flags + "--threads 4 --out-dir " + out4).exit_code == 0);
  CHECK(slurp(out1 + "/embedding.csv") == slurp(out4 + "/embedding.csv"));
}

TEST_CASE("vdm distances on the interval are rank-consistent with the geodesic") {
  TempDir dir;
  // delta = 0.01 keeps the first Neumann mode at t = 1000 (embedded dim 3);
  // at the default delta = 0.2 only the trivial constant mode survives this
  // long horizon and every distance collapses to rounding noise.
  const std::string flags =
      "--manifold interval --n 400 --eps-pca 0.01 --alpha 1 --num-eigs 12 "
      "--t 1000 --delta 0.01 --ref 0 ";
  const auto vdm_out = dir.file("vdm.csv");
  const auto geo_out = dir.file("geo.csv");
  CHECK(run("distances vdm-norm " + flags + "-o " + vdm_out).exit_code == 0);
  CHECK(run("distances geodesic " + flags + "-o " + geo_out).exit_code == 0);
  const Eigen::VectorXd dv = vdm::read_distances_csv(vdm_out);
  const Eigen::VectorXd dg = vdm::read_distances_csv(geo_out);
  REQUIRE(dv.size() == 400);
  // The geodesic from the left endpoint is exactly the grid order; the VDM
  // distance must be monotone along it.
  for (int i = 1; i < 400; ++i) {
    CHECK(dg[i] > dg[i - 1]);
    CHECK(dv[i] >= dv[i - 1] - 1e-12);
  }
  const std::vector<double> a(dv.data(), dv.data() + dv.size());
  const std::vector<double> b(dg.data(), dg.data() + dg.size());
  CHECK(vdmtest::spearman(a, b) > 0.9999);
}

TEST_CASE("compare emits the joint distance table") {
  TempDir dir;
  const auto out = dir.file("table.csv");
  const auto result = run(
      "compare --manifold sphere --dim 2 --n 200 --seed 1 --eps-pca 0.4 "
      "--num-eigs 6 --t 10 --ref 3 -o " +
      out);
  CHECK(result.exit_code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,d_vdm,d_dm,d_geodesic");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 200);
}

TEST_CASE("extend reproduces an eigen-vector-field at in-sample points") {
  TempDir dir;
  // Build the pipeline artifacts once to derive an ambient eigenfield.
  const std::string common =
      "--manifold sphere --dim 2 --n 300 --seed 11 --eps-pca 0.3 --alpha 1 "
      "--num-eigs 5 ";
  const auto out = dir.file("run");
  REQUIRE(run("pipeline " + common + "--out-dir " + out).exit_code == 0);
  const auto cloud = vdm::read_point_cloud_csv(out + "/cloud.csv");

  // Queries: a few sample points; field: constant ambient field projected by
  // the extension machinery itself.
  Eigen::MatrixXd queries = cloud.points.topRows(5);
  Eigen::MatrixXd field(cloud.n(), 3);
  for (int i = 0; i < cloud.n(); ++i) field.row(i) << 1.0, 0.5, -0.25;
  const auto qpath = dir.file("q.csv");
  const auto fpath = dir.file("f.csv");
  vdm::write_matrix_csv(qpath, queries);
  vdm::write_matrix_csv(fpath, field);

  const auto epath = dir.file("ext.csv");
  const auto result = run("extend " + common + "--queries " + qpath +
                          " --field " + fpath + " --ext-delta 0.05 -o " + epath);
  CHECK(result.exit_code == 0);
  const Eigen::MatrixXd ext = vdm::read_matrix_csv(epath);
  CHECK(ext.rows() == 5);
  CHECK(ext.cols() == 3);
  CHECK(ext.allFinite());
}
