#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "vdm/embedding.hpp"
#include "vdm/errors.hpp"

using namespace vdm;

namespace {

// Legal synthetic scalar spectrum over the identity eigenbasis.
Spectrum fake_spectrum(std::initializer_list<double> values) {
  Spectrum spectrum;
  spectrum.values = Eigen::VectorXd(values.size());
  int k = 0;
  for (double v : values) spectrum.values[k++] = v;
  const int n = static_cast<int>(values.size());
  spectrum.vectors = Eigen::MatrixXd::Identity(n, n);
  spectrum.residuals = Eigen::VectorXd::Zero(n);
  spectrum.n = n;
  spectrum.d = 1;
  spectrum.degrees = Eigen::VectorXd::Ones(n);
  return spectrum;
}

struct FullSetup {
  AlignmentGraph agraph;
  VdmOperator op;
  Spectrum spectrum; // full
};

FullSetup full_spectrum_setup(int n, int d, std::uint64_t seed, double alpha) {
  FullSetup setup;
  setup.agraph = vdmtest::random_alignment_graph(n, d, 0.25, seed);
  setup.op = build_operator(setup.agraph, alpha);
  setup.spectrum = eigensolve(setup.op, setup.op.size(), 0);
  return setup;
}

} // namespace

TEST_CASE("truncation rule keeps the largest m with (|l_m|/|l_1|)^2t > delta") {
  const Eigen::VectorXd values = fake_spectrum({1.0, 0.9, 0.5}).values;
  CHECK(vdm_truncation_count(values, 1.0, 0.2) == 3);   // 0.81, 0.25 > 0.2
  CHECK(vdm_truncation_count(values, 1.0, 0.3) == 2);   // 0.25 <= 0.3
  CHECK(vdm_truncation_count(values, 2.0, 0.5) == 2);   // 0.9^4 = 0.6561
  CHECK(vdm_truncation_count(values, 10.0, 0.2) == 1);  // 0.9^20 = 0.12
  CHECK_THROWS_AS(vdm_truncation_count(values, 1.0, 1.0), DataError);
  CHECK_THROWS_AS(vdm_truncation_count(values, 1.0, 1.5), DataError);
}

TEST_CASE("monotone truncation: larger delta never retains more") {
  const Eigen::VectorXd values =
      fake_spectrum({1.0, 0.95, 0.9, 0.7, 0.5, 0.3, 0.1}).values;
  int prev = values.size();
  for (double delta : {0.01, 0.05, 0.1, 0.3, 0.6, 0.9}) {
    const int m = vdm_truncation_count(values, 3.0, delta);
    CHECK(m <= prev);
    prev = m;
  }
}

TEST_CASE("non-integer t requires positive retained eigenvalues") {
  const Eigen::VectorXd with_neg = fake_spectrum({1.0, 0.9, -0.5}).values;
  CHECK_THROWS_AS(vdm_truncation_count(with_neg, 1.5, 0.1), DataError);
  // The negative eigenvalue below the cut is fine: |-0.5|^3 = 0.125 <= 0.2.
  CHECK(vdm_truncation_count(with_neg, 1.5, 0.2) == 2);
  const Eigen::VectorXd positive = fake_spectrum({1.0, 0.9, 0.5}).values;
  CHECK(vdm_truncation_count(positive, 1.5, 0.1) == 3);
}

TEST_CASE("full-spectrum inner products equal dense HS norms of powers") {
  for (auto [n, d, seed] : {std::tuple{12, 2, 1ull}, {10, 3, 2ull}, {16, 1, 3ull}}) {
    const auto setup = full_spectrum_setup(n, d, seed, 0.0);
    const Eigen::MatrixXd sym = vdmtest::dense_sym(setup.agraph, 0.0);
    for (double t : {1.0, 2.0, 3.0}) {
      const auto emb =
          vdm_embed(setup.spectrum, t, 0.0, false, setup.op.deg_alpha);
      Eigen::MatrixXd power = Eigen::MatrixXd::Identity(sym.rows(), sym.cols());
      for (int rep = 0; rep < 2 * static_cast<int>(t); ++rep) power = power * sym;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double hs = power.block(i * d, j * d, d, d).squaredNorm();
          const double ip = emb.coords.row(i).dot(emb.coords.row(j));
          CHECK(std::abs(hs - ip) <= 1e-10);
        }
    }
  }
}

TEST_CASE("vdm_distance is a metric-like Euclidean distance") {
  const auto setup = full_spectrum_setup(14, 2, 5, 1.0);
  const auto emb = vdm_embed(setup.spectrum, 2.0, 0.1, false, setup.op.deg_alpha);
  auto rng = vdmtest::make_rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const int i = static_cast<int>(vdmtest::uniform01(rng) * 14);
    const int j = static_cast<int>(vdmtest::uniform01(rng) * 14);
    const int k = static_cast<int>(vdmtest::uniform01(rng) * 14);
    CHECK(vdm_distance(emb, i, i) == 0.0);
    CHECK(vdm_distance(emb, i, j) == doctest::Approx(vdm_distance(emb, j, i)));
    CHECK(vdm_distance(emb, i, k) <=
          vdm_distance(emb, i, j) + vdm_distance(emb, j, k) + 1e-12);
  }
}

TEST_CASE("normalized inner products carry 1/(deg_i deg_j)") {
  const auto setup = full_spectrum_setup(15, 2, 9, 1.0);
  const auto plain = vdm_embed(setup.spectrum, 2.0, 0.0, false, setup.op.deg_alpha);
  const auto norm = vdm_embed(setup.spectrum, 2.0, 0.0, true, setup.op.deg_alpha);
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      const double lhs = norm.coords.row(i).dot(norm.coords.row(j));
      const double rhs = plain.coords.row(i).dot(plain.coords.row(j)) /
                         (setup.op.deg_alpha[i] * setup.op.deg_alpha[j]);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("distance relation holds on a constant-degree graph") {
  // Equal weights on a ring: deg(i) is constant, where the stated distance
  // relation d'^2 = d^2/(deg_i deg_j) is exact.
  auto agraph = vdmtest::random_alignment_graph(12, 2, 0.0, 11);
  for (auto& edge : agraph.edges) edge.w = 0.8;
  agraph.degrees.setConstant(1.6);
  const auto op = build_operator(agraph, 0.0);
  const auto spectrum = eigensolve(op, op.size(), 0);
  const auto plain = vdm_embed(spectrum, 2.0, 0.0, false, op.deg_alpha);
  const auto norm = vdm_embed(spectrum, 2.0, 0.0, true, op.deg_alpha);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const double lhs = std::pow(vdm_distance(norm, i, j), 2);
      const double rhs = std::pow(vdm_distance(plain, i, j), 2) /
                         (op.deg_alpha[i] * op.deg_alpha[j]);
      CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("angular distances agree between V and V'") {
  const auto setup = full_spectrum_setup(13, 3, 13, 1.0);
  const auto plain = vdm_embed(setup.spectrum, 3.0, 0.0, false, setup.op.deg_alpha);
  const auto norm = vdm_embed(setup.spectrum, 3.0, 0.0, true, setup.op.deg_alpha);
  for (int i = 0; i < 13; ++i) {
    CHECK(vdm_angular_distance(plain, i, i) == 0.0);
    for (int j = 0; j < 13; ++j) {
      const double a = vdm_angular_distance(plain, i, j);
      const double b = vdm_angular_distance(norm, i, j);
      CHECK(std::abs(a - b) <= 1e-10);
      CHECK(a <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("gauge invariance of vector diffusion distances") {
  auto agraph = vdmtest::random_alignment_graph(20, 2, 0.25, 17);
  const auto op = build_operator(agraph, 1.0);
  const auto spectrum = eigensolve(op, 12, 0);
  const auto emb = vdm_embed(spectrum, 2.0, 0.01, true, op.deg_alpha);

  auto rng = vdmtest::make_rng(19);
  std::vector<Eigen::MatrixXd> gauges;
  for (int i = 0; i < agraph.n; ++i)
    gauges.push_back(vdmtest::random_orthogonal(rng, agraph.d));
  auto regauged = agraph;
  for (auto& edge : regauged.edges)
    edge.rot = gauges[edge.i].transpose() * edge.rot * gauges[edge.j];
  const auto op2 = build_operator(regauged, 1.0);
  const auto spectrum2 = eigensolve(op2, 12, 0);
  const auto emb2 = vdm_embed(spectrum2, 2.0, 0.01, true, op2.deg_alpha);

  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j) {
      const double a = vdm_distance(emb, i, j);
      const double b = vdm_distance(emb2, i, j);
      CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("dm: constant top eigenvector with mu_1 = 1") {
  const auto agraph = vdmtest::random_alignment_graph(25, 2, 0.3, 23);
  const auto spectrum = dm_eigensolve(agraph, 6, 0);
  CHECK(std::abs(spectrum.values[0] - 1.0) <= 1e-8);
  // phi_1 = u_1 / sqrt(deg) is constant up to sign.
  const Eigen::VectorXd phi = spectrum.right_eigenvector(0);
  const double ref = phi[0];
  for (int i = 0; i < 25; ++i)
    CHECK(phi[i] == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("dm distances match the dense probability-cloud formula") {
  const auto agraph = vdmtest::random_alignment_graph(18, 1, 0.3, 29);
  const auto spectrum = dm_eigensolve(agraph, 18, 0);
  for (double t : {1.0, 3.0}) {
    const auto emb = dm_embed(spectrum, t, 0.0);
    REQUIRE(emb.m == 18);
    // Dense A^t oracle.
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(18, 18);
    for (const auto& edge : agraph.edges) {
      w(edge.i, edge.j) = edge.w;
      w(edge.j, edge.i) = edge.w;
    }
    Eigen::MatrixXd a = agraph.degrees.cwiseInverse().asDiagonal() * w;
    Eigen::MatrixXd at = Eigen::MatrixXd::Identity(18, 18);
    for (int rep = 0; rep < static_cast<int>(t); ++rep) at = at * a;
    for (int i = 0; i < 18; ++i)
      for (int j = 0; j < 18; ++j) {
        double expected = 0.0;
        for (int k = 0; k < 18; ++k)
          expected += std::pow(at(i, k) - at(j, k), 2) / agraph.degrees[k];
        CHECK(std::abs(std::pow(dm_distance(emb, i, j), 2) - expected) <= 1e-10);
      }
  }
}

TEST_CASE("dm truncation uses (|mu|/|mu_1|)^t > delta") {
  Spectrum spectrum = fake_spectrum({1.0, 0.97, 0.5});
  auto emb = dm_embed(spectrum, 10.0, 0.5);
  CHECK(emb.m == 2); // 0.97^10 = 0.737 > 0.5, 0.5^10 tiny
  CHECK(emb.embedded_dim() == 1);
  emb = dm_embed(spectrum, 100.0, 0.5);
  CHECK(emb.m == 1); // 0.97^100 = 0.0476
  CHECK_THROWS_AS(dm_embed(spectrum, 10.0, 1.0), DataError);
}

TEST_CASE("dm refuses disconnected graphs") {
  // Two disjoint triangles.
  AlignmentGraph graph;
  graph.n = 6;
  graph.d = 1;
  graph.radius = 1.0;
  auto add = [&graph](int i, int j) {
    graph.edges.push_back({i, j, 1.0, Eigen::MatrixXd::Identity(1, 1)});
  };
  add(0, 1);
  add(1, 2);
  add(0, 2);
  add(3, 4);
  add(4, 5);
  add(3, 5);
  graph.degrees = Eigen::VectorXd::Constant(6, 2.0);
  graph.adjacency.assign(6, {});
  for (int e = 0; e < 6; ++e) {
    graph.adjacency[graph.edges[e].i].push_back({graph.edges[e].j, e});
    graph.adjacency[graph.edges[e].j].push_back({graph.edges[e].i, e});
  }
  CHECK_THROWS_AS(dm_eigensolve(graph, 3, 0), DataError);
}

TEST_CASE("zero-norm embedding points are rejected in angular distances") {
  Spectrum spectrum = fake_spectrum({1.0, 0.9});
  // Point 2's entries vanish in both retained eigenvectors.
  spectrum.vectors = Eigen::MatrixXd::Zero(3, 2);
  spectrum.vectors(0, 0) = 1.0;
  spectrum.vectors(1, 1) = 1.0;
  spectrum.n = 3;
  spectrum.degrees = Eigen::VectorXd::Ones(3);
  const auto emb = vdm_embed(spectrum, 1.0, 0.0, false, spectrum.degrees);
  CHECK_THROWS_AS(vdm_angular_distance(emb, 0, 2), DataError);
}
