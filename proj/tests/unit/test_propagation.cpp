#include "oracles.hpp"
#include "zen/error.hpp"
#include "zen/propagation.hpp"
#include "zen/rsi_approx.hpp"
#include "zen/synthetic.hpp"

#include <doctest.h>

#include <cmath>

using namespace zen;

namespace {

const Hypergraph kPath(3, {{0, 1}, {1, 2}});
const Hypergraph kTriangle(3, {{0, 1}, {1, 2}, {0, 2}});
const Hypergraph kStar(4, {{0, 1, 2, 3}});

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXd mat3(std::initializer_list<double> v) {
  Eigen::MatrixXd m(3, 3);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

const Eigen::MatrixXd kJ = Eigen::MatrixXd::Ones(3, 3);
const Eigen::MatrixXd kI = Eigen::MatrixXd::Identity(3, 3);

void check_vec(const std::vector<double>& got, const Eigen::VectorXd& want, double tol) {
  REQUIRE(static_cast<Eigen::Index>(got.size()) == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want(static_cast<Eigen::Index>(i))) <= tol);
}

}  // namespace

TEST_CASE("normalization names") {
  CHECK(parse_normalization("sym") == NormalizationKind::Symmetric);
  CHECK(parse_normalization("row") == NormalizationKind::Row);
  CHECK(to_string(NormalizationKind::Row) == "row");
  CHECK_THROWS_AS(parse_normalization("left"), ConfigError);
}

TEST_CASE("A1 hat on the path and the triangle") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto path = build_A1_hat(kPath, NormalizationKind::Symmetric).to_dense();
  CHECK(max_abs(path - mat3({1, r, 0, r, 1, r, 0, r, 1})) < 1e-12);
  const auto tri = build_A1_hat(kTriangle, NormalizationKind::Symmetric).to_dense();
  CHECK(max_abs(tri - 0.5 * (kJ + kI)) < 1e-12);
  CHECK(build_A1_hat(kTriangle, NormalizationKind::Symmetric).symmetric());
}

TEST_CASE("rsi_diag_1 closed form") {
  check_vec(rsi_diag_1(kPath, NormalizationKind::Symmetric), Eigen::Vector3d(1, 1, 1), 1e-12);
  check_vec(rsi_diag_1(kTriangle, NormalizationKind::Row), Eigen::Vector3d(1, 1, 1), 1e-12);
  const auto star = rsi_diag_1(kStar, NormalizationKind::Symmetric);
  CHECK(star[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(build_A1_hat(kStar, NormalizationKind::Symmetric).coeff(0, 0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("A1 star removes exactly the diagonal") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(build_A1_star(kPath, NormalizationKind::Symmetric).to_dense() - mat3({0, r, 0, r, 0, r, 0, r, 0})) <
        1e-12);
  CHECK(max_abs(build_A1_star(kTriangle, NormalizationKind::Symmetric).to_dense() - 0.5 * (kJ - kI)) < 1e-12);
}

TEST_CASE("two-hop matrices on small cases") {
  const auto a1s = build_A1_star(kTriangle, NormalizationKind::Symmetric);
  const auto a2h = build_A2_hat(kTriangle, NormalizationKind::Symmetric, a1s).to_dense();
  CHECK(max_abs(a2h - 0.5 * (kJ + kI)) < 1e-12);
  check_vec(rsi_diag_2(kTriangle, NormalizationKind::Symmetric), Eigen::Vector3d(1, 1, 1), 1e-12);
  const auto a2s = build_A2_star(kTriangle, NormalizationKind::Symmetric, a1s).to_dense();
  CHECK(max_abs(a2s - 0.5 * (kJ - kI)) < 1e-12);

  // one edge {0,1}: both nodes have degree 1, no 2-hop relay
  const Hypergraph pair(2, {{0, 1}});
  const auto p1s = build_A1_star(pair, NormalizationKind::Symmetric);
  CHECK(build_A2_star(pair, NormalizationKind::Symmetric, p1s).nnz() == 0);
  CHECK(build_A2_hat(pair, NormalizationKind::Symmetric, p1s).nnz() == 0);

  const auto star2 = rsi_diag_2(kStar, NormalizationKind::Symmetric);
  CHECK(star2[0] == 0.0);
  CHECK(rsi_diag_2_per_edge(kStar)[0] == 0.0);
}

TEST_CASE("singletons and isolated nodes contribute nothing") {
  const Hypergraph hg(4, {{0}, {0, 1}, {1, 2}});
  for (auto kind : {NormalizationKind::Symmetric, NormalizationKind::Row}) {
    const auto basis = PropagationBasis::build(hg, kind);
    for (const auto* m : {&basis.A1_hat, &basis.A1_star, &basis.A2_hat, &basis.A2_star}) {
      const auto d = m->to_dense();
      CHECK(d.row(3).norm() == 0.0);
      CHECK(d.col(3).norm() == 0.0);
    }
    // node 0: singleton adds 0, pair adds 1, averaged over degree 2
    CHECK(rsi_diag_1(hg, kind)[0] == doctest::Approx(0.5));
  }
}

TEST_CASE("RAP matrices match the dense oracle on random hypergraphs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::int64_t n = 5 + static_cast<std::int64_t>(seed % 46);
    const auto hg = random_hypergraph(n, 1 + static_cast<std::int64_t>(seed % 30), 1, 6, 1000 + seed);
    for (bool sym : {true, false}) {
      const auto kind = sym ? NormalizationKind::Symmetric : NormalizationKind::Row;
      const Eigen::MatrixXd a1 = oracle::rap_a1(hg, sym);
      const Eigen::MatrixXd a2 = oracle::rap_a2(hg, sym);
      const auto basis = PropagationBasis::build(hg, kind);
      CHECK(max_abs(basis.A1_hat.to_dense() - a1) < 1e-12);
      CHECK(max_abs(basis.A1_star.to_dense() - oracle::strip_diagonal(a1)) < 1e-12);
      CHECK(max_abs(basis.A2_hat.to_dense() - a2) < 1e-12);
      CHECK(max_abs(basis.A2_star.to_dense() - oracle::strip_diagonal(a2)) < 1e-12);
      check_vec(rsi_diag_1(hg, kind), a1.diagonal(), 1e-10);
      check_vec(rsi_diag_2(hg, kind), a2.diagonal(), 1e-10);
      CHECK(basis.A1_star.diagonal() == std::vector<double>(static_cast<std::size_t>(n), 0.0));
      CHECK(basis.A2_star.diagonal() == std::vector<double>(static_cast<std::size_t>(n), 0.0));
      if (sym) {
        CHECK(basis.A1_hat.is_symmetric(1e-12));
        CHECK(basis.A2_star.is_symmetric(1e-12));
      }
    }
  }
}

TEST_CASE("per-edge two-hop formula is exact on linear hypergraphs only") {
  // linear: any two nodes share at most one hyperedge
  const Hypergraph linear(7, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {1, 3, 5}, {6, 0}});
  check_vec(rsi_diag_2_per_edge(linear), oracle::rap_a2(linear, true).diagonal(), 1e-12);

  // nodes 0 and 1 share two hyperedges: the per-edge form drops the cross term
  const Hypergraph shared(4, {{0, 1}, {0, 1, 2}, {2, 3}});
  const auto exact = rsi_diag_2(shared, NormalizationKind::Symmetric);
  const auto per_edge = rsi_diag_2_per_edge(shared);
  check_vec(exact, oracle::rap_a2(shared, true).diagonal(), 1e-12);
  CHECK(per_edge[0] < exact[0] - 1e-3);
}

TEST_CASE("P star composition") {
  PropagationConfig cfg;
  CHECK(max_abs(build_P_star(kTriangle, cfg).to_dense() - kI) < 1e-15);
  cfg.alphas = {0, 1, 0};
  CHECK(max_abs(build_P_star(kTriangle, cfg).to_dense() - 0.5 * (kJ - kI)) < 1e-12);
  cfg.alphas = {0, 0.5, 0.5};
  CHECK(max_abs(build_P_star(kTriangle, cfg).to_dense() - 0.5 * (kJ - kI)) < 1e-12);

  cfg.alphas = {0.2, 0.3, 0.5};
  cfg.rap_enabled = false;
  const auto no_rap = build_P_star(kPath, cfg).to_dense();
  cfg.rap_enabled = true;
  const auto rap = build_P_star(kPath, cfg).to_dense();
  const Eigen::MatrixXd diff = no_rap - rap;
  CHECK(max_abs(oracle::strip_diagonal(diff)) < 1e-12);
  CHECK(diff.diagonal().minCoeff() > 0.0);

  cfg.alphas = {0.5, 0.6, -0.1};
  CHECK_THROWS_AS(build_P_star(kTriangle, cfg), ConfigError);
  cfg.alphas = {0.5, 0.4, 0.0};
  CHECK_THROWS_AS(build_P_star(kTriangle, cfg), ConfigError);
}

TEST_CASE("baseline adjacencies") {
  const auto hgnn = build_baseline_adjacency(kTriangle, BaselineRecipe::hgnn(), 1).to_dense();
  const Eigen::MatrixXd h = oracle::incidence(kTriangle);
  // Dv = 2I and De = 2I, so the recipe is H H^T / 4
  CHECK(max_abs(hgnn - 0.25 * h * h.transpose()) < 1e-12);
  CHECK(max_abs(hgnn - 0.25 * (kJ + kI)) < 1e-12);

  for (auto recipe : {BaselineRecipe::hgnn(), BaselineRecipe::hnhn(0.5, -0.5), BaselineRecipe::unigcnii(0.1),
                      BaselineRecipe::alldeepset(), BaselineRecipe::edhnn(0.2)}) {
    CHECK(max_abs(build_baseline_adjacency(kPath, recipe, 0).to_dense() - kI) == 0.0);
  }

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto hg = random_hypergraph(25, 15, 1, 5, seed);
    const auto a = baseline_base_matrix(hg, BaselineRecipe::alldeepset());
    const auto sums = a.row_sums();
    for (NodeId v = 0; v < hg.num_nodes(); ++v) {
      if (hg.node_degree(v) > 0) CHECK(sums[static_cast<std::size_t>(v)] == doctest::Approx(1.0).epsilon(1e-12));
      else CHECK(sums[static_cast<std::size_t>(v)] == 0.0);
    }
    CHECK(max_abs(a.to_dense() - oracle::walk_matrix(hg)) < 1e-12);
    const auto a2 = build_baseline_adjacency(hg, BaselineRecipe::alldeepset(), 2).to_dense();
    CHECK(max_abs(a2 - oracle::matrix_power(oracle::walk_matrix(hg), 2)) < 1e-12);

    // HGNN against the textbook formula
    const Eigen::MatrixXd hd = oracle::incidence(hg);
    Eigen::VectorXd dv = hd.rowwise().sum(), de = hd.colwise().sum().transpose();
    for (Eigen::Index i = 0; i < dv.size(); ++i) dv(i) = dv(i) > 0 ? 1.0 / std::sqrt(dv(i)) : 0.0;
    for (Eigen::Index i = 0; i < de.size(); ++i) de(i) = 1.0 / de(i);
    const Eigen::MatrixXd want = dv.asDiagonal() * hd * de.asDiagonal() * hd.transpose() * dv.asDiagonal();
    CHECK(max_abs(baseline_base_matrix(hg, BaselineRecipe::hgnn()).to_dense() - want) < 1e-12);
  }
}

TEST_CASE("restart coefficients") {
  auto c = restart_coefficients(0.5, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] == doctest::Approx(0.25));
  CHECK(c[2] == doctest::Approx(0.25));
  c = restart_coefficients(1.0, 4);
  CHECK(c == std::vector<double>{1, 0, 0, 0, 0});
  c = restart_coefficients(0.1, 3);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == doctest::Approx(0.1));
  CHECK(c[1] == doctest::Approx(0.09));
  CHECK(c[2] == doctest::Approx(0.081));
  CHECK(c[3] == doctest::Approx(0.729));
  CHECK(c[0] + c[1] + c[2] + c[3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(restart_coefficients(1.5, 2), ConfigError);
}

TEST_CASE("restart mixture propagation") {
  const auto hg = random_hypergraph(12, 8, 2, 4, 3);
  const auto p = build_baseline_propagation(hg, BaselineRecipe::edhnn(0.3), 2).to_dense();
  const Eigen::MatrixXd a = oracle::walk_matrix(hg);
  const Eigen::MatrixXd want = 0.3 * Eigen::MatrixXd::Identity(12, 12) + 0.21 * a + 0.49 * a * a;
  CHECK(max_abs(p - want) < 1e-12);
}
