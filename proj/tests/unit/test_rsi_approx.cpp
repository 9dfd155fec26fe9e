#include "oracles.hpp"
#include "zen/error.hpp"
#include "zen/propagation.hpp"
#include "zen/rng.hpp"
#include "zen/rsi_approx.hpp"
#include "zen/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

using namespace zen;

TEST_CASE("counter rng is a pure function of seed, stream and counter") {
  CounterRng a(42), b(42), c(43);
  CHECK(a.next() == b.next());
  CHECK(a.at(7) == b.at(7));
  CHECK(a.at(7) != c.at(7));
  CHECK(a.split(1).at(0) != a.split(2).at(0));
  // children depend on the parent's key only, not on how far it advanced
  CounterRng fresh(42);
  CHECK(a.split(3).at(5) == fresh.split(3).at(5));
  CHECK(a.split(3).at(5) != CounterRng(43).split(3).at(5));
  CounterRng u(1);
  double mean = 0.0;
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 20000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    mean += x;
    seen.insert(u.below(6));
  }
  CHECK(mean / 20000 == doctest::Approx(0.5).epsilon(0.02));
  CHECK(seen.size() == 6);
}

TEST_CASE("random walk on one edge") {
  const Hypergraph pair(2, {{0, 1}});
  const double tol = 3.0 * std::sqrt(0.25 / 1e5);
  CHECK(std::abs(random_walk_return_prob(pair, 0, {1, 100000, 11}) - 0.5) <= tol);
  CHECK(std::abs(random_walk_return_prob(pair, 0, {2, 100000, 12}) - 0.5) <= tol);
  CHECK(oracle::matrix_power(oracle::walk_matrix(pair), 2)(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("random walk is reproducible and thread independent") {
  const auto hg = random_hypergraph(20, 15, 2, 5, 9);
  const WalkParams p{2, 20000, 77};
  const double one = random_walk_return_prob(hg, 3, p, 1);
  CHECK(random_walk_return_prob(hg, 3, p, 1) == one);
  CHECK(random_walk_return_prob(hg, 3, p, 4) == one);
}

TEST_CASE("random walk errors") {
  const Hypergraph hg(3, {{0, 1}});
  CHECK_THROWS_AS(random_walk_return_prob(hg, 2, {}), ConfigError);
  CHECK_THROWS_AS(random_walk_return_prob(hg, 5, {}), ConfigError);
  CHECK_THROWS_AS(random_walk_return_prob(hg, 0, {0, 10, 0}), ConfigError);
  CHECK_THROWS_AS(random_walk_return_prob(hg, 0, {1, 0, 0}), ConfigError);
}

TEST_CASE("hutchinson on the triangle two-hop matrix") {
  const Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto basis = PropagationBasis::build(tri, NormalizationKind::Symmetric);
  const auto& a = basis.A2_hat;
  const auto est = hutchinson_diag([&](const Eigen::VectorXd& z) { return Eigen::VectorXd(a * z); }, 3, {10000, 5});
  for (int i = 0; i < 3; ++i) CHECK(std::abs(est(i) - 1.0) <= 0.1);
  const auto again = hutchinson_diag([&](const Eigen::VectorXd& z) { return Eigen::VectorXd(a * z); }, 3, {10000, 5});
  CHECK((est - again).norm() == 0.0);
}

TEST_CASE("hutchinson is exact for diagonal operators") {
  Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(17, -3.0, 5.0);
  const auto est = hutchinson_diag([&](const Eigen::VectorXd& z) { return Eigen::VectorXd(d.cwiseProduct(z)); }, 17,
                                   {1, 3});
  CHECK((est - d).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(hutchinson_diag([](const Eigen::VectorXd& z) { return z; }, 3, {0, 0}), ConfigError);
  CHECK_THROWS_AS(hutchinson_diag([](const Eigen::VectorXd&) { return Eigen::VectorXd(2); }, 3, {1, 0}),
                  ConfigError);
}

TEST_CASE("dense oracle small cases and guard") {
  const Hypergraph path(3, {{0, 1}, {1, 2}});
  const Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK((dense_diag_oracle(path, NormalizationKind::Symmetric, 1) - Eigen::Vector3d(1, 1, 1)).norm() < 1e-12);
  CHECK((dense_diag_oracle(tri, NormalizationKind::Symmetric, 2) - Eigen::Vector3d(1, 1, 1)).norm() < 1e-12);
  CHECK((dense_diag_oracle(tri, NormalizationKind::Row, 0) - Eigen::Vector3d(1, 1, 1)).norm() == 0.0);
  CHECK_THROWS_AS(dense_diag_oracle(tri, NormalizationKind::Symmetric, 3, DiagTarget::RapHat), ConfigError);
  CHECK((dense_diag_oracle(tri, NormalizationKind::Symmetric, 3, DiagTarget::WalkMatrix) -
         oracle::matrix_power(oracle::walk_matrix(tri), 3).diagonal())
            .norm() < 1e-12);

  // 2,500 nodes exceeds the default guard of 2,000
  const auto big = random_hypergraph(2500, 100, 2, 3, 0);
  CHECK(dense_guard() == 2000);
  CHECK_THROWS_AS(dense_diag_oracle(big, NormalizationKind::Symmetric, 1), GuardError);
  ::setenv("ZEN_DENSE_GUARD", "3000", 1);
  CHECK(dense_guard() == 3000);
  ::unsetenv("ZEN_DENSE_GUARD");
}

TEST_CASE("dense oracle agrees with the independent test oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto hg = random_hypergraph(20, 12, 1, 6, seed);
    for (bool sym : {true, false}) {
      const auto kind = sym ? NormalizationKind::Symmetric : NormalizationKind::Row;
      CHECK((dense_hop_matrix(hg, kind, 1) - oracle::rap_a1(hg, sym)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((dense_hop_matrix(hg, kind, 2) - oracle::rap_a2(hg, sym)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
