#include "zen/synthetic.hpp"

#include "zen/error.hpp"
#include "zen/rng.hpp"

#include <algorithm>
#include <cmath>

namespace zen {

AssumptionData make_assumption_data(std::int64_t n, std::int32_t c, double epsilon, std::uint64_t seed,
                                    double jitter) {
  if (n < c || c < 1) throw ConfigError("need n >= c >= 1");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw ConfigError("epsilon must lie in (0, 0.5)");
  const Eigen::Index d = 1 + c + n;
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, d);
  std::vector<std::int32_t> labels(static_cast<std::size_t>(n));
  const double shared = std::sqrt(epsilon);
  const double anchor = std::sqrt(1.0 - 2.0 * epsilon);
  const double own = std::sqrt(epsilon);
  CounterRng rng(seed);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto y = static_cast<std::int32_t>(i % c);
    labels[static_cast<std::size_t>(i)] = y;
    z(i, 0) = shared;
    z(i, 1 + y) = anchor;
    z(i, 1 + c + i) = own;
    if (jitter > 0.0) {
      Eigen::VectorXd noise(d);
      for (Eigen::Index j = 0; j < d; ++j) noise[j] = rng.normal();
      z.row(i) += jitter * noise.normalized().transpose();
      z.row(i).normalize();
    }
  }
  return {EmbeddingMatrix{std::move(z)}, LabelSet(std::move(labels), c), epsilon};
}

Eigen::MatrixXd training_gram(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels) {
  std::vector<std::int64_t> order;
  for (std::int32_t y = 0; y < labels.num_classes(); ++y) {
    for (std::int64_t i : split.train_nodes()) {
      if (labels[i] == y) order.push_back(i);
    }
  }
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(order.size()), Z.values.cols());
  for (std::size_t r = 0; r < order.size(); ++r) rows.row(static_cast<Eigen::Index>(r)) = Z.values.row(order[r]);
  return rows * rows.transpose();
}

Hypergraph random_hypergraph(std::int64_t n, std::int64_t m, int min_size, int max_size, std::uint64_t seed) {
  if (n < 1 || min_size < 1 || max_size < min_size) throw ConfigError("invalid random hypergraph parameters");
  CounterRng rng(seed);
  std::vector<std::vector<NodeId>> edges(static_cast<std::size_t>(m));
  for (auto& e : edges) {
    const auto size = min_size + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_size - min_size + 1)));
    for (int j = 0; j < size; ++j) e.push_back(static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(n))));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return Hypergraph(n, std::move(edges));
}

LabelSet random_labels(std::int64_t n, std::int32_t c, std::int64_t min_per_class, std::uint64_t seed) {
  if (n < c * min_per_class) throw ConfigError("too few nodes for the requested class sizes");
  CounterRng rng(seed);
  std::vector<std::int32_t> labels(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    labels[static_cast<std::size_t>(i)] =
        i < c * min_per_class ? static_cast<std::int32_t>(i % c)
                              : static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(c)));
  }
  // Fisher-Yates so the guaranteed members are not the first ids.
  for (std::int64_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
  }
  return LabelSet(std::move(labels), c);
}

Eigen::MatrixXd random_class_features(const LabelSet& labels, Eigen::Index d, double density,
                                      std::uint64_t seed) {
  CounterRng rng(seed);
  const std::int32_t c = labels.num_classes();
  // Each class prefers a random subset of features; preferred ones fire 4x more often.
  Eigen::MatrixXd rate(c, d);
  for (std::int32_t y = 0; y < c; ++y) {
    for (Eigen::Index j = 0; j < d; ++j) rate(y, j) = rng.uniform() < 0.1 ? 4.0 * density : density;
  }
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(labels.size(), d);
  for (std::int64_t i = 0; i < labels.size(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (rng.uniform() < rate(labels[i], j)) x(i, j) = 1.0;
    }
  }
  return x;
}

}  // namespace zen
