#pragma once

#include "zen/classifier.hpp"
#include "zen/hypergraph.hpp"
#include "zen/io.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace zen {

// Unit-norm embeddings with intra-class cosine 1 - eps and inter-class
// cosine eps. Node i of class y is
//   sqrt(eps) s + sqrt(1 - 2 eps) u_y + sqrt(eps) r_i
// with s, u_y, r_i mutually orthonormal (d = 1 + c + n), so any subset of
// rows has exactly the target Gram structure. A positive `jitter` adds an
// isotropic Gaussian perturbation of that norm before re-normalizing.
// Node i belongs to class i % c.
struct AssumptionData {
  EmbeddingMatrix embeddings;
  LabelSet labels;
  double epsilon = 0.0;
};

AssumptionData make_assumption_data(std::int64_t n, std::int32_t c, double epsilon, std::uint64_t seed,
                                    double jitter = 0.0);

// Gram matrix of the training rows ordered by class, then node id.
Eigen::MatrixXd training_gram(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels);

// Random hypergraph: m hyperedges, sizes uniform in [min_size, max_size],
// members drawn uniformly (duplicates collapse, so sizes can shrink).
Hypergraph random_hypergraph(std::int64_t n, std::int64_t m, int min_size, int max_size, std::uint64_t seed);

// Labels uniform over c classes with every class guaranteed at least
// `min_per_class` members (requires n >= c * min_per_class).
LabelSet random_labels(std::int64_t n, std::int32_t c, std::int64_t min_per_class, std::uint64_t seed);

// Nonnegative sparse binary features with class-dependent activation
// rates, loosely mimicking bag-of-words citation data.
Eigen::MatrixXd random_class_features(const LabelSet& labels, Eigen::Index d, double density,
                                      std::uint64_t seed);

}  // namespace zen
