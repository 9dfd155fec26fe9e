#include "zen/classifier.hpp"

#include "zen/error.hpp"
#include "zen/log.hpp"
#include "zen/rsi_approx.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace zen {

namespace {

std::vector<std::int64_t> mask_nodes(const std::vector<std::uint8_t>& mask) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<std::int64_t>(i));
  }
  return out;
}

void require_conforming(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels) {
  if (Z.values.rows() != split.size() || labels.size() != split.size()) {
    throw ConfigError("embedding, split and labels disagree on the node count");
  }
}

// Training rows of Z and Y, in node order.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> training_block(const EmbeddingMatrix& Z, const Split& split,
                                                           const LabelSet& labels) {
  require_conforming(Z, split, labels);
  const auto nodes = split.train_nodes();
  Eigen::MatrixXd zt(static_cast<Eigen::Index>(nodes.size()), Z.values.cols());
  Eigen::MatrixXd yt = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nodes.size()), labels.num_classes());
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    zt.row(row) = Z.values.row(nodes[r]);
    yt(row, labels[nodes[r]]) = 1.0;
  }
  return {std::move(zt), std::move(yt)};
}

}  // namespace

std::vector<std::int64_t> Split::train_nodes() const { return mask_nodes(train_mask); }
std::vector<std::int64_t> Split::val_nodes() const { return mask_nodes(val_mask); }
std::vector<std::int64_t> Split::test_nodes() const { return mask_nodes(test_mask); }

void Split::validate(const LabelSet& labels) const {
  const auto n = train_mask.size();
  if (val_mask.size() != n || test_mask.size() != n || static_cast<std::int64_t>(n) != labels.size()) {
    throw ConfigError("split masks must all have one entry per node");
  }
  std::vector<int> per_class(static_cast<std::size_t>(labels.num_classes()), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (train_mask[i] + val_mask[i] + test_mask[i] > 1) {
      throw ConfigError("split masks overlap at node " + std::to_string(i));
    }
    if (train_mask[i]) ++per_class[static_cast<std::size_t>(labels[static_cast<std::int64_t>(i)])];
  }
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    if (per_class[c] != shots) {
      throw ConfigError("class " + std::to_string(c) + " has " + std::to_string(per_class[c]) +
                        " training nodes, expected " + std::to_string(shots));
    }
  }
}

void TrainingParams::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning rate must be > 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
}

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 0.0) out.row(i) /= norm;
  }
  return out;
}

Eigen::MatrixXd normalize_cols(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm > 0.0) out.col(j) /= norm;
  }
  return out;
}

EmbeddingMatrix embed(const SparseMatrix& P, const Eigen::MatrixXd& X) {
  if (P.cols() != X.rows()) {
    throw ConfigError("embed: propagation matrix has " + std::to_string(P.cols()) +
                      " columns but features have " + std::to_string(X.rows()) + " rows");
  }
  return {normalize_rows(P * X)};
}

WeightMatrix tcs_weights(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels) {
  require_conforming(Z, split, labels);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(Z.values.cols(), labels.num_classes());
  std::vector<int> count(static_cast<std::size_t>(labels.num_classes()), 0);
  for (std::int64_t i : split.train_nodes()) {
    w.col(labels[i]) += Z.values.row(i).transpose();
    ++count[static_cast<std::size_t>(labels[i])];
  }
  for (std::size_t c = 0; c < count.size(); ++c) {
    if (count[c] == 0) throw ConfigError("class " + std::to_string(c) + " has no training node");
  }
  return {normalize_cols(w)};
}

WeightMatrix exact_weights(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels,
                           Eigen::Index max_dim) {
  if (Z.values.cols() > max_dim) {
    throw GuardError("exact_weights refused: feature dimension " + std::to_string(Z.values.cols()) +
                     " exceeds guard " + std::to_string(max_dim));
  }
  const auto [zt, yt] = training_block(Z, split, labels);
  const Eigen::MatrixXd gram = zt.transpose() * zt;
  const Eigen::MatrixXd rhs = zt.transpose() * yt;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? 1e-10 * sigma[0] : 0.0;
  Eigen::VectorXd inv_sigma(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) inv_sigma[i] = sigma[i] > cutoff ? 1.0 / sigma[i] : 0.0;
  const Eigen::MatrixXd w = svd.matrixV() * (inv_sigma.asDiagonal() * (svd.matrixU().transpose() * rhs));
  return {w};
}

double sse_loss(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels, const Eigen::MatrixXd& W) {
  const auto [zt, yt] = training_block(Z, split, labels);
  return (zt * W - yt).squaredNorm();
}

Eigen::MatrixXd sse_gradient(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels,
                             const Eigen::MatrixXd& W) {
  const auto [zt, yt] = training_block(Z, split, labels);
  return -2.0 * zt.transpose() * (yt - zt * W);
}

WeightMatrix train_weights_gd(const EmbeddingMatrix& Z, const Split& split, const LabelSet& labels,
                              const TrainingParams& params) {
  params.validate();
  const auto [zt, yt] = training_block(Z, split, labels);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(Z.values.cols(), labels.num_classes());
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    const Eigen::MatrixXd residual = yt - zt * w;
    const double loss = residual.squaredNorm();
    if (!std::isfinite(loss) || loss > 1e10) {
      throw ComputationError("gradient descent diverged at epoch " + std::to_string(epoch) +
                             " (lower the learning rate)");
    }
    w += (2.0 * params.learning_rate) * (zt.transpose() * residual);
  }
  return {w};
}

Prediction predict(const EmbeddingMatrix& Z, const WeightMatrix& W, bool warn_zero_rows) {
  if (Z.values.cols() != W.values.rows()) throw ConfigError("predict: embedding and weight shapes differ");
  Prediction p;
  p.scores = Z.values * W.values;
  p.hard_labels.resize(static_cast<std::size_t>(p.scores.rows()), 0);
  std::int64_t zero_rows = 0;
  for (Eigen::Index i = 0; i < p.scores.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < p.scores.cols(); ++j) {
      if (p.scores(i, j) > p.scores(i, best)) best = j;
    }
    p.hard_labels[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(best);
    if (warn_zero_rows && Z.values.row(i).squaredNorm() == 0.0) ++zero_rows;
  }
  if (zero_rows > 0) {
    warn(std::to_string(zero_rows) + " node(s) have a zero embedding and are assigned class 0");
  }
  return p;
}

SpectralComponents SpectralComponents::make(double epsilon, int k, int c) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw ConfigError("epsilon must lie in (0, 0.5)");
  if (k < 1 || c < 1) throw ConfigError("k and c must be >= 1");
  SpectralComponents s;
  s.epsilon = epsilon;
  s.k = k;
  s.c = c;
  s.lambdas = {epsilon, (1.0 - 2.0 * epsilon) * k + epsilon, k * (1.0 - 2.0 * epsilon + epsilon * c) + epsilon};
  return s;
}

Eigen::MatrixXd SpectralComponents::projector(int index) const {
  const Eigen::Index kc = static_cast<Eigen::Index>(k) * c;
  if (kc > dense_guard()) throw GuardError("projector size " + std::to_string(kc) + " exceeds dense guard");
  // I_c ⊗ J_k is block diagonal with all-ones k x k blocks.
  Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(kc, kc);
  for (int b = 0; b < c; ++b) blocks.block(b * k, b * k, k, k).setOnes();
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(kc, kc);
  switch (index) {
    case 0: return Eigen::MatrixXd::Identity(kc, kc) - blocks / k;
    case 1: return blocks / k - ones / static_cast<double>(kc);
    case 2: return ones / static_cast<double>(kc);
    default: throw ConfigError("projector index must be 0, 1 or 2");
  }
}

Eigen::MatrixXd SpectralComponents::gram_target() const {
  const Eigen::Index kc = static_cast<Eigen::Index>(k) * c;
  Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(kc, kc);
  for (int b = 0; b < c; ++b) blocks.block(b * k, b * k, k, k).setOnes();
  return (1.0 - 2.0 * epsilon) * blocks +
         epsilon * (Eigen::MatrixXd::Identity(kc, kc) + Eigen::MatrixXd::Ones(kc, kc));
}

double tcs_error_bound(double epsilon, int k, int c) {
  const auto s = SpectralComponents::make(epsilon, k, c);
  const Eigen::Index kc = static_cast<Eigen::Index>(k) * c;
  Eigen::MatrixXd inv_sq = Eigen::MatrixXd::Zero(kc, kc);
  Eigen::MatrixXd approx = Eigen::MatrixXd::Zero(kc, kc);
  for (int i = 0; i < 3; ++i) {
    const Eigen::MatrixXd m = s.projector(i);
    inv_sq += m / (s.lambdas[i] * s.lambdas[i]);
    approx += m / (epsilon * s.lambdas[i]);
  }
  return 100.0 * (inv_sq - approx).norm() / inv_sq.norm();
}

}  // namespace zen
