#pragma once

#include "zen/classifier.hpp"
#include "zen/hypergraph.hpp"
#include "zen/io.hpp"
#include "zen/propagation.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zen {

struct Dataset {
  std::string name;
  Hypergraph hypergraph;
  FeatureMatrix features;
  LabelSet labels;

  void validate() const;
};

// An empty name defaults to the edges file's stem, or to its directory's
// name when the file is called edges.*.
Dataset load_dataset(const std::string& edges_path, const std::string& features_path,
                     const std::string& labels_path, std::string name = {});

enum class Variant { Full, NoRap, NoTcs, NoBoth, LinearizedHgnn };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);
bool uses_rap(Variant v);
bool uses_tcs(Variant v);

struct SimplexGrid {
  int denominator = 1;
  std::vector<std::array<int, 3>> lattice;
  std::vector<std::array<double, 3>> alphas;

  std::size_t size() const { return alphas.size(); }
};

// Every (a, b, c) with a + b + c = denominator, divided by the
// denominator, in descending lexicographic order: (q,0,0), (q-1,1,0), ...
SimplexGrid simplex_grid(int denominator);

// Samples k training and k validation nodes per class without replacement;
// everything else is test. Class y is shuffled with stream y of the seed.
Split make_kshot_split(const LabelSet& labels, int k, std::uint64_t seed);

double evaluate_accuracy(const Prediction& pred, const std::vector<std::uint8_t>& mask, const LabelSet& labels);

// Hop-propagated features X, A1 X and A2 X for both RAP settings plus the
// linearized-HGNN features A_2^HGNN X. Built once per dataset; the
// embedding of any coefficient triple is a row-normalized mix of them.
class PreparedDataset {
 public:
  PreparedDataset(const Dataset& dataset, NormalizationKind kind);

  const Dataset& dataset() const { return *dataset_; }
  NormalizationKind kind() const { return kind_; }
  const PropagationBasis& basis() const { return basis_; }

  EmbeddingMatrix embedding(const std::array<double, 3>& alphas, bool rap_enabled) const;
  EmbeddingMatrix hgnn_embedding() const;

 private:
  const Dataset* dataset_;
  NormalizationKind kind_;
  PropagationBasis basis_;
  std::array<Eigen::MatrixXd, 3> rap_hops_;
  std::array<Eigen::MatrixXd, 3> plain_hops_;
  Eigen::MatrixXd hgnn_;
};

struct ConfigScore {
  double val_acc = 0.0;
  double test_acc = 0.0;  // NaN when the test mask is empty
};

// Evaluates one variant for one configuration on one split. The weights come
// from tcs_weights (full, no_rap) or train_weights_gd (no_tcs, no_both,
// linearized_hgnn); linearized_hgnn ignores the coefficients.
ConfigScore run_config(const PreparedDataset& prepared, const PropagationConfig& config, const Split& split,
                       Variant variant, const TrainingParams& gd = {});
ConfigScore run_config(const Dataset& dataset, const PropagationConfig& config, const Split& split,
                       Variant variant, const TrainingParams& gd = {});

struct GridOptions {
  Variant variant = Variant::Full;
  NormalizationKind kind = NormalizationKind::Symmetric;
  int threads = 1;
  TrainingParams gd{};
};

struct SeedRecord {
  std::uint64_t seed = 0;
  std::size_t selected = 0;
  std::array<double, 3> selected_alphas{};
  double val_acc = 0.0;
  double test_acc = 0.0;
  std::vector<ConfigScore> per_config;
};

struct RunResult {
  std::string dataset;
  int k = 0;
  Variant variant = Variant::Full;
  NormalizationKind kind = NormalizationKind::Symmetric;
  int grid_denominator = 0;
  std::vector<std::array<double, 3>> grid;
  std::vector<std::uint64_t> seeds;
  std::vector<SeedRecord> per_seed;
  double mean_test = 0.0;
  double std_test = 0.0;  // sample standard deviation (ddof = 1); 0 for one seed
  std::map<std::string, double> timing_ms;

  // Layout: {dataset, k, variant, grid_denominator, seeds, per_seed, mean_test,
  // std_test, timing_ms, ...}. timing_ms is null unless `with_timing`, so the
  // default output is a pure function of the inputs.
  nlohmann::json to_json(bool with_timing = false, bool with_per_config = false) const;
};

// For each seed: evaluate every configuration, select the best validation
// accuracy (ties -> earliest configuration) and report its test accuracy.
RunResult grid_search(const PreparedDataset& prepared, const SimplexGrid& grid, int k,
                      const std::vector<std::uint64_t>& seeds, const GridOptions& options);
RunResult grid_search(const Dataset& dataset, const SimplexGrid& grid, int k,
                      const std::vector<std::uint64_t>& seeds, const GridOptions& options);

// Weight-matrix report. ranks[i][k] is the 1-based rank of class k within
// feature row i (1 = largest, ties -> lower class index).
struct ImportanceReport {
  std::vector<std::string> features;
  std::vector<std::string> classes;
  Eigen::MatrixXd values;
  std::vector<std::vector<int>> ranks;

  // Header `feature,<class...>`, one row per feature.
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

// Empty name lists fall back to f0.. and c0..; otherwise sizes must match W.
ImportanceReport explain_weights(const WeightMatrix& W, std::vector<std::string> feature_names,
                                 std::vector<std::string> class_names);

struct BestWeights {
  PropagationConfig config;
  WeightMatrix weights;
  ConfigScore score;
};

// TCS weights of the best-validation configuration for one seed's split.
BestWeights best_config_weights(const PreparedDataset& prepared, const SimplexGrid& grid, int k,
                                std::uint64_t seed);

}  // namespace zen
