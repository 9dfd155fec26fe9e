#include "zen/harness.hpp"

#include "zen/error.hpp"
#include "zen/log.hpp"
#include "zen/parallel.hpp"
#include "zen/rng.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <sstream>

namespace zen {

void Dataset::validate() const {
  features.validate();
  if (features.num_nodes() != hypergraph.num_nodes()) {
    throw ConfigError("dataset '" + name + "': features have " + std::to_string(features.num_nodes()) +
                      " rows but the hypergraph has " + std::to_string(hypergraph.num_nodes()) + " nodes");
  }
  if (labels.size() != hypergraph.num_nodes()) {
    throw ConfigError("dataset '" + name + "': label count does not match the node count");
  }
}

Dataset load_dataset(const std::string& edges_path, const std::string& features_path,
                     const std::string& labels_path, std::string name) {
  Dataset ds;
  if (name.empty()) {
    // <dir>/edges.hg names the dataset after <dir>
    const std::filesystem::path p = std::filesystem::absolute(edges_path);
    name = p.stem() == "edges" && p.has_parent_path() ? p.parent_path().filename().string() : p.stem().string();
  }
  ds.name = std::move(name);
  ds.hypergraph = read_hypergraph(edges_path);
  ds.features = read_features(features_path);
  std::int64_t n = ds.hypergraph.num_nodes();
  // A trailing run of isolated nodes is invisible in the edge list; the
  // feature rows fix the node count in that case.
  if (ds.features.num_nodes() > n) {
    ds.hypergraph = Hypergraph(ds.features.num_nodes(), ds.hypergraph.edges());
    n = ds.hypergraph.num_nodes();
  }
  ds.labels = read_labels(labels_path, n);
  ds.validate();
  return ds;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::NoRap: return "no_rap";
    case Variant::NoTcs: return "no_tcs";
    case Variant::NoBoth: return "no_both";
    case Variant::LinearizedHgnn: return "linearized_hgnn";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (auto v : {Variant::Full, Variant::NoRap, Variant::NoTcs, Variant::NoBoth, Variant::LinearizedHgnn}) {
    if (to_string(v) == name) return v;
  }
  throw ConfigError("unknown variant '" + name + "'");
}

bool uses_rap(Variant v) { return v == Variant::Full || v == Variant::NoTcs; }
bool uses_tcs(Variant v) { return v == Variant::Full || v == Variant::NoRap; }

SimplexGrid simplex_grid(int denominator) {
  if (denominator < 1) throw ConfigError("grid denominator must be >= 1");
  SimplexGrid g;
  g.denominator = denominator;
  for (int a = denominator; a >= 0; --a) {
    for (int b = denominator - a; b >= 0; --b) {
      const int c = denominator - a - b;
      g.lattice.push_back({a, b, c});
      const double q = denominator;
      g.alphas.push_back({a / q, b / q, c / q});
    }
  }
  return g;
}

Split make_kshot_split(const LabelSet& labels, int k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("shots k must be >= 1");
  const auto n = static_cast<std::size_t>(labels.size());
  Split s;
  s.shots = k;
  s.num_classes = labels.num_classes();
  s.train_mask.assign(n, 0);
  s.val_mask.assign(n, 0);
  s.test_mask.assign(n, 1);
  const CounterRng root(seed);
  for (std::int32_t y = 0; y < labels.num_classes(); ++y) {
    auto members = labels.members(y);
    if (static_cast<std::int64_t>(members.size()) < 2 * k) {
      const std::string name = labels.class_names().empty() ? std::to_string(y)
                                                            : labels.class_names()[static_cast<std::size_t>(y)];
      throw ConfigError("class " + name + " has " + std::to_string(members.size()) + " members; a " +
                        std::to_string(k) + "-shot split needs " + std::to_string(2 * k));
    }
    CounterRng rng = root.split(static_cast<std::uint64_t>(y));
    // Partial Fisher-Yates: only the first 2k positions are needed.
    for (std::size_t i = 0; i < static_cast<std::size_t>(2 * k); ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(members.size() - i));
      std::swap(members[i], members[j]);
    }
    for (int i = 0; i < k; ++i) {
      const auto tr = static_cast<std::size_t>(members[static_cast<std::size_t>(i)]);
      const auto va = static_cast<std::size_t>(members[static_cast<std::size_t>(k + i)]);
      s.train_mask[tr] = 1;
      s.test_mask[tr] = 0;
      s.val_mask[va] = 1;
      s.test_mask[va] = 0;
    }
  }
  if (std::none_of(s.test_mask.begin(), s.test_mask.end(), [](std::uint8_t m) { return m != 0; })) {
    warn("k-shot split leaves the test mask empty");
  }
  return s;
}

double evaluate_accuracy(const Prediction& pred, const std::vector<std::uint8_t>& mask, const LabelSet& labels) {
  if (mask.size() != pred.hard_labels.size() || static_cast<std::int64_t>(mask.size()) != labels.size()) {
    throw ConfigError("evaluate_accuracy: mask, prediction and labels differ in length");
  }
  std::int64_t total = 0;
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    ++total;
    if (pred.hard_labels[i] == labels[static_cast<std::int64_t>(i)]) ++correct;
  }
  if (total == 0) throw ConfigError("evaluate_accuracy: empty mask");
  return static_cast<double>(correct) / static_cast<double>(total);
}

PreparedDataset::PreparedDataset(const Dataset& dataset, NormalizationKind kind)
    : dataset_(&dataset), kind_(kind), basis_(PropagationBasis::build(dataset.hypergraph, kind)) {
  dataset.validate();
  const Eigen::MatrixXd& x = dataset.features.values;
  rap_hops_ = {x, basis_.A1_star * x, basis_.A2_star * x};
  plain_hops_ = {x, basis_.A1_hat * x, basis_.A2_hat * x};
  hgnn_ = build_baseline_adjacency(dataset.hypergraph, BaselineRecipe::hgnn(), 2) * x;
}

EmbeddingMatrix PreparedDataset::embedding(const std::array<double, 3>& alphas, bool rap_enabled) const {
  const auto& hops = rap_enabled ? rap_hops_ : plain_hops_;
  Eigen::MatrixXd px = alphas[0] * hops[0];
  if (alphas[1] != 0.0) px += alphas[1] * hops[1];
  if (alphas[2] != 0.0) px += alphas[2] * hops[2];
  return {normalize_rows(px)};
}

EmbeddingMatrix PreparedDataset::hgnn_embedding() const { return {normalize_rows(hgnn_)}; }

namespace {

ConfigScore score_embedding(const EmbeddingMatrix& z, const Split& split, const LabelSet& labels, bool tcs,
                            const TrainingParams& gd) {
  const WeightMatrix w = tcs ? tcs_weights(z, split, labels) : train_weights_gd(z, split, labels, gd);
  const Prediction p = predict(z, w, /*warn_zero_rows=*/false);
  ConfigScore s;
  s.val_acc = evaluate_accuracy(p, split.val_mask, labels);
  const bool has_test = std::any_of(split.test_mask.begin(), split.test_mask.end(), [](auto m) { return m != 0; });
  s.test_acc = has_test ? evaluate_accuracy(p, split.test_mask, labels) : std::numeric_limits<double>::quiet_NaN();
  return s;
}

EmbeddingMatrix variant_embedding(const PreparedDataset& prepared, const std::array<double, 3>& alphas,
                                  Variant variant) {
  if (variant == Variant::LinearizedHgnn) return prepared.hgnn_embedding();
  return prepared.embedding(alphas, uses_rap(variant));
}

}  // namespace

ConfigScore run_config(const PreparedDataset& prepared, const PropagationConfig& config, const Split& split,
                       Variant variant, const TrainingParams& gd) {
  config.validate();
  if (config.normalization != prepared.kind()) throw ConfigError("run_config: normalization mismatch");
  const auto& labels = prepared.dataset().labels;
  split.validate(labels);
  return score_embedding(variant_embedding(prepared, config.alphas, variant), split, labels, uses_tcs(variant), gd);
}

ConfigScore run_config(const Dataset& dataset, const PropagationConfig& config, const Split& split,
                       Variant variant, const TrainingParams& gd) {
  const PreparedDataset prepared(dataset, config.normalization);
  return run_config(prepared, config, split, variant, gd);
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void aggregate(RunResult& r) {
  std::vector<double> accs;
  for (const auto& rec : r.per_seed) {
    if (!std::isnan(rec.test_acc)) accs.push_back(rec.test_acc);
  }
  if (accs.empty()) {
    r.mean_test = std::numeric_limits<double>::quiet_NaN();
    r.std_test = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double sum = 0.0;
  for (double a : accs) sum += a;
  r.mean_test = sum / static_cast<double>(accs.size());
  double sq = 0.0;
  for (double a : accs) sq += (a - r.mean_test) * (a - r.mean_test);
  r.std_test = accs.size() > 1 ? std::sqrt(sq / static_cast<double>(accs.size() - 1)) : 0.0;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

RunResult grid_search(const PreparedDataset& prepared, const SimplexGrid& grid, int k,
                      const std::vector<std::uint64_t>& seeds, const GridOptions& options) {
  if (grid.size() == 0) throw ConfigError("grid_search: empty grid");
  if (seeds.empty()) throw ConfigError("grid_search: no seeds");
  if (options.kind != prepared.kind()) throw ConfigError("grid_search: normalization mismatch");
  options.gd.validate();
  const auto& labels = prepared.dataset().labels;

  RunResult r;
  r.dataset = prepared.dataset().name;
  r.k = k;
  r.variant = options.variant;
  r.kind = options.kind;
  r.grid_denominator = grid.denominator;
  r.grid = grid.alphas;
  r.seeds = seeds;

  auto t0 = std::chrono::steady_clock::now();
  std::vector<Split> splits;
  splits.reserve(seeds.size());
  for (auto s : seeds) splits.push_back(make_kshot_split(labels, k, s));
  r.timing_ms["splits"] = elapsed_ms(t0);

  // scores[config][seed]; the variant-independent path embeds once per config.
  t0 = std::chrono::steady_clock::now();
  const bool alpha_free = options.variant == Variant::LinearizedHgnn;
  const std::size_t distinct = alpha_free ? 1 : grid.size();
  std::vector<std::vector<ConfigScore>> scores(distinct, std::vector<ConfigScore>(seeds.size()));
  parallel_for(static_cast<std::int64_t>(distinct), options.threads, [&](std::int64_t c) {
    const auto z = variant_embedding(prepared, grid.alphas[static_cast<std::size_t>(c)], options.variant);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      scores[static_cast<std::size_t>(c)][s] = score_embedding(z, splits[s], labels, uses_tcs(options.variant), options.gd);
    }
  });
  r.timing_ms["evaluate"] = elapsed_ms(t0);

  for (std::size_t s = 0; s < seeds.size(); ++s) {
    SeedRecord rec;
    rec.seed = seeds[s];
    rec.per_config.reserve(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) rec.per_config.push_back(scores[alpha_free ? 0 : c][s]);
    std::size_t best = 0;
    for (std::size_t c = 1; c < grid.size(); ++c) {
      if (rec.per_config[c].val_acc > rec.per_config[best].val_acc) best = c;
    }
    rec.selected = best;
    rec.selected_alphas = grid.alphas[best];
    rec.val_acc = rec.per_config[best].val_acc;
    rec.test_acc = rec.per_config[best].test_acc;
    r.per_seed.push_back(std::move(rec));
  }
  aggregate(r);
  const auto isolated = prepared.dataset().hypergraph.isolated_nodes().size();
  if (isolated > 0) {
    warn(std::to_string(isolated) + " isolated node(s) get a zero embedding, and predict class 0, whenever alpha_0 = 0");
  }
  return r;
}

RunResult grid_search(const Dataset& dataset, const SimplexGrid& grid, int k,
                      const std::vector<std::uint64_t>& seeds, const GridOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const PreparedDataset prepared(dataset, options.kind);
  const double prep = elapsed_ms(t0);
  RunResult r = grid_search(prepared, grid, k, seeds, options);
  r.timing_ms["propagate"] = prep;
  return r;
}

nlohmann::json RunResult::to_json(bool with_timing, bool with_per_config) const {
  using nlohmann::json;
  json j;
  j["dataset"] = dataset;
  j["k"] = k;
  j["variant"] = to_string(variant);
  j["norm"] = to_string(kind);
  j["grid_denominator"] = grid_denominator;
  j["feature_preprocessing"] = "none";
  j["seeds"] = seeds;
  json per = json::array();
  for (const auto& rec : per_seed) {
    json e;
    e["seed"] = rec.seed;
    e["selected_alphas"] = rec.selected_alphas;
    e["val_acc"] = number_or_null(rec.val_acc);
    e["test_acc"] = number_or_null(rec.test_acc);
    if (with_per_config) {
      json pc = json::array();
      for (std::size_t c = 0; c < rec.per_config.size(); ++c) {
        pc.push_back({{"alphas", grid[c]},
                      {"val_acc", number_or_null(rec.per_config[c].val_acc)},
                      {"test_acc", number_or_null(rec.per_config[c].test_acc)}});
      }
      e["per_config"] = std::move(pc);
    }
    per.push_back(std::move(e));
  }
  j["per_seed"] = std::move(per);
  j["mean_test"] = number_or_null(mean_test);
  j["std_test"] = number_or_null(std_test);
  if (with_timing) {
    j["timing_ms"] = timing_ms;
  } else {
    j["timing_ms"] = nullptr;
  }
  return j;
}

ImportanceReport explain_weights(const WeightMatrix& W, std::vector<std::string> feature_names,
                                 std::vector<std::string> class_names) {
  const auto d = static_cast<std::size_t>(W.values.rows());
  const auto c = static_cast<std::size_t>(W.values.cols());
  if (feature_names.empty()) {
    for (std::size_t i = 0; i < d; ++i) feature_names.push_back("f" + std::to_string(i));
  }
  if (class_names.empty()) {
    for (std::size_t i = 0; i < c; ++i) class_names.push_back("c" + std::to_string(i));
  }
  if (feature_names.size() != d || class_names.size() != c) {
    throw ConfigError("explain_weights: names do not match the weight matrix shape (" + std::to_string(d) + " x " +
                      std::to_string(c) + ")");
  }
  ImportanceReport r;
  r.features = std::move(feature_names);
  r.classes = std::move(class_names);
  r.values = W.values;
  r.ranks.assign(d, std::vector<int>(c, 0));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::size_t> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return W.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) >
             W.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b));
    });
    for (std::size_t pos = 0; pos < c; ++pos) r.ranks[i][order[pos]] = static_cast<int>(pos) + 1;
  }
  return r;
}

std::string ImportanceReport::to_csv() const {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "feature";
  for (const auto& c : classes) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < features.size(); ++i) {
    os << features[i];
    for (std::size_t j = 0; j < classes.size(); ++j) {
      os << ',' << values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json ImportanceReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < features.size(); ++i) {
    std::vector<double> v(classes.size());
    for (std::size_t j = 0; j < classes.size(); ++j) v[j] = values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    rows.push_back({{"feature", features[i]}, {"values", v}, {"ranks", ranks[i]}});
  }
  return {{"classes", classes}, {"features", rows}};
}

BestWeights best_config_weights(const PreparedDataset& prepared, const SimplexGrid& grid, int k,
                                std::uint64_t seed) {
  GridOptions opts;
  opts.kind = prepared.kind();
  const RunResult r = grid_search(prepared, grid, k, {seed}, opts);
  const auto& rec = r.per_seed.front();
  BestWeights out;
  out.config.alphas = rec.selected_alphas;
  out.config.normalization = prepared.kind();
  out.score = rec.per_config[rec.selected];
  const Split split = make_kshot_split(prepared.dataset().labels, k, seed);
  out.weights = tcs_weights(prepared.embedding(rec.selected_alphas, true), split, prepared.dataset().labels);
  return out;
}

}  // namespace zen
