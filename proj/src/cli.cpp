#include "zen/cli.hpp"

#include "zen/classifier.hpp"
#include "zen/error.hpp"
#include "zen/harness.hpp"
#include "zen/parallel.hpp"
#include "zen/propagation.hpp"
#include "zen/rsi_approx.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace zen::cli {

namespace {

// Usage-level problems found after flag parsing (missing files, bad values).
class UsageError : public Error {
 public:
  using Error::Error;
};

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("invalid seed '" + std::string(s) + "'");
  }
  return v;
}

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing required flag ") + flag);
  if (!std::filesystem::is_regular_file(path)) {
    throw UsageError(std::string(flag) + ": file not found: " + path);
  }
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write output file: " + path);
  f << content;
  if (!f) throw IoError("failed writing output file: " + path);
}

struct DatasetFlags {
  std::string edges, features, labels, name;

  void add(CLI::App* app, bool with_features = true) {
    app->add_option("--edges", edges, "Hyperedge list file (one hyperedge per line, 0-based ids)");
    if (with_features) {
      app->add_option("--features", features, "Node feature CSV (row i = node i, optional header)");
      app->add_option("--labels", labels, "Label CSV with rows node_id,label");
      app->add_option("--name", name, "Dataset name recorded in the output");
    }
  }

  Dataset load() const {
    require_file(edges, "--edges");
    require_file(features, "--features");
    require_file(labels, "--labels");
    return load_dataset(edges, features, labels, name);
  }
};

// Parameters of `zen run`.
struct RunSpec {
  DatasetFlags data;
  int k = 5;
  std::string seeds = "0..9";
  int grid_denominator = 9;
  std::string variant = "full";
  std::string norm = "sym";
  int threads = default_threads();
  std::string format = "table";
  std::string out;
  bool timing = false;
  bool per_config = false;
  double lr = TrainingParams{}.learning_rate;
  int epochs = TrainingParams{}.epochs;
};

int cmd_run(const RunSpec& spec, std::ostream& out) {
  const auto seeds = parse_seeds(spec.seeds);
  if (spec.k < 1) throw UsageError("--k must be >= 1");
  GridOptions opts;
  opts.variant = parse_variant(spec.variant);
  opts.kind = parse_normalization(spec.norm);
  opts.threads = std::max(1, spec.threads);
  opts.gd = {spec.lr, spec.epochs};
  const Dataset ds = spec.data.load();
  RunResult r = grid_search(ds, simplex_grid(spec.grid_denominator), spec.k, seeds, opts);
  const std::string json = r.to_json(spec.timing, spec.per_config).dump(2) + "\n";
  if (!spec.out.empty()) write_output(spec.out, json, out);
  if (spec.format == "json") {
    if (spec.out.empty()) out << json;
  } else {
    std::ostringstream row;
    row << std::left << std::setw(16) << "dataset" << std::setw(18) << "variant" << std::setw(4) << "k"
        << std::setw(7) << "seeds" << "test acc (%)\n";
    row << std::left << std::setw(16) << r.dataset << std::setw(18) << to_string(r.variant) << std::setw(4) << r.k
        << std::setw(7) << r.seeds.size() << std::fixed << std::setprecision(1) << 100.0 * r.mean_test << " ± "
        << 100.0 * r.std_test << '\n';
    out << row.str();
  }
  return kOk;
}

struct RsiSpec {
  std::string edges;
  std::int64_t node = 0;
  int l = 1;
  std::string method = "exact";
  std::string norm = "sym";
  std::int64_t trials = 100000;
  std::int64_t probes = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

Matvec hop_matvec(const Hypergraph& hg, NormalizationKind kind, int l, DiagTarget target) {
  if (target == DiagTarget::RapHat) {
    auto a1_hat = std::make_shared<SparseMatrix>(build_A1_hat(hg, kind));
    if (l == 1) return [a1_hat](const Eigen::VectorXd& z) { return Eigen::VectorXd(*a1_hat * z); };
    auto a1_star = std::make_shared<SparseMatrix>(a1_hat->without_diagonal());
    const auto m = two_hop_middle_factor(hg, kind);
    auto middle = std::make_shared<Eigen::VectorXd>(Eigen::Map<const Eigen::VectorXd>(m.data(), static_cast<Eigen::Index>(m.size())));
    return [a1_star, middle](const Eigen::VectorXd& z) {
      const Eigen::VectorXd y = *a1_star * z;
      return Eigen::VectorXd(*a1_star * Eigen::VectorXd(middle->cwiseProduct(y)));
    };
  }
  auto step = std::make_shared<SparseMatrix>(baseline_base_matrix(hg, BaselineRecipe::alldeepset()));
  return [step, l](const Eigen::VectorXd& z) {
    Eigen::VectorXd y = z;
    for (int i = 0; i < l; ++i) y = *step * y;
    return y;
  };
}

int cmd_rsi(const RsiSpec& spec, std::ostream& out) {
  require_file(spec.edges, "--edges");
  const Hypergraph hg = read_hypergraph(spec.edges);
  if (spec.node < 0 || spec.node >= hg.num_nodes()) throw UsageError("--node outside [0, num_nodes)");
  if (spec.l < 1) throw UsageError("--l must be >= 1");
  const auto kind = parse_normalization(spec.norm);
  const auto node = static_cast<NodeId>(spec.node);

  DiagTarget target = DiagTarget::RapHat;
  if (spec.method == "walk" || spec.l > 2) target = DiagTarget::WalkMatrix;

  double value = 0.0;
  if (spec.method == "exact") {
    if (target == DiagTarget::RapHat) {
      value = (spec.l == 1 ? rsi_diag_1(hg, kind) : rsi_diag_2(hg, kind))[static_cast<std::size_t>(node)];
    } else {
      value = dense_diag_oracle(hg, kind, spec.l, target)[node];
    }
  } else if (spec.method == "walk") {
    value = random_walk_return_prob(hg, node, {spec.l, spec.trials, spec.seed}, std::max(1, spec.threads));
  } else if (spec.method == "hutchinson") {
    value = hutchinson_diag(hop_matvec(hg, kind, spec.l, target), hg.num_nodes(), {spec.probes, spec.seed})[node];
  } else {
    throw UsageError("--method must be exact, walk or hutchinson");
  }

  nlohmann::json j;
  j["node"] = spec.node;
  j["l"] = spec.l;
  j["method"] = spec.method;
  j["norm"] = to_string(kind);
  j["target"] = to_string(target);
  j["value"] = value;
  if (hg.num_nodes() <= dense_guard()) {
    j["exact"] = dense_diag_oracle(hg, kind, spec.l, target)[node];
  } else {
    j["exact"] = nullptr;
  }
  write_output(spec.out, j.dump() + "\n", out);
  return kOk;
}

struct ExplainSpec {
  DatasetFlags data;
  int k = 3;
  std::uint64_t seed = 0;
  int grid_denominator = 9;
  std::string norm = "sym";
  std::string format = "csv";
  std::string out;
};

int cmd_explain(const ExplainSpec& spec, std::ostream& out) {
  if (spec.k < 1) throw UsageError("--k must be >= 1");
  const Dataset ds = spec.data.load();
  const PreparedDataset prepared(ds, parse_normalization(spec.norm));
  const auto best = best_config_weights(prepared, simplex_grid(spec.grid_denominator), spec.k, spec.seed);
  const auto report = explain_weights(best.weights, ds.features.names, ds.labels.class_names());
  if (spec.format == "json") {
    nlohmann::json j = report.to_json();
    j["selected_alphas"] = best.config.alphas;
    j["val_acc"] = best.score.val_acc;
    write_output(spec.out, j.dump(2) + "\n", out);
  } else {
    write_output(spec.out, report.to_csv(), out);
  }
  return kOk;
}

struct ErrBoundSpec {
  double epsilon = 0.1;
  int k = 5;
  int c = 10;
  std::string format = "table";
};

int cmd_errbound(const ErrBoundSpec& spec, std::ostream& out) {
  if (!(spec.epsilon > 0.0)) throw UsageError("--epsilon must be > 0");
  const double pct = tcs_error_bound(spec.epsilon, spec.k, spec.c);
  if (spec.format == "json") {
    out << nlohmann::json{{"epsilon", spec.epsilon}, {"k", spec.k}, {"c", spec.c}, {"relative_error_percent", pct}}.dump()
        << '\n';
  } else {
    out << std::fixed << std::setprecision(2) << pct << "%\n";
  }
  return kOk;
}

struct MatrixSpec {
  std::string edges;
  std::string which = "P_star";
  std::string norm = "sym";
  std::vector<double> alphas{1.0 / 3, 1.0 / 3, 1.0 / 3};
  bool no_rap = false;
  std::string out;
};

int cmd_matrix(const MatrixSpec& spec, std::ostream& out) {
  require_file(spec.edges, "--edges");
  const Hypergraph hg = read_hypergraph(spec.edges);
  const auto kind = parse_normalization(spec.norm);
  SparseMatrix m;
  if (spec.which == "H") {
    m = incidence_matrix(hg);
  } else if (spec.which == "P_star") {
    if (spec.alphas.size() != 3) throw UsageError("--alphas needs three values");
    PropagationConfig cfg;
    cfg.alphas = {spec.alphas[0], spec.alphas[1], spec.alphas[2]};
    cfg.normalization = kind;
    cfg.rap_enabled = !spec.no_rap;
    m = build_P_star(hg, cfg);
  } else {
    const auto basis = PropagationBasis::build(hg, kind);
    if (spec.which == "A1_hat") m = basis.A1_hat;
    else if (spec.which == "A1_star") m = basis.A1_star;
    else if (spec.which == "A2_hat") m = basis.A2_hat;
    else if (spec.which == "A2_star") m = basis.A2_star;
    else throw UsageError("--which must be H, A1_hat, A1_star, A2_hat, A2_star or P_star");
  }
  std::ostringstream os;
  m.write_triplets(os);
  write_output(spec.out, os.str(), out);
  return kOk;
}

}  // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const auto a = parse_u64(item.substr(0, dots));
      const auto b = parse_u64(item.substr(dots + 2));
      if (b < a) throw UsageError("seed range '" + std::string(item) + "' is decreasing");
      if (b - a > 1000000) throw UsageError("seed range too large");
      for (auto s = a; s <= b; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_u64(item));
    }
  }
  if (seeds.empty()) throw UsageError("no seeds given");
  return seeds;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parameter-free linear hypergraph node classifier"};
  app.name("zen");
  app.require_subcommand(1);

  RunSpec run_spec;
  auto* run_cmd = app.add_subcommand("run", "k-shot grid search over the propagation simplex");
  run_spec.data.add(run_cmd);
  run_cmd->add_option("--k", run_spec.k, "Labelled nodes per class for training (and for validation)");
  run_cmd->add_option("--seeds", run_spec.seeds, "Split seeds, e.g. 0..9 or 1,4,7");
  run_cmd->add_option("--grid-denominator", run_spec.grid_denominator, "Simplex lattice resolution (9 -> 55 configs)");
  run_cmd->add_option("--variant", run_spec.variant, "full | no_rap | no_tcs | no_both | linearized_hgnn");
  run_cmd->add_option("--norm", run_spec.norm, "Adjacency normalization: sym | row");
  run_cmd->add_option("--threads", run_spec.threads, "Worker threads (results do not depend on it)");
  run_cmd->add_option("--format", run_spec.format, "Console output: table | json")->check(CLI::IsMember({"table", "json"}));
  run_cmd->add_option("--out", run_spec.out, "Write the RunResult JSON to this path");
  run_cmd->add_flag("--timing", run_spec.timing, "Record wall-clock timings in timing_ms");
  run_cmd->add_flag("--per-config", run_spec.per_config, "Include every configuration's accuracies");
  run_cmd->add_option("--lr", run_spec.lr, "Learning rate of the gradient-descent variants");
  run_cmd->add_option("--epochs", run_spec.epochs, "Epochs of the gradient-descent variants");

  RsiSpec rsi_spec;
  auto* rsi_cmd = app.add_subcommand("rsi", "Residual self-information of one node: closed form or estimators");
  rsi_cmd->add_option("--edges", rsi_spec.edges, "Hyperedge list file");
  rsi_cmd->add_option("--node", rsi_spec.node, "Node id");
  rsi_cmd->add_option("--l", rsi_spec.l, "Hop count / walk length");
  rsi_cmd->add_option("--method", rsi_spec.method, "exact | walk | hutchinson");
  rsi_cmd->add_option("--norm", rsi_spec.norm, "sym | row");
  rsi_cmd->add_option("--trials", rsi_spec.trials, "Random-walk trials");
  rsi_cmd->add_option("--probes", rsi_spec.probes, "Hutchinson probe vectors");
  rsi_cmd->add_option("--seed", rsi_spec.seed, "RNG seed");
  rsi_cmd->add_option("--threads", rsi_spec.threads, "Worker threads for the walk estimator");
  rsi_cmd->add_option("--out", rsi_spec.out, "Output path (default stdout)");

  ExplainSpec explain_spec;
  auto* explain_cmd = app.add_subcommand("explain", "Weight-matrix importance report for the best configuration");
  explain_spec.data.add(explain_cmd);
  explain_cmd->add_option("--k", explain_spec.k, "Shots per class");
  explain_cmd->add_option("--seed", explain_spec.seed, "Split seed");
  explain_cmd->add_option("--grid-denominator", explain_spec.grid_denominator, "Simplex lattice resolution");
  explain_cmd->add_option("--norm", explain_spec.norm, "sym | row");
  explain_cmd->add_option("--format", explain_spec.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  explain_cmd->add_option("--out", explain_spec.out, "Output path (default stdout)");

  ErrBoundSpec eb_spec;
  auto* eb_cmd = app.add_subcommand("errbound", "Relative error of the closed-form weight approximation");
  eb_cmd->add_option("--epsilon", eb_spec.epsilon, "Inter-class cosine similarity epsilon");
  eb_cmd->add_option("--k", eb_spec.k, "Shots per class");
  eb_cmd->add_option("--c", eb_spec.c, "Number of classes");
  eb_cmd->add_option("--format", eb_spec.format, "table | json")->check(CLI::IsMember({"table", "json"}));

  MatrixSpec mx_spec;
  auto* mx_cmd = app.add_subcommand("matrix", "Export a propagation matrix as sorted 'row col value' triplets");
  mx_cmd->add_option("--edges", mx_spec.edges, "Hyperedge list file");
  mx_cmd->add_option("--which", mx_spec.which, "H | A1_hat | A1_star | A2_hat | A2_star | P_star");
  mx_cmd->add_option("--norm", mx_spec.norm, "sym | row");
  mx_cmd->add_option("--alphas", mx_spec.alphas, "alpha_0 alpha_1 alpha_2 for P_star")->delimiter(',');
  mx_cmd->add_flag("--no-rap", mx_spec.no_rap, "Keep the diagonals (no redundancy removal)");
  mx_cmd->add_option("--out", mx_spec.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kOk;
    }
    err << "zen: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*run_cmd) return cmd_run(run_spec, out);
    if (*rsi_cmd) return cmd_rsi(rsi_spec, out);
    if (*explain_cmd) return cmd_explain(explain_spec, out);
    if (*eb_cmd) return cmd_errbound(eb_spec, out);
    if (*mx_cmd) return cmd_matrix(mx_spec, out);
  } catch (const UsageError& e) {
    err << "zen: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "zen: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "zen: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "zen: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "zen: error: " << e.what() << '\n';
    return kComputationError;
  }
  return kUsageError;
}

}  // namespace zen::cli
