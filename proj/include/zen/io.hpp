#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zen {

// Dense node feature matrix X (row i = node i). Names are optional.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> names;

  Eigen::Index num_nodes() const { return values.rows(); }
  Eigen::Index dim() const { return values.cols(); }
  // Throws ConfigError on non-finite entries or a names/columns mismatch.
  void validate() const;
};

// Class id per node plus the class count. Every class in [0, c) must be used.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::vector<std::int32_t> labels, std::int32_t num_classes,
           std::vector<std::string> class_names = {});

  std::int64_t size() const { return static_cast<std::int64_t>(labels_.size()); }
  std::int32_t num_classes() const { return num_classes_; }
  std::int32_t operator[](std::int64_t node) const { return labels_[static_cast<std::size_t>(node)]; }
  const std::vector<std::int32_t>& labels() const { return labels_; }
  const std::vector<std::string>& class_names() const { return class_names_; }

  // n x c one-hot matrix Y.
  Eigen::MatrixXd one_hot() const;
  // Nodes of class `c`, ascending.
  std::vector<std::int64_t> members(std::int32_t c) const;

 private:
  std::vector<std::int32_t> labels_;
  std::int32_t num_classes_ = 0;
  std::vector<std::string> class_names_;
};

// CSV, one row per node. A first row containing any non-numeric cell is
// taken as a header of feature names. Values are used as read.
FeatureMatrix parse_features(std::string_view text);
FeatureMatrix read_features(const std::string& path);

// CSV rows `node_id,label`, optional header. Integer labels are class ids;
// otherwise labels are class names, numbered in order of first appearance.
// Every node in [0, num_nodes) must appear exactly once; num_nodes < 0
// infers the count from the largest id.
LabelSet parse_labels(std::string_view text, std::int64_t num_nodes = -1);
LabelSet read_labels(const std::string& path, std::int64_t num_nodes = -1);

std::string read_text_file(const std::string& path);

}  // namespace zen
