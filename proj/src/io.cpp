#include "zen/io.hpp"

#include "zen/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace zen {

void FeatureMatrix::validate() const {
  if (!values.allFinite()) throw ConfigError("feature matrix contains non-finite entries");
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != values.cols()) {
    throw ConfigError("feature names do not match the feature dimension");
  }
}

LabelSet::LabelSet(std::vector<std::int32_t> labels, std::int32_t num_classes,
                   std::vector<std::string> class_names)
    : labels_(std::move(labels)), num_classes_(num_classes), class_names_(std::move(class_names)) {
  if (num_classes_ <= 0) throw ConfigError("label set: need at least one class");
  std::vector<bool> seen(static_cast<std::size_t>(num_classes_), false);
  for (auto y : labels_) {
    if (y < 0 || y >= num_classes_) {
      throw ConfigError("label set: class id " + std::to_string(y) + " outside [0, " +
                        std::to_string(num_classes_) + ")");
    }
    seen[static_cast<std::size_t>(y)] = true;
  }
  for (std::int32_t c = 0; c < num_classes_; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw ConfigError("label set: class " + std::to_string(c) + " has no members");
    }
  }
  if (!class_names_.empty() && static_cast<std::int32_t>(class_names_.size()) != num_classes_) {
    throw ConfigError("label set: class names do not match the class count");
  }
}

Eigen::MatrixXd LabelSet::one_hot() const {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(size(), num_classes_);
  for (std::int64_t i = 0; i < size(); ++i) y(i, labels_[static_cast<std::size_t>(i)]) = 1.0;
  return y;
}

std::vector<std::int64_t> LabelSet::members(std::int32_t c) const {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < size(); ++i) {
    if (labels_[static_cast<std::size_t>(i)] == c) out.push_back(i);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(unquote(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    const auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    fn(line, line_no);
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FeatureMatrix parse_features(std::string_view text) {
  FeatureMatrix fm;
  std::vector<std::vector<double>> rows;
  bool first = true;
  std::size_t width = 0;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto cells = split_csv(line);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t i = 0; i < cells.size(); ++i) numeric = numeric && parse_double(cells[i], row[i]);
    if (first) {
      first = false;
      width = cells.size();
      if (!numeric) {
        fm.names = std::move(cells);
        return;
      }
    }
    if (!numeric) throw ParseError("non-numeric feature value", line_no);
    if (row.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, found " +
                           std::to_string(row.size()),
                       line_no);
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw ParseError("non-finite feature value", line_no);
    }
    rows.push_back(std::move(row));
  });
  fm.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      fm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return fm;
}

FeatureMatrix read_features(const std::string& path) { return parse_features(read_text_file(path)); }

LabelSet parse_labels(std::string_view text, std::int64_t num_nodes) {
  std::vector<std::pair<std::int64_t, std::string>> entries;
  bool first = true;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto cells = split_csv(line);
    std::int64_t id = 0;
    const bool ok = cells.size() == 2 && parse_int(cells[0], id);
    if (first) {
      first = false;
      if (!ok && cells.size() == 2) return;  // header
    }
    if (!ok) throw ParseError("expected 'node_id,label'", line_no);
    if (id < 0) throw ParseError("negative node id", line_no);
    if (cells[1].empty()) throw ParseError("empty label", line_no);
    entries.emplace_back(id, cells[1]);
  });

  std::int64_t n = num_nodes;
  if (n < 0) {
    n = 0;
    for (const auto& [id, _] : entries) n = std::max(n, id + 1);
  }
  bool all_int = true;
  for (const auto& [_, label] : entries) {
    std::int64_t v = 0;
    all_int = all_int && parse_int(label, v) && v >= 0;
  }

  std::vector<std::int32_t> labels(static_cast<std::size_t>(n), -1);
  std::vector<std::string> names;
  std::map<std::string, std::int32_t> name_ids;
  std::int32_t num_classes = 0;
  for (const auto& [id, label] : entries) {
    if (id >= n) throw ConfigError("labels: node id " + std::to_string(id) + " outside [0, " + std::to_string(n) + ")");
    if (labels[static_cast<std::size_t>(id)] != -1) {
      throw ConfigError("labels: node " + std::to_string(id) + " labelled twice");
    }
    std::int32_t y = 0;
    if (all_int) {
      std::int64_t v = 0;
      parse_int(label, v);
      y = static_cast<std::int32_t>(v);
      num_classes = std::max(num_classes, y + 1);
    } else {
      auto [it, inserted] = name_ids.emplace(label, static_cast<std::int32_t>(names.size()));
      if (inserted) names.push_back(label);
      y = it->second;
      num_classes = static_cast<std::int32_t>(names.size());
    }
    labels[static_cast<std::size_t>(id)] = y;
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)] == -1) {
      throw ConfigError("labels: node " + std::to_string(i) + " has no label");
    }
  }
  return LabelSet(std::move(labels), num_classes, std::move(names));
}

LabelSet read_labels(const std::string& path, std::int64_t num_nodes) {
  return parse_labels(read_text_file(path), num_nodes);
}

}  // namespace zen
