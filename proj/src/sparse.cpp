#include "zen/sparse.hpp"

#include "zen/error.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace zen {

namespace {

void require_same_shape(const SparseMatrix& a, const SparseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << "sparse " << op << ": shape mismatch (" << a.rows() << "x" << a.cols() << " vs "
        << b.rows() << "x" << b.cols() << ")";
    throw ConfigError(msg.str());
  }
}

}  // namespace

SparseMatrix::SparseMatrix(Eigen::Index rows, Eigen::Index cols) : m_(rows, cols) {
  m_.makeCompressed();
}

SparseMatrix::SparseMatrix(Storage storage) : m_(std::move(storage)) { canonicalize(); }

void SparseMatrix::canonicalize() {
  m_.prune([](Eigen::Index, Eigen::Index, double v) { return v != 0.0; });
  m_.makeCompressed();
  if (!is_canonical()) {
    // Double transposition re-sorts the inner indices.
    Eigen::SparseMatrix<double, Eigen::ColMajor> tmp = m_;
    m_ = tmp;
    m_.makeCompressed();
  }
}

SparseMatrix SparseMatrix::from_triplets(Eigen::Index rows, Eigen::Index cols,
                                         std::span<const Triplet> triplets) {
  std::vector<Eigen::Triplet<double>> list;
  list.reserve(triplets.size());
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw ConfigError("sparse triplet out of range");
    }
    if (!std::isfinite(t.value)) throw ComputationError("non-finite sparse entry");
    list.emplace_back(t.row, t.col, t.value);
  }
  Storage m(rows, cols);
  m.setFromTriplets(list.begin(), list.end());
  return SparseMatrix(std::move(m));
}

SparseMatrix SparseMatrix::identity(Eigen::Index n) {
  Storage m(n, n);
  m.setIdentity();
  SparseMatrix out(std::move(m));
  out.symmetric_ = true;
  return out;
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  std::vector<Triplet> t;
  t.reserve(values.size());
  for (Eigen::Index i = 0; i < n; ++i) t.push_back({i, i, values[static_cast<std::size_t>(i)]});
  SparseMatrix out = from_triplets(n, n, t);
  out.symmetric_ = true;
  return out;
}

SparseMatrix SparseMatrix::from_dense(const Eigen::MatrixXd& dense) {
  return SparseMatrix(Storage(dense.sparseView(0.0, 0.0)));
}

std::size_t SparseMatrix::memory_bytes() const {
  return nnz() * (sizeof(double) + sizeof(Storage::StorageIndex)) +
         static_cast<std::size_t>(m_.outerSize() + 1) * sizeof(Storage::StorageIndex);
}

std::vector<double> SparseMatrix::diagonal() const {
  const Eigen::Index n = std::min(rows(), cols());
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Storage::InnerIterator it(m_, i); it; ++it) {
      if (it.col() == i) d[static_cast<std::size_t>(i)] = it.value();
    }
  }
  return d;
}

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> s(static_cast<std::size_t>(rows()), 0.0);
  for (Eigen::Index i = 0; i < m_.outerSize(); ++i) {
    for (Storage::InnerIterator it(m_, i); it; ++it) s[static_cast<std::size_t>(i)] += it.value();
  }
  return s;
}

std::vector<double> SparseMatrix::col_sums() const {
  std::vector<double> s(static_cast<std::size_t>(cols()), 0.0);
  for (Eigen::Index i = 0; i < m_.outerSize(); ++i) {
    for (Storage::InnerIterator it(m_, i); it; ++it) s[static_cast<std::size_t>(it.col())] += it.value();
  }
  return s;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix out(Storage(m_.transpose()));
  out.symmetric_ = symmetric_;
  return out;
}

SparseMatrix SparseMatrix::scaled(double factor) const {
  SparseMatrix out(Storage(m_ * factor));
  out.symmetric_ = symmetric_;
  return out;
}

SparseMatrix SparseMatrix::scaled(std::span<const double> left,
                                  std::span<const double> right) const {
  if ((!left.empty() && static_cast<Eigen::Index>(left.size()) != rows()) ||
      (!right.empty() && static_cast<Eigen::Index>(right.size()) != cols())) {
    throw ConfigError("sparse scaling: vector length does not match shape");
  }
  Storage m = m_;
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    const double l = left.empty() ? 1.0 : left[static_cast<std::size_t>(i)];
    for (Storage::InnerIterator it(m, i); it; ++it) {
      const double r = right.empty() ? 1.0 : right[static_cast<std::size_t>(it.col())];
      it.valueRef() *= l * r;
    }
  }
  return SparseMatrix(std::move(m));
}

SparseMatrix SparseMatrix::without_diagonal() const {
  Storage m = m_;
  m.prune([](Eigen::Index r, Eigen::Index c, double) { return r != c; });
  SparseMatrix out(std::move(m));
  out.symmetric_ = symmetric_;
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols() != rhs.rows()) throw ConfigError("sparse product: inner dimensions differ");
  return SparseMatrix(Storage(m_ * rhs.m_));
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  require_same_shape(*this, rhs, "sum");
  SparseMatrix out(Storage(m_ + rhs.m_));
  out.symmetric_ = symmetric_ && rhs.symmetric_;
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const {
  require_same_shape(*this, rhs, "difference");
  SparseMatrix out(Storage(m_ - rhs.m_));
  out.symmetric_ = symmetric_ && rhs.symmetric_;
  return out;
}

Eigen::MatrixXd SparseMatrix::operator*(const Eigen::MatrixXd& rhs) const {
  if (cols() != rhs.rows()) throw ConfigError("sparse-dense product: inner dimensions differ");
  return m_ * rhs;
}

Eigen::VectorXd SparseMatrix::operator*(const Eigen::VectorXd& rhs) const {
  if (cols() != rhs.size()) throw ConfigError("sparse matvec: dimension mismatch");
  return m_ * rhs;
}

Eigen::MatrixXd SparseMatrix::to_dense() const { return Eigen::MatrixXd(m_); }

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (Eigen::Index i = 0; i < m_.outerSize(); ++i) {
    for (Storage::InnerIterator it(m_, i); it; ++it) out.push_back({i, it.col(), it.value()});
  }
  return out;
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (rows() != cols()) return false;
  const Storage t = m_.transpose();
  const Storage diff = m_ - t;
  for (Eigen::Index i = 0; i < diff.outerSize(); ++i) {
    for (Storage::InnerIterator it(diff, i); it; ++it) {
      if (std::abs(it.value()) > tol) return false;
    }
  }
  return true;
}

bool SparseMatrix::mark_symmetric(double tol) {
  symmetric_ = is_symmetric(tol);
  return symmetric_;
}

bool SparseMatrix::is_canonical() const {
  if (!m_.isCompressed()) return false;
  for (Eigen::Index i = 0; i < m_.outerSize(); ++i) {
    Eigen::Index prev = -1;
    for (Storage::InnerIterator it(m_, i); it; ++it) {
      if (it.col() <= prev || it.value() == 0.0) return false;
      prev = it.col();
    }
  }
  return true;
}

void SparseMatrix::write_triplets(std::ostream& os) const {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m_.outerSize(); ++i) {
    for (Storage::InnerIterator it(m_, i); it; ++it) {
      os << i << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  os.flags(flags);
  os.precision(precision);
}

SparseMatrix weighted_sum(std::span<const double> weights,
                          std::span<const SparseMatrix* const> terms) {
  if (weights.size() != terms.size() || terms.empty()) {
    throw ConfigError("weighted_sum: need one weight per term");
  }
  SparseMatrix::Storage acc(terms[0]->rows(), terms[0]->cols());
  bool symmetric = true;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    require_same_shape(*terms[0], *terms[i], "weighted sum");
    symmetric = symmetric && terms[i]->symmetric();
    if (weights[i] == 0.0) continue;
    acc = acc + weights[i] * terms[i]->storage();
  }
  SparseMatrix out(std::move(acc));
  if (symmetric) out.mark_symmetric();
  return out;
}

}  // namespace zen
