#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace zen {

struct Triplet {
  Eigen::Index row;
  Eigen::Index col;
  double value;
};

// Row-compressed real matrix. Every instance is kept canonical: entries of
// a row are sorted by column, columns are unique and no explicit zero is
// stored. Backed by Eigen's row-major compressed storage.
class SparseMatrix {
 public:
  using Storage = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  SparseMatrix() = default;
  SparseMatrix(Eigen::Index rows, Eigen::Index cols);
  explicit SparseMatrix(Storage storage);

  // Duplicate (row, col) pairs are summed.
  static SparseMatrix from_triplets(Eigen::Index rows, Eigen::Index cols,
                                    std::span<const Triplet> triplets);
  static SparseMatrix identity(Eigen::Index n);
  static SparseMatrix diagonal(std::span<const double> values);
  static SparseMatrix from_dense(const Eigen::MatrixXd& dense);

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  std::size_t nnz() const { return static_cast<std::size_t>(m_.nonZeros()); }
  // Bytes held by the compressed arrays (values, column indices, row offsets).
  std::size_t memory_bytes() const;

  double coeff(Eigen::Index row, Eigen::Index col) const { return m_.coeff(row, col); }
  std::vector<double> diagonal() const;
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;

  SparseMatrix transpose() const;
  SparseMatrix scaled(double factor) const;
  // diag(left) * this * diag(right); empty spans mean identity.
  SparseMatrix scaled(std::span<const double> left, std::span<const double> right) const;
  SparseMatrix without_diagonal() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix operator-(const SparseMatrix& rhs) const;
  Eigen::MatrixXd operator*(const Eigen::MatrixXd& rhs) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd& rhs) const;

  Eigen::MatrixXd to_dense() const;
  std::vector<Triplet> triplets() const;

  // Verifies a(i,j) == a(j,i) within `tol` and records the flag. Returns
  // false (flag cleared) when the check fails.
  bool mark_symmetric(double tol = 1e-12);
  bool symmetric() const { return symmetric_; }
  bool is_symmetric(double tol = 1e-12) const;

  // True when rows are sorted, duplicate-free and hold no explicit zeros.
  bool is_canonical() const;

  const Storage& storage() const { return m_; }

  // One "row col value" line per stored entry, sorted by (row, col); values
  // are printed with 17 significant digits.
  void write_triplets(std::ostream& os) const;

 private:
  void canonicalize();

  Storage m_;
  bool symmetric_ = false;
};

// Linear combination sum_i weights[i] * terms[i] of equally shaped matrices.
SparseMatrix weighted_sum(std::span<const double> weights,
                          std::span<const SparseMatrix* const> terms);

}  // namespace zen
