#pragma once

// Dense exact rational matrices with reduced row echelon form.

#include <confmcg/errors.hpp>
#include <confmcg/rational.hpp>

#include <string>
#include <vector>

namespace confmcg {

using RatVector = std::vector<Rational>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw RankMismatch("negative matrix dimension");
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int r, int c) { return a_[idx(r, c)]; }
  const Rational& operator()(int r, int c) const { return a_[idx(r, c)]; }

  RatVector column(int c) const {
    RatVector v(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<std::size_t>(r)] = (*this)(r, c);
    return v;
  }

  void set_column(int c, const RatVector& v) {
    if (static_cast<int>(v.size()) != rows_) throw RankMismatch("set_column: length mismatch");
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[static_cast<std::size_t>(r)];
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw RankMismatch("matrix product size mismatch");
    RatMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rational& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          if (o(k, j) != 0) m(i, j) += x * o(k, j);
      }
    return m;
  }

  RatVector operator*(const RatVector& v) const {
    if (static_cast<int>(v.size()) != cols_) throw RankMismatch("matrix-vector size mismatch");
    RatVector out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k)
        if (v[static_cast<std::size_t>(k)] != 0) out[static_cast<std::size_t>(i)] += (*this)(i, k) * v[static_cast<std::size_t>(k)];
    return out;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Rational trace() const {
    if (rows_ != cols_) throw RankMismatch("trace of a non-square matrix");
    Rational t = 0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t idx(int r, int c) const {
    if (r < 0 || c < 0 || r >= rows_ || c >= cols_) throw IndexOutOfRange("matrix index out of range");
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

struct Echelon {
  RatMatrix r;              // reduced row echelon form, zero rows at the bottom
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Exact Gauss-Jordan. Among candidate pivots in a column the entry of
/// smallest bit-size is chosen; the reduced form does not depend on it.
inline Echelon rref(RatMatrix m) {
  Echelon e;
  int row = 0;
  for (int c = 0; c < m.cols() && row < m.rows(); ++c) {
    int best = -1;
    std::size_t best_bits = 0;
    for (int r = row; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      std::size_t b = bit_size(m(r, c));
      if (best < 0 || b < best_bits) {
        best = r;
        best_bits = b;
      }
    }
    if (best < 0) continue;
    if (best != row)
      for (int k = 0; k < m.cols(); ++k) std::swap(m(best, k), m(row, k));
    Rational inv = 1 / m(row, c);
    for (int k = c; k < m.cols(); ++k) m(row, k) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (int k = c; k < m.cols(); ++k)
        if (m(row, k) != 0) m(r, k) -= f * m(row, k);
    }
    e.pivots.push_back(c);
    ++row;
  }
  e.r = std::move(m);
  return e;
}

inline int rank(const RatMatrix& m) { return rref(m).rank(); }

/// Standard nullspace basis: one vector per free column, with a 1 there.
inline std::vector<RatVector> nullspace(const RatMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RatVector> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RatVector v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(f)] = 1;
    for (int i = 0; i < e.rank(); ++i) v[static_cast<std::size_t>(e.pivots[static_cast<std::size_t>(i)])] = -e.r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline bool is_zero(const RatVector& v) {
  for (const Rational& q : v)
    if (q != 0) return false;
  return true;
}

}  // namespace confmcg
