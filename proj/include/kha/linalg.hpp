#pragma once

#include <vector>

#include "kha/ratfun.hpp"

namespace kha {

/// Dense matrix over the field of rational functions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  RatFun& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const RatFun& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  Matrix transpose() const;

  /// Reduced row echelon form; pivot columns are returned through `pivots`.
  Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  /// Basis of the right null space, one vector per free column, with a 1 in
  /// that column.
  std::vector<std::vector<RatFun>> kernel() const;
  /// Throws std::domain_error when singular.
  Matrix inverse() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<RatFun> a_;
};

}  // namespace kha
