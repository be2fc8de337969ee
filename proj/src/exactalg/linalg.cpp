#include "kha/linalg.hpp"

#include <stdexcept>

namespace kha {

namespace {

std::size_t weight(const RatFun& f) { return f.num().size() + f.den().size(); }

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFun(1);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix: shape mismatch");
  Matrix m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      if ((*this)(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j)
        if (!o(k, j).is_zero()) m(i, j) += (*this)(i, k) * o(k, j);
    }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::rref(std::vector<std::size_t>* pivots) const {
  Matrix m = *this;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c_ && row < r_; ++col) {
    std::size_t best = r_;
    for (std::size_t i = row; i < r_; ++i)
      if (!m(i, col).is_zero() && (best == r_ || weight(m(i, col)) < weight(m(best, col)))) best = i;
    if (best == r_) continue;
    if (best != row)
      for (std::size_t j = 0; j < c_; ++j) std::swap(m(row, j), m(best, j));
    RatFun inv = m(row, col).inverse();
    for (std::size_t j = col; j < c_; ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (std::size_t i = 0; i < r_; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      RatFun f = m(i, col);
      for (std::size_t j = col; j < c_; ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = piv;
  return m;
}

std::size_t Matrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

std::vector<std::vector<RatFun>> Matrix::kernel() const {
  std::vector<std::size_t> piv;
  Matrix m = rref(&piv);
  std::vector<bool> is_pivot(c_, false);
  for (std::size_t p : piv) is_pivot[p] = true;
  std::vector<std::vector<RatFun>> out;
  for (std::size_t f = 0; f < c_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<RatFun> v(c_);
    v[f] = RatFun(1);
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

Matrix Matrix::inverse() const {
  if (r_ != c_) throw std::invalid_argument("inverse of a non-square matrix");
  if (r_ == 0) return Matrix();
  Matrix aug(r_, 2 * c_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, c_ + i) = RatFun(1);
  }
  std::vector<std::size_t> piv;
  Matrix red = aug.rref(&piv);
  if (piv.size() < r_ || piv[r_ - 1] >= c_) throw std::domain_error("matrix is singular");
  Matrix inv(r_, c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) inv(i, j) = red(i, c_ + j);
  return inv;
}

}  // namespace kha
