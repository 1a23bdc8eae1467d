#pragma once

// Small dense containers generic over the scalar type. Eigen is used for
// spectral work on plain doubles; everything that has to run on dual numbers
// goes through these.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cotlift/dual.hpp"

namespace cotlift {

template <class S>
using Vec = std::vector<S>;

template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0.0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<S>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <class S>
Mat<S> operator*(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const S& aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

template <class S>
Vec<S> operator*(const Mat<S>& a, const Vec<S>& v) {
  Vec<S> r(a.rows(), S(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * v[k];
  return r;
}

template <class S>
Mat<S> operator+(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

template <class S>
Mat<S> operator-(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

template <class S>
Mat<S> operator*(double s, const Mat<S>& a) {
  Mat<S> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

template <class S>
Mat<S> transpose(const Mat<S>& a) {
  Mat<S> r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

// Gauss-Jordan with partial pivoting on the primal part.
template <class S>
Mat<S> inverse(Mat<S> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
  Mat<S> inv = Mat<S>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(primal(a(r, col))) > std::abs(primal(a(piv, col)))) piv = r;
    if (primal(a(piv, col)) == 0.0) throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const S d = S(1.0) / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * d;
      inv(col, j) = inv(col, j) * d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const S f = a(r, col);
      if (primal(f) == 0.0 && ad_depth_v<S> == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

// Rank-3 array, index order (i, j, k), row-major.
template <class S>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n, S(0.0)) {}

  std::size_t dim() const { return n_; }
  S& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const S& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }
  const std::vector<S>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<S> data_;
};

// Rank-4 array, index order (h, k, i, j), row-major.
template <class S>
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, S(0.0)) {}

  std::size_t dim() const { return n_; }
  S& operator()(std::size_t h, std::size_t k, std::size_t i, std::size_t j) {
    return data_[((h * n_ + k) * n_ + i) * n_ + j];
  }
  const S& operator()(std::size_t h, std::size_t k, std::size_t i, std::size_t j) const {
    return data_[((h * n_ + k) * n_ + i) * n_ + j];
  }
  const std::vector<S>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<S> data_;
};

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return x;
    m = std::max(m, std::abs(x));
  }
  return m;
}

// Largest absolute entry.
inline double max_abs(const Mat<double>& m) { return max_abs(m.data()); }
inline double max_abs(const Tensor3<double>& t) { return max_abs(t.data()); }
inline double max_abs(const Tensor4<double>& t) { return max_abs(t.data()); }

// Primal parts and first tangents of dual-valued containers.
template <class S>
Mat<S> values(const Mat<Dual<S>>& m) {
  Mat<S> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).val;
  return r;
}

template <class S>
Mat<S> tangents(const Mat<Dual<S>>& m) {
  Mat<S> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).eps;
  return r;
}

template <class S>
Vec<Dual<S>> seed_direction(const Vec<S>& x, std::size_t dir) {
  Vec<Dual<S>> r;
  r.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(seed(x[i], i == dir));
  return r;
}

}  // namespace cotlift
