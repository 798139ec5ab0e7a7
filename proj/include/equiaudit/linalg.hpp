#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace equiaudit {

using Vec = std::vector<double>;

/// Dense row-major matrix. Dimensions in this project are tiny (the output
/// representation dimension, typically 1..4), so everything is plain
/// schoolbook arithmetic.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0.0) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  Mat operator*(const Mat& o) const {
    Mat out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        double a = (*this)(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Vec operator*(const Vec& v) const {
    Vec out(static_cast<std::size_t>(rows_), 0.0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return out;
  }

  Mat operator+(const Mat& o) const {
    Mat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Mat scaled(double s) const {
    Mat out = *this;
    for (double& v : out.data_) v *= s;
    return out;
  }

  Mat transposed() const {
    Mat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  double max_abs_diff(const Mat& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::fabs(data_[i] - o.data_[i]));
    return m;
  }

  const std::vector<double>& data() const { return data_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vec scaled(const Vec& a, double s) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

inline double squared_norm(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double max_abs(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

/// Gauss-Jordan inverse with partial pivoting.
/// Throws std::runtime_error if a pivot degenerates; callers wanting a
/// quantitative rank decision should use symmetric_eigenvalues first.
Mat inverse(Mat a);

/// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations,
/// ascending order.
std::vector<double> symmetric_eigenvalues(Mat a);

}  // namespace equiaudit
