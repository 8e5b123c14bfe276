#pragma once

#include <vector>

#include "attrkit/common.hpp"

namespace attrkit {

/// Dense row-major matrix. Everything in this project is at most a few dozen
/// rows, so plain Gauss-Jordan is all the linear algebra we need.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

Vec matvec(const Mat& m, const Vec& v);
Mat matmul(const Mat& a, const Mat& b);

/// Gauss-Jordan with partial pivoting; throws on (numerically) singular input.
Mat invert(const Mat& m);

/// Orthonormalizes the rows in place (modified Gram-Schmidt); throws if the
/// rows are numerically dependent.
void orthonormalize_rows(Mat& m);

/// dim x dim orthogonal matrix whose first rows are the orthonormalized lead
/// vectors, completed with standard basis directions.
Mat orthonormal_completion(const std::vector<Vec>& lead, int dim);

Mat transpose(const Mat& m);

}  // namespace attrkit
