#include "attrkit/linalg.hpp"

#include <cmath>

namespace attrkit {

Vec matvec(const Mat& m, const Vec& v) {
  require(static_cast<int>(v.size()) == m.cols, "matrix apply: dimension mismatch");
  Vec out(static_cast<std::size_t>(m.rows), 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

Mat matmul(const Mat& a, const Mat& b) {
  require(a.cols == b.rows, "matmul: dimension mismatch");
  Mat out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

Mat invert(const Mat& m) {
  require(m.rows == m.cols, "invert: matrix must be square");
  const int n = m.rows;
  Mat work = m;
  Mat inv = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(work.at(r, col)) > std::abs(work.at(pivot, col))) pivot = r;
    const double p = work.at(pivot, col);
    require(std::abs(p) > 1e-12, "invert: matrix is singular (pivot ", p, ")");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    }
    const double ip = 1.0 / work.at(col, col);
    for (int j = 0; j < n; ++j) {
      work.at(col, j) *= ip;
      inv.at(col, j) *= ip;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = work.at(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        work.at(r, j) -= f * work.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

void orthonormalize_rows(Mat& m) {
  for (int i = 0; i < m.rows; ++i) {
    for (int k = 0; k < i; ++k) {
      double proj = 0.0;
      for (int j = 0; j < m.cols; ++j) proj += m.at(i, j) * m.at(k, j);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= proj * m.at(k, j);
    }
    double n2 = 0.0;
    for (int j = 0; j < m.cols; ++j) n2 += m.at(i, j) * m.at(i, j);
    require(n2 > 1e-24, "orthonormalize_rows: numerically dependent rows");
    const double inv_n = 1.0 / std::sqrt(n2);
    for (int j = 0; j < m.cols; ++j) m.at(i, j) *= inv_n;
  }
}

Mat orthonormal_completion(const std::vector<Vec>& lead, int dim) {
  require(static_cast<int>(lead.size()) <= dim, "orthonormal_completion: too many lead vectors");
  std::vector<Vec> rows;
  auto try_add = [&rows](Vec v) {
    for (const Vec& r : rows) {
      const double proj = dot(v, r);
      v = axpy(std::move(v), -proj, r);
    }
    const double n = norm(v);
    if (n < 1e-8) return false;
    rows.push_back(scaled(std::move(v), 1.0 / n));
    return true;
  };
  for (const Vec& v : lead) {
    require(static_cast<int>(v.size()) == dim, "orthonormal_completion: dimension mismatch");
    require(try_add(v), "orthonormal_completion: dependent lead vectors");
  }
  for (int i = 0; i < dim && static_cast<int>(rows.size()) < dim; ++i) {
    Vec e = zeros(dim);
    e[static_cast<std::size_t>(i)] = 1.0;
    try_add(std::move(e));
  }
  require(static_cast<int>(rows.size()) == dim, "orthonormal_completion: failed to complete basis");
  Mat out(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

Mat transpose(const Mat& m) {
  Mat out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
  return out;
}

}  // namespace attrkit
