// Copyright 2026 The gbig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gbig/linalg.hpp"

#include <algorithm>
#include <string>

#include "gbig/error.hpp"
#include "gbig/kernels.hpp"

namespace gbig {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::kDimensionMismatch, "ragged initializer rows");
    std::copy(row.begin(), row.end(), m.row(i++).begin());
  }
  return m;
}

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
  const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return val[static_cast<std::size_t>(it - col.begin())];
}

Matrix CsrMatrix::to_dense() const {
  Matrix m(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) m(r, col[k]) = val[k];
  return m;
}

namespace {

void require(bool ok, const char* what, std::size_t lhs, std::size_t rhs) {
  if (!ok) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " (" + std::to_string(lhs) + " vs " + std::to_string(rhs) + ")");
  }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matmul inner dimension", a.cols(), b.rows());
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out = c.row(i).data();
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double s = a(i, p);
      if (s != 0.0) k.axpy(s, b.row(p).data(), out, b.cols());
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "matmul_tn shared rows", a.rows(), b.rows());
  const auto& k = kernels::active();
  Matrix c(a.cols(), b.cols());
  for (std::size_t p = 0; p < a.rows(); ++p) {
    const double* brow = b.row(p).data();
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double s = a(p, i);
      if (s != 0.0) k.axpy(s, brow, c.row(i).data(), b.cols());
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "matmul_nt shared cols", a.cols(), b.cols());
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) = k.dot(a.row(i).data(), b.row(j).data(), a.cols());
  return c;
}

Matrix spmm(const CsrMatrix& s, const Matrix& b) {
  require(s.size == b.rows(), "spmm dimension", s.size, b.rows());
  const auto& k = kernels::active();
  Matrix c(s.size, b.cols());
  for (std::size_t r = 0; r < s.size; ++r) {
    double* out = c.row(r).data();
    for (std::size_t e = s.row_ptr[r]; e < s.row_ptr[r + 1]; ++e) k.axpy(s.val[e], b.row(s.col[e]).data(), out, b.cols());
  }
  return c;
}

Matrix gather_rows(const Matrix& x, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= x.rows()) throw Error(ErrorCode::kIndexOutOfRange, "gather_rows index " + std::to_string(rows[i]));
    std::copy(x.row(rows[i]).begin(), x.row(rows[i]).end(), out.row(i).begin());
  }
  return out;
}

}  // namespace gbig
