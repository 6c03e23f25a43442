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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gbig/matrix.hpp"

namespace gbig {

// Square sparse matrix in compressed-row form. Column indices are sorted
// within each row.
struct CsrMatrix {
  std::size_t size = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col;
  std::vector<double> val;

  std::size_t nnz() const noexcept { return col.size(); }
  double at(std::size_t r, std::size_t c) const;
  Matrix to_dense() const;
};

// a * b
Matrix matmul(const Matrix& a, const Matrix& b);
// transpose(a) * b
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// a * transpose(b)
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// s * b
Matrix spmm(const CsrMatrix& s, const Matrix& b);

// Copies the listed rows of `x` into a new matrix, in order.
Matrix gather_rows(const Matrix& x, std::span<const std::size_t> rows);

}  // namespace gbig
