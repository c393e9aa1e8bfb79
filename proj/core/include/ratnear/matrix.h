// Copyright 2026 The ratnear Authors
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

#ifndef RATNEAR_MATRIX_H_
#define RATNEAR_MATRIX_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ratnear/scalar.h"

namespace ratnear {

// Dense rows x cols matrix of Scalars, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::vector<Scalar> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Scalar& operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }
  Scalar& at(int r, int c) {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const std::vector<Scalar>& entries() const { return entries_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> entries_;
};

// The (d+1) x m matrix A parametrizing the affine subspace: first row beta,
// remaining d x m block A'.
class ParamMatrix {
 public:
  ParamMatrix() = default;
  ParamMatrix(int d, int m, std::vector<Scalar> entries, std::string label = "");
  explicit ParamMatrix(Matrix full, std::string label = "");

  static ParamMatrix zero(int d, int m);

  int d() const { return full_.rows() - 1; }
  int m() const { return full_.cols(); }
  int n() const { return d() + m(); }
  const Matrix& full() const { return full_; }
  const Scalar& beta(int j) const { return full_(0, j); }
  const Scalar& block(int i, int j) const { return full_(i + 1, j); }
  Matrix block_matrix() const;
  const std::string& label() const { return label_; }

 private:
  Matrix full_;
  std::string label_;
};

// Key-value text format:
//   format: ratnear-matrix 1
//   label: golden
//   d: 1
//   m: 1
//   entries: 0, (1+sqrt(5))/2
// Entries are row-major and may continue over several "entries:" lines.
// A file may give "rows:"/"cols:" instead of "d:"/"m:" for a plain matrix.
struct MatrixFile {
  Matrix matrix;
  std::string label;
  bool parametrized = true;  // d/m given, so rows = d + 1
};

MatrixFile parse_matrix_text(const std::string& text);
MatrixFile read_matrix_file(const std::string& path);
ParamMatrix read_param_matrix(const std::string& path);
std::string format_matrix(const ParamMatrix& a);
std::string format_plain_matrix(const Matrix& a, const std::string& label);
void write_text_file(const std::string& path, const std::string& text);

// (q, a + theta1) A as an m-vector.
std::vector<Scalar> row_apply(const ParamMatrix& a, std::int64_t q,
                              const std::vector<std::int64_t>& av,
                              const std::vector<Scalar>& theta1);

}  // namespace ratnear

#endif  // RATNEAR_MATRIX_H_
