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

#include "ratnear/matrix.h"

#include <fstream>
#include <sstream>

#include "ratnear/errors.h"

namespace ratnear {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_dim(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size() || v < 0) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad value for '" + key + "': " + value);
  }
}

}  // namespace

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols, Scalar(0)) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

Matrix::Matrix(int rows, int cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0 ||
      entries_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("matrix entry count does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t.at(c, r) = (*this)(r, c);
  }
  return t;
}

ParamMatrix::ParamMatrix(int d, int m, std::vector<Scalar> entries,
                         std::string label)
    : full_(d + 1, m, std::move(entries)), label_(std::move(label)) {
  if (d < 0 || m < 1) throw DimensionError("need d >= 0 and m >= 1");
}

ParamMatrix::ParamMatrix(Matrix full, std::string label)
    : full_(std::move(full)), label_(std::move(label)) {
  if (full_.rows() < 1 || full_.cols() < 1) {
    throw DimensionError("parametrizing matrix needs d+1 >= 1 rows, m >= 1");
  }
}

ParamMatrix ParamMatrix::zero(int d, int m) {
  return ParamMatrix(Matrix(d + 1, m));
}

Matrix ParamMatrix::block_matrix() const {
  Matrix b(d(), m());
  for (int i = 0; i < d(); ++i) {
    for (int j = 0; j < m(); ++j) b.at(i, j) = block(i, j);
  }
  return b;
}

MatrixFile parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int d = -1, m = -1, rows = -1, cols = -1;
  std::string label;
  std::vector<Scalar> entries;
  bool saw_format = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("matrix file line without ':': " + line);
    }
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "format") {
      if (value != "ratnear-matrix 1") {
        throw ParseError("unsupported matrix format: " + value);
      }
      saw_format = true;
    } else if (key == "label") {
      label = value;
    } else if (key == "d") {
      d = parse_dim(key, value);
    } else if (key == "m") {
      m = parse_dim(key, value);
    } else if (key == "rows") {
      rows = parse_dim(key, value);
    } else if (key == "cols") {
      cols = parse_dim(key, value);
    } else if (key == "entries") {
      std::size_t start = 0;
      while (start <= value.size()) {
        auto comma = value.find(',', start);
        std::string tok = trim(value.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!tok.empty()) entries.push_back(Scalar::parse(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      throw ParseError("unknown matrix file key: " + key);
    }
  }
  if (!saw_format) throw ParseError("matrix file lacks 'format: ratnear-matrix 1'");
  MatrixFile out;
  out.label = label;
  if (d >= 0 || m >= 0) {
    if (d < 0 || m < 1) throw ParseError("matrix file needs d >= 0 and m >= 1");
    out.matrix = Matrix(d + 1, m, std::move(entries));
    out.parametrized = true;
  } else {
    if (rows < 1 || cols < 1) throw ParseError("matrix file needs d/m or rows/cols");
    out.matrix = Matrix(rows, cols, std::move(entries));
    out.parametrized = false;
  }
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_text(ss.str());
}

ParamMatrix read_param_matrix(const std::string& path) {
  MatrixFile f = read_matrix_file(path);
  if (!f.parametrized) {
    throw ParseError("expected a parametrizing matrix (d/m keys): " + path);
  }
  return ParamMatrix(std::move(f.matrix), f.label);
}

namespace {

std::string format_entries(const Matrix& a) {
  std::string out;
  for (int r = 0; r < a.rows(); ++r) {
    out += "entries: ";
    for (int c = 0; c < a.cols(); ++c) {
      if (c > 0) out += ", ";
      out += a(r, c).source();
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::string format_matrix(const ParamMatrix& a) {
  std::string out = "format: ratnear-matrix 1\n";
  if (!a.label().empty()) out += "label: " + a.label() + "\n";
  out += "d: " + std::to_string(a.d()) + "\n";
  out += "m: " + std::to_string(a.m()) + "\n";
  return out + format_entries(a.full());
}

std::string format_plain_matrix(const Matrix& a, const std::string& label) {
  std::string out = "format: ratnear-matrix 1\n";
  if (!label.empty()) out += "label: " + label + "\n";
  out += "rows: " + std::to_string(a.rows()) + "\n";
  out += "cols: " + std::to_string(a.cols()) + "\n";
  return out + format_entries(a);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

std::vector<Scalar> row_apply(const ParamMatrix& a, std::int64_t q,
                              const std::vector<std::int64_t>& av,
                              const std::vector<Scalar>& theta1) {
  const int d = a.d();
  if (static_cast<int>(av.size()) != d || static_cast<int>(theta1.size()) != d) {
    throw DimensionError("row_apply: a and theta1 must have length d = " +
                         std::to_string(d));
  }
  std::vector<Scalar> out;
  out.reserve(a.m());
  for (int j = 0; j < a.m(); ++j) {
    Surd acc = Surd(Rational(q)) * a.beta(j).value();
    for (int i = 0; i < d; ++i) {
      Surd coeff = Surd(Rational(av[i])) + theta1[i].value();
      acc += coeff * a.block(i, j).value();
    }
    out.push_back(Scalar::from_surd(acc));
  }
  return out;
}

}  // namespace ratnear
