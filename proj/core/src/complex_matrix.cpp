// Copyright 2026 The aisim Authors
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

#include "aisim/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "aisim/errors.hpp"
#include "aisim/rng.hpp"

namespace aisim {
namespace {

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ConfigError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
  }
}

constexpr std::size_t kTile = 128;

// c[0..n) += s * b[0..n), all arrays interleaved (re, im).
inline void axpy(double sr, double si, const double* __restrict b, double* __restrict c,
                 std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double br = b[2 * j];
    const double bi = b[2 * j + 1];
    c[2 * j] += sr * br - si * bi;
    c[2 * j + 1] += sr * bi + si * br;
  }
}

// Lower-triangular Cholesky factor of a Hermitian positive-definite matrix,
// stored densely. Throws NumericError when a pivot is not safely positive.
ComplexMatrix cholesky(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i).real()));
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    min_pivot = std::min(min_pivot, d);
    max_pivot = std::max(max_pivot, d);
    // Pivots below n * eps of the largest diagonal carry no significant digits.
    const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_diag;
    if (!(d > floor)) {
      const double cond = d > 0.0 ? max_pivot / d : std::numeric_limits<double>::infinity();
      throw NumericError("pseudoinverse: inner system numerically singular (pivot ratio " +
                             std::to_string(cond) + ")",
                         cond);
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ConfigError("ComplexMatrix: " + std::to_string(data_.size()) + " entries for shape " +
                      std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ConfigError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> values) {
  return ComplexMatrix(values.size(), 1, std::vector<cplx>(values.begin(), values.end()));
}

std::span<double> ComplexMatrix::reals() noexcept {
  // std::complex<double> is array-compatible with double[2].
  return {reinterpret_cast<double*>(data_.data()), 2 * data_.size()};
}

std::span<const double> ComplexMatrix::reals() const noexcept {
  return {reinterpret_cast<const double*>(data_.data()), 2 * data_.size()};
}

ComplexMatrix ComplexMatrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw ConfigError("columns: range out of bounds");
  ComplexMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_ + first), count,
                out.data_.begin() + static_cast<std::ptrdiff_t>(r * count));
  }
  return out;
}

void ComplexMatrix::set_columns(std::size_t first, const ComplexMatrix& block) {
  if (block.rows_ != rows_ || first + block.cols_ > cols_) {
    throw ConfigError("set_columns: block " + shape(block) + " does not fit " + shape(*this));
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    std::copy_n(block.data_.begin() + static_cast<std::ptrdiff_t>(r * block.cols_), block.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>(r * cols_ + first));
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

void ComplexMatrix::set_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ConfigError("matmul: inner dimensions differ, " + shape(a) + " * " + shape(b));
  }
  const std::size_t n = b.cols();
  ComplexMatrix c(a.rows(), n);
  const double* bd = b.reals().data();
  double* cd = c.reals().data();
  // Column tiles keep the touched rows of b and c cache resident.
  for (std::size_t j0 = 0; j0 < n; j0 += kTile) {
    const std::size_t w = std::min(kTile, n - j0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double* crow = cd + 2 * (i * n + j0);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const cplx s = a(i, k);
        axpy(s.real(), s.imag(), bd + 2 * (k * n + j0), crow, w);
      }
    }
  }
  return c;
}

ComplexMatrix matmul_adjoint_left(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    throw ConfigError("matmul_adjoint_left: row counts differ, " + shape(a) + " vs " + shape(b));
  }
  const std::size_t n = b.cols();
  ComplexMatrix c(a.cols(), n);
  const double* bd = b.reals().data();
  double* cd = c.reals().data();
  for (std::size_t j0 = 0; j0 < n; j0 += kTile) {
    const std::size_t w = std::min(kTile, n - j0);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      double* crow = cd + 2 * (i * n + j0);
      for (std::size_t k = 0; k < a.rows(); ++k) {
        const cplx s = std::conj(a(k, i));
        axpy(s.real(), s.imag(), bd + 2 * (k * n + j0), crow, w);
      }
    }
  }
  return c;
}

ComplexMatrix matmul_adjoint_right(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) {
    throw ConfigError("matmul_adjoint_right: column counts differ, " + shape(a) + " vs " +
                      shape(b));
  }
  const std::size_t n = a.cols();
  ComplexMatrix c(a.rows(), b.rows());
  const double* ad = a.reals().data();
  const double* bd = b.reals().data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ar = ad + 2 * i * n;
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* br = bd + 2 * j * n;
      double re = 0.0;
      double im = 0.0;
      // sum_k a_ik * conj(b_jk)
      for (std::size_t k = 0; k < n; ++k) {
        re += ar[2 * k] * br[2 * k] + ar[2 * k + 1] * br[2 * k + 1];
        im += ar[2 * k + 1] * br[2 * k] - ar[2 * k] * br[2 * k + 1];
      }
      c(i, j) = {re, im};
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

ComplexMatrix hpd_inverse(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw ConfigError("hpd_inverse: matrix is " + shape(a));
  const std::size_t n = a.rows();
  const ComplexMatrix l = cholesky(a);
  // Invert L by forward substitution, then A^-1 = L^-H L^-1.
  ComplexMatrix linv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * linv(k, j);
      linv(i, j) = s / l(i, i);
    }
  }
  return matmul_adjoint_left(linv, linv);
}

ComplexMatrix pseudoinverse(const ComplexMatrix& g, double ridge) {
  if (ridge < 0.0) throw ConfigError("pseudoinverse: ridge must be nonnegative");
  if (g.empty() || frobenius_norm(g) == 0.0) {
    throw ConfigError("pseudoinverse: input " + shape(g) + " is zero or empty");
  }
  ComplexMatrix result;
  if (g.rows() <= g.cols()) {
    ComplexMatrix inner = matmul_adjoint_right(g, g);
    for (std::size_t i = 0; i < inner.rows(); ++i) inner(i, i) += ridge;
    result = matmul_adjoint_left(g, hpd_inverse(inner));
  } else {
    ComplexMatrix inner = matmul_adjoint_left(g, g);
    for (std::size_t i = 0; i < inner.rows(); ++i) inner(i, i) += ridge;
    result = matmul_adjoint_right(hpd_inverse(inner), g);
  }
  if (!result.all_finite()) {
    throw NumericError("pseudoinverse: non-finite result", std::numeric_limits<double>::infinity());
  }
  return result;
}

ComplexMatrix sample_complex_gaussian(std::size_t rows, std::size_t cols, double variance,
                                      RngStream& rng) {
  if (variance < 0.0) throw ConfigError("sample_complex_gaussian: negative variance");
  ComplexMatrix out(rows, cols);
  if (variance == 0.0) return out;
  const double sd = std::sqrt(variance / 2.0);
  for (auto& v : out.entries()) {
    const double re = rng.normal();
    const double im = rng.normal();
    v = {sd * re, sd * im};
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace aisim
