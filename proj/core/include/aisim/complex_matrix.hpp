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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace aisim {

using cplx = std::complex<double>;

class RngStream;

/// Dense row-major complex matrix. Zero-sized shapes are allowed so that
/// parameters a scheme does not use can be represented as empty.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix column(std::span<const cplx> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  std::span<cplx> entries() noexcept { return data_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  /// The entries as interleaved (re, im) doubles.
  std::span<double> reals() noexcept;
  std::span<const double> reals() const noexcept;

  /// Copy of columns [first, first + count).
  ComplexMatrix columns(std::size_t first, std::size_t count) const;
  void set_columns(std::size_t first, const ComplexMatrix& block);

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  bool all_finite() const noexcept;
  void set_zero();

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

/// a * b. Throws ConfigError naming both shapes on mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
/// adjoint(a) * b without forming the adjoint.
ComplexMatrix matmul_adjoint_left(const ComplexMatrix& a, const ComplexMatrix& b);
/// a * adjoint(b) without forming the adjoint.
ComplexMatrix matmul_adjoint_right(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

/// Regularized Moore-Penrose pseudoinverse via the normal equations.
///
/// Wide g (rows <= cols): g^H (g g^H + ridge I)^-1. Tall g: (g^H g + ridge I)^-1 g^H.
/// The Hermitian inner system is factored with Cholesky; a non-positive or
/// vanishing pivot raises NumericError carrying a pivot-ratio condition estimate.
ComplexMatrix pseudoinverse(const ComplexMatrix& g, double ridge = 1e-12);

/// Inverse of a Hermitian positive-definite matrix by Cholesky factorization.
ComplexMatrix hpd_inverse(const ComplexMatrix& a);

/// i.i.d. circularly-symmetric CN(0, variance) entries: Re and Im each N(0, variance/2).
ComplexMatrix sample_complex_gaussian(std::size_t rows, std::size_t cols, double variance,
                                      RngStream& rng);

double frobenius_norm(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Dense row-major real matrix used by the classifier head.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace aisim
