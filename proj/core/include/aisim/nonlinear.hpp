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

#include "aisim/complex_matrix.hpp"

namespace aisim {

/// Rapp amplitude-saturation model: x / (1 + (|x|/x_sat)^(2p))^(1/(2p)).
struct RappParams {
  double p = 2.0;
  double x_sat = 1.0;

  /// Throws ConfigError unless both are positive and finite.
  void validate() const;
  friend bool operator==(const RappParams&, const RappParams&) = default;
};

enum class ActivationMode { RappAmplitude, Identity };

cplx rapp(cplx x, const RappParams& params);

/// Partial derivatives of rapp viewed as a map R^2 -> R^2:
/// d_re = d(out)/d(Re x), d_im = d(out)/d(Im x), each a complex number
/// (real part = derivative of Re out, imaginary part = derivative of Im out).
struct RappJacobian {
  cplx d_re;
  cplx d_im;
};

RappJacobian rapp_derivatives(cplx x, const RappParams& params);

ComplexMatrix activation_apply(const ComplexMatrix& x, ActivationMode mode,
                               const RappParams& params);

/// Pulls an output gradient (dL/dRe out + j dL/dIm out) back through rapp at x.
inline cplx rapp_pullback(const RappJacobian& jac, cplx grad_out) {
  // dL/dRe x = Re(conj(g) * d_re), dL/dIm x = Re(conj(g) * d_im)
  return {grad_out.real() * jac.d_re.real() + grad_out.imag() * jac.d_re.imag(),
          grad_out.real() * jac.d_im.real() + grad_out.imag() * jac.d_im.imag()};
}

}  // namespace aisim
