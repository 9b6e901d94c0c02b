#pragma once

#include <complex>

namespace rffso::specfun {

using cplx = std::complex<double>;

// ln Gamma(z). Principal branch for Re z > -16; further left the imaginary
// part may differ from it by a multiple of 2*pi (exp() is unaffected).
// Throws PoleError at z = 0, -1, -2, ...
cplx log_gamma_complex(cplx z);

// ln|Gamma(x)| for real x, sign written to *sign when non-null. Reentrant.
double log_gamma_real(double x, int* sign = nullptr);

}  // namespace rffso::specfun
