#include "rffso/specfun/log_gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rffso/errors.hpp"

namespace rffso::specfun {
namespace {

constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kPi = std::numbers::pi;

// Godfrey's g = 607/128 set
constexpr double kG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

// B_{2k} / (2k (2k-1)), k = 1..9
constexpr std::array<double, 9> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,         1.0 / 1260.0,
    -1.0 / 1680.0,       1.0 / 1188.0,         -691.0 / 360360.0,
    1.0 / 156.0,         -3617.0 / 122400.0,   43867.0 / 244188.0};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx lanczos(cplx z) {
    const cplx w = z - 1.0;
    cplx sum = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) sum += kLanczos[k] / (w + static_cast<double>(k));
    const cplx t = w + kG + 0.5;
    return kLnSqrt2Pi + (w + 0.5) * std::log(t) - t + std::log(sum);
}

cplx stirling(cplx z) {
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + kLnSqrt2Pi + series;
}

cplx right_half(cplx z) {
    if (std::abs(z) > 12.0) return stirling(z);
    return lanczos(z);
}

// ln sin(pi z) for Im z >= 0, stable for large imaginary parts
cplx log_sin_pi_upper(cplx z) {
    const cplx e = std::exp(cplx(0.0, 2.0 * kPi) * z);  // |e| <= 1
    return cplx(std::log(0.5), kPi / 2.0) - cplx(0.0, kPi) * z + std::log(1.0 - e);
}

}  // namespace

cplx log_gamma_complex(cplx z) {
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma_complex: pole at non-positive integer");
    if (z.imag() < 0.0) return std::conj(log_gamma_complex(std::conj(z)));
    if (z.real() >= 0.5) return right_half(z);

    const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
    if (shift <= 16) {
        cplx acc = 0.0;
        for (int k = 0; k < shift; ++k) acc += std::log(z + static_cast<double>(k));
        return right_half(z + static_cast<double>(shift)) - acc;
    }
    // reflection for far-left arguments
    return std::log(kPi) - log_sin_pi_upper(z) - right_half(1.0 - z);
}

double log_gamma_real(double x, int* sign) {
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("log_gamma_real: pole at non-positive integer");
    if (x >= 0.5) {
        if (sign) *sign = 1;
        return right_half(cplx(x, 0.0)).real();
    }
    if (x > 0.0) {
        if (sign) *sign = 1;
        return right_half(cplx(x + 1.0, 0.0)).real() - std::log(x);
    }
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    const double s = std::sin(kPi * x);
    if (sign) *sign = s > 0.0 ? 1 : -1;
    return std::log(kPi / std::abs(s)) - log_gamma_real(1.0 - x);
}

}  // namespace rffso::specfun
