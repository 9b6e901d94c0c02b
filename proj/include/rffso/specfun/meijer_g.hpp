#pragma once

#include <vector>

#include "rffso/specfun/mellin_barnes.hpp"

namespace rffso::specfun {

struct MeijerGSpec {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a_params;  // length p
    std::vector<double> b_params;  // length q
    double argument = 1.0;

    // orders, lengths, argument > 0, and no a_i - b_j in {1, 2, ...} for i <= n, j <= m
    void validate(double pole_tol = 1e-8) const;
};

// G^{m,n}_{p,q}[z | a; b] with integrand Gamma(b_1..m + s) Gamma(1 - a_1..n - s) /
// (Gamma(1 - b_m+1..q - s) Gamma(a_n+1..p + s)) z^{-s}
MellinBarnesIntegral to_mellin_barnes(const MeijerGSpec& spec);

double meijer_g(const MeijerGSpec& spec, const EvalOptions& opts = {});
MBResult meijer_g_detailed(const MeijerGSpec& spec, const EvalOptions& opts = {});

}  // namespace rffso::specfun
