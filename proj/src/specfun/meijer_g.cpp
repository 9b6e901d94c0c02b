#include "rffso/specfun/meijer_g.hpp"

#include <cmath>
#include <string>

#include "rffso/errors.hpp"

namespace rffso::specfun {

void MeijerGSpec::validate(double pole_tol) const {
    if (m < 0 || n < 0 || p < 0 || q < 0 || m > q || n > p)
        throw InvalidParameterError("MeijerGSpec: require 0 <= m <= q and 0 <= n <= p");
    if (static_cast<int>(a_params.size()) != p || static_cast<int>(b_params.size()) != q)
        throw InvalidParameterError("MeijerGSpec: parameter list lengths must equal p and q");
    if (!(argument > 0.0) || !std::isfinite(argument))
        throw DomainError("MeijerGSpec: argument must be positive and finite");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            const double d = a_params[i] - b_params[j];
            const double r = std::round(d);
            if (r >= 1.0 && std::abs(d - r) <= pole_tol * std::max(1.0, std::abs(d)))
                throw DegenerateParameterError("MeijerGSpec: a_" + std::to_string(i + 1) + " - b_" +
                                               std::to_string(j + 1) +
                                               " is a positive integer; poles collide on the contour");
        }
}

MellinBarnesIntegral to_mellin_barnes(const MeijerGSpec& spec) {
    MellinBarnesIntegral mb;
    for (int j = 0; j < spec.m; ++j) mb.num.push_back({spec.b_params[j], 1.0});
    for (int i = 0; i < spec.n; ++i) mb.num.push_back({1.0 - spec.a_params[i], -1.0});
    for (int j = spec.m; j < spec.q; ++j) mb.den.push_back({1.0 - spec.b_params[j], -1.0});
    for (int i = spec.n; i < spec.p; ++i) mb.den.push_back({spec.a_params[i], 1.0});
    mb.log_arg = std::log(spec.argument);
    return mb;
}

MBResult meijer_g_detailed(const MeijerGSpec& spec, const EvalOptions& opts) {
    opts.validate();
    spec.validate(opts.pole_separation_tol);
    return evaluate(to_mellin_barnes(spec), opts);
}

double meijer_g(const MeijerGSpec& spec, const EvalOptions& opts) { return meijer_g_detailed(spec, opts).value; }

}  // namespace rffso::specfun
