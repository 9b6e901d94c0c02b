#include "rffso/specfun/delta.hpp"

#include "rffso/errors.hpp"

namespace rffso::specfun {

std::vector<double> delta_expand(int p, double q) {
    if (p < 1) throw InvalidParameterError("delta_expand: p must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) out.push_back((q + i) / p);
    return out;
}

std::vector<double> delta_expand_list(int sigma, const std::vector<double>& L) {
    if (L.empty()) throw InvalidParameterError("delta_expand_list: empty list");
    std::vector<double> out;
    out.reserve(L.size() * static_cast<std::size_t>(sigma > 0 ? sigma : 0));
    for (double q : L) {
        auto part = delta_expand(sigma, q);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace rffso::specfun
