#pragma once

#include <vector>

namespace rffso::specfun {

// [q/p, (q+1)/p, ..., (q+p-1)/p]
std::vector<double> delta_expand(int p, double q);

// delta_expand(sigma, L[0]) ++ delta_expand(sigma, L[1]) ++ ...
std::vector<double> delta_expand_list(int sigma, const std::vector<double>& L);

}  // namespace rffso::specfun
