#pragma once

#include <functional>

namespace kadlab {

struct MinimizeResult {
    double x = 0;
    double value = 0;
    bool grid_unimodal = true;  // whether the pre-check saw a single valley
};

// Minimize a smooth positive-argument function. Brackets by geometric
// expansion from x = 1, asserts unimodality on a log-spaced grid over the
// bracket, then runs golden-section; if the grid shows multiple valleys the
// result falls back to a fine grid plus local refinement. Monotone functions
// resolve to the search-range boundary.
MinimizeResult minimize_positive(const std::function<double(double)>& f, double lo = 1e-8,
                                 double hi = 1e8);

}  // namespace kadlab
