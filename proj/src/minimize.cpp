#include "kadlab/minimize.hpp"

#include <cmath>
#include <vector>

#include "kadlab/errors.hpp"

namespace kadlab {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section in log coordinates on [a, b]; the interval is assumed to
// contain a single minimum.
MinimizeResult golden(const std::function<double(double)>& f, double a, double b) {
    double la = std::log(a), lb = std::log(b);
    double lc = lb - kInvPhi * (lb - la);
    double ld = la + kInvPhi * (lb - la);
    double fc = f(std::exp(lc)), fd = f(std::exp(ld));
    for (int it = 0; it < 220 && lb - la > 1e-14; ++it) {
        if (fc < fd) {
            lb = ld;
            ld = lc;
            fd = fc;
            lc = lb - kInvPhi * (lb - la);
            fc = f(std::exp(lc));
        } else {
            la = lc;
            lc = ld;
            fc = fd;
            ld = la + kInvPhi * (lb - la);
            fd = f(std::exp(ld));
        }
    }
    double x = std::exp((la + lb) / 2);
    return {x, f(x), true};
}

}  // namespace

MinimizeResult minimize_positive(const std::function<double(double)>& f, double lo, double hi) {
    if (!(lo > 0) || !(hi > lo)) throw DomainError("bad minimization range");

    // Geometric expansion from 1 until the middle point beats both ends.
    double a = 0.5, b = 1.0, c = 2.0;
    double fa = f(a), fb = f(b), fc = f(c);
    while (!(fb <= fa && fb <= fc)) {
        if (fa < fc) {
            c = b;
            fc = fb;
            b = a;
            fb = fa;
            a = std::max(lo, a / 4);
            fa = f(a);
            if (a <= lo && fa <= fb) {
                // Monotone increasing over the range: boundary minimum.
                if (f(lo) <= fb) return {lo, f(lo), true};
            }
        } else {
            a = b;
            fa = fb;
            b = c;
            fb = fc;
            c = std::min(hi, c * 4);
            fc = f(c);
            if (c >= hi && fc <= fb) {
                if (f(hi) <= fb) return {hi, f(hi), true};
            }
        }
        if (a <= lo && c >= hi) break;
    }

    // Grid pre-check over the bracket: one descent, one ascent.
    const int grid_n = 512;
    double la = std::log(a), lc = std::log(c);
    std::vector<double> xs(grid_n), vs(grid_n);
    int arg = 0;
    for (int i = 0; i < grid_n; ++i) {
        xs[i] = std::exp(la + (lc - la) * i / (grid_n - 1));
        vs[i] = f(xs[i]);
        if (vs[i] < vs[arg]) arg = i;
    }
    bool unimodal = true;
    for (int i = 1; i < arg; ++i) {
        if (vs[i] > vs[i - 1] * (1 + 1e-12) + 1e-300) unimodal = false;
    }
    for (int i = arg + 1; i < grid_n; ++i) {
        if (vs[i] < vs[i - 1] * (1 - 1e-12) - 1e-300) unimodal = false;
    }

    if (!unimodal) {
        // Fine grid over the whole range, then refine around its argmin.
        const int fine_n = 65536;
        double flo = std::log(lo), fhi = std::log(hi);
        double best_x = xs[arg], best_v = vs[arg];
        for (int i = 0; i < fine_n; ++i) {
            double x = std::exp(flo + (fhi - flo) * i / (fine_n - 1));
            double v = f(x);
            if (v < best_v) {
                best_v = v;
                best_x = x;
            }
        }
        auto refined = golden(f, best_x * 0.99, best_x * 1.01);
        refined.grid_unimodal = false;
        if (best_v < refined.value) return {best_x, best_v, false};
        return refined;
    }

    double left = arg == 0 ? a : xs[arg - 1];
    double right = arg == grid_n - 1 ? c : xs[arg + 1];
    auto out = golden(f, left, right);
    if (vs[arg] < out.value) out = {xs[arg], vs[arg], true};
    return out;
}

}  // namespace kadlab
