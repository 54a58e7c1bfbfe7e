// nelder_mead.hpp — derivative-free simplex minimizer used for local
// refinement after coarse grid scans. Standard reflection / expansion /
// contraction / shrink with adaptive-free classic coefficients.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace qdh::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Minimize fn over R^n starting from `start` with initial step `step`.
/// Stops when the simplex f-spread falls below ftol (absolute) or the
/// simplex diameter falls below xtol.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                                    std::vector<double> start, double step, double ftol,
                                    double xtol, int max_iter) {
    const int n = static_cast<int>(start.size());
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (int i = 0; i <= n; ++i) fv[i] = fn(pts[i]);

    std::vector<int> order(n + 1);
    NelderMeadResult res;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int lo = order[0], hi = order[n], next_hi = order[n - 1];

        double diam = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int d = 0; d < n; ++d)
                diam = std::max(diam, std::abs(pts[order[i]][d] - pts[lo][d]));
        if (fv[hi] - fv[lo] <= ftol || diam <= xtol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == hi) continue;
            for (int d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (int d = 0; d < n; ++d) centroid[d] /= n;

        auto blend = [&](double coeff) {
            std::vector<double> x(n);
            for (int d = 0; d < n; ++d) x[d] = centroid[d] + coeff * (pts[hi][d] - centroid[d]);
            return x;
        };

        std::vector<double> refl = blend(-1.0);
        const double f_refl = fn(refl);
        if (f_refl < fv[lo]) {
            std::vector<double> expa = blend(-2.0);
            const double f_expa = fn(expa);
            if (f_expa < f_refl) {
                pts[hi] = std::move(expa);
                fv[hi] = f_expa;
            } else {
                pts[hi] = std::move(refl);
                fv[hi] = f_refl;
            }
        } else if (f_refl < fv[next_hi]) {
            pts[hi] = std::move(refl);
            fv[hi] = f_refl;
        } else {
            std::vector<double> contr = blend(f_refl < fv[hi] ? -0.5 : 0.5);
            const double f_contr = fn(contr);
            if (f_contr < std::min(fv[hi], f_refl)) {
                pts[hi] = std::move(contr);
                fv[hi] = f_contr;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (int d = 0; d < n; ++d) pts[i][d] = 0.5 * (pts[i][d] + pts[lo][d]);
                    fv[i] = fn(pts[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = pts[best];
    res.f = fv[best];
    res.iterations = iter;
    return res;
}

}  // namespace qdh::detail
