#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace gheat::detail {

struct RootResult {
    double x;
    double fx;
    int iterations;
    bool converged;
};

/// Brent's method on a sign-changing bracket [a, b].
///
/// Stops once the bracket is below x_tol and |f| ≤ f_tol. If the step
/// criterion is met first the bracket keeps shrinking down to rounding level;
/// `converged` reports whether |f| ≤ f_tol was reached.
template <class F>
RootResult brent_root(F&& f, double a, double b, double fa, double fb, double x_tol, double f_tol, int max_iter)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    double step_tol = x_tol;

    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double floor_tol = 2.0 * eps * std::max(std::abs(b), 1e-300);
        double tol1 = floor_tol + 0.5 * step_tol;
        const double m = 0.5 * (c - b);
        if (fb == 0.0) {
            return {b, fb, iter, true};
        }
        if (std::abs(m) <= tol1) {
            if (std::abs(fb) <= f_tol) {
                return {b, fb, iter, true};
            }
            if (std::abs(m) <= floor_tol) {
                return {b, fb, iter, false};
            }
            step_tol = 0.0;
            tol1 = floor_tol;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (m > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return {b, fb, max_iter, std::abs(fb) <= f_tol};
}

} // namespace gheat::detail
