#include "gheat/free_boundary.hpp"

#include "brent.hpp"
#include "gheat/errors.hpp"
#include "gheat/gaussian_kernel.hpp"
#include "gheat/hermite_pair.hpp"

#include <cmath>
#include <string>

namespace gheat {

namespace {

constexpr double kLeftLimit = -30.0;
// Zero: the bracket is shrunk until it collapses to rounding.
constexpr double kStepTolerance = 0.0;
constexpr int kMaxIterations = 200;

void require_order(int n, const char* what)
{
    if (n < 1) {
        throw DomainError(std::string(what) + ": n must be at least 1");
    }
    if (n > kMaxOrder) {
        throw RangeError(std::string(what) + ": n exceeds " + std::to_string(kMaxOrder));
    }
}

void require_open_sigma(double sigma, const char* what)
{
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw DomainError(std::string(what) + ": sigma must lie in (0,1)");
    }
}

void require_tolerance(double tol, const char* what)
{
    if (!(tol > 0.0)) {
        throw DomainError(std::string(what) + ": tolerance must be positive");
    }
}

// Relative mismatch of the two sides of the matching equation; same sign as f_n.
double matching_mismatch(int n, double sigma, double sigma_pow, double x)
{
    const int j = 2 * n - 1;
    return scaled_one_sided_moment(j, -x / sigma) / (sigma_pow * scaled_one_sided_moment(j, x)) - 1.0;
}

// c^{2n}e^{c²/2}m_{n-1}(c)/(2n-1)! - 1
double degenerate_mismatch(int n, double x)
{
    return std::pow(x, 2 * n) * scaled_one_sided_moment(2 * n - 1, x) / factorial(2 * n - 1) - 1.0;
}

struct Bracket {
    double left;
    double f_left;
    double right;
    double f_right;
};

// Walk left from `start` by doubling until `fn` turns positive; `right` holds a
// point known to be negative. Fails at the hard left limit.
template <class F>
Bracket expand_left_until_positive(F&& fn, double start, double right, double f_right, const char* what)
{
    double left = start;
    double f_left = fn(left);
    while (!(f_left > 0.0)) {
        if (left <= kLeftLimit) {
            throw BracketError(std::string(what) + ": no sign change on [-30, 0)");
        }
        right = left;
        f_right = f_left;
        left = std::max(2.0 * left, kLeftLimit);
        f_left = fn(left);
    }
    return {left, f_left, right, f_right};
}

} // namespace

double f_fn(int n, double sigma, double x)
{
    require_order(n, "f_fn");
    require_open_sigma(sigma, "f_fn");
    if (!std::isfinite(x)) {
        throw DomainError("f_fn: x must be finite");
    }
    if (x < kLeftLimit) {
        throw RangeError("f_fn: x below -30");
    }
    const int j = 2 * n - 1;
    return scaled_one_sided_moment(j, -x / sigma) - std::pow(sigma, 2 * n) * scaled_one_sided_moment(j, x);
}

double l_fn(int n, double x)
{
    require_order(n, "l_fn");
    if (!(x < 0.0) || !std::isfinite(x)) {
        throw DomainError("l_fn: x must be negative");
    }
    const auto& p = moment_polys(n - 1);
    return gaussian_tail(x) - p.h(x) / p.g(x) * exp_neg_half_square(x);
}

FreeBoundary solve_free_boundary(int n, double sigma, double tol)
{
    require_order(n, "solve_free_boundary");
    require_open_sigma(sigma, "solve_free_boundary");
    require_tolerance(tol, "solve_free_boundary");

    const double sigma_pow = std::pow(sigma, 2 * n);
    // The mismatch is negative left of the root, so negate it to reuse the
    // "walk left until positive" bracket search.
    auto negated = [&](double x) { return -matching_mismatch(n, sigma, sigma_pow, x); };
    const double at_zero = negated(0.0);
    const Bracket br = expand_left_until_positive(negated, -1.0, 0.0, at_zero, "solve_free_boundary");

    auto mismatch = [&](double x) { return matching_mismatch(n, sigma, sigma_pow, x); };
    const auto root =
        detail::brent_root(mismatch, br.left, br.right, -br.f_left, -br.f_right, kStepTolerance, tol, kMaxIterations);
    if (!root.converged) {
        throw ConvergenceError("solve_free_boundary: residual tolerance not reached");
    }

    const double c = root.x;
    const auto& prev = moment_polys(n - 1);
    const double g_c = prev.g(c);
    FreeBoundary fb;
    fb.n = n;
    fb.sigma = sigma;
    fb.c = c;
    fb.k = -double_factorial(2 * n) * g_c / one_sided_moment(2 * n - 1, c);
    fb.d_scaled = sigma * prev.g(c / sigma) / g_c * fb.k * exp_neg_half_square(c);
    fb.residual = root.fx;
    fb.iterations = root.iterations;
    return fb;
}

FreeBoundary solve_free_boundary_degenerate(int n, double tol)
{
    require_order(n, "solve_free_boundary_degenerate");
    require_tolerance(tol, "solve_free_boundary_degenerate");

    auto mismatch = [n](double x) { return degenerate_mismatch(n, x); };
    // The mismatch is -1 at 0 and grows without bound to the left; make sure
    // the starting point sits right of the root.
    double start = -0.5;
    while (mismatch(start) > 0.0) {
        start *= 0.5;
        if (start > -1e-8) {
            throw BracketError("solve_free_boundary_degenerate: no negative value near 0");
        }
    }
    const Bracket br = expand_left_until_positive(mismatch, start, start, mismatch(start),
                                                  "solve_free_boundary_degenerate");
    const auto root =
        detail::brent_root(mismatch, br.left, br.right, br.f_left, br.f_right, kStepTolerance, tol, kMaxIterations);
    if (!root.converged) {
        throw ConvergenceError("solve_free_boundary_degenerate: residual tolerance not reached");
    }

    const double c = root.x;
    FreeBoundary fb;
    fb.n = n;
    fb.sigma = 0.0;
    fb.c = c;
    fb.k = -(2.0 * n / double_factorial(2 * n - 1)) * moment_polys(n - 1).g(c) * std::pow(c, 2 * n) *
           exp_half_square(c);
    fb.residual = root.fx;
    fb.iterations = root.iterations;
    return fb;
}

FreeBoundary solve_boundary(int n, double sigma, double tol)
{
    if (sigma == 0.0) {
        return solve_free_boundary_degenerate(n, tol);
    }
    return solve_free_boundary(n, sigma, tol);
}

std::vector<FreeBoundary> boundary_scan(int n, std::span<const double> sigmas, double tol)
{
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] >= 0.0 && sigmas[i] < 1.0)) {
            throw DomainError("boundary_scan: sigma must lie in [0,1)");
        }
        if (i > 0 && !(sigmas[i] > sigmas[i - 1])) {
            throw DomainError("boundary_scan: sigmas must be strictly ascending");
        }
    }
    std::vector<FreeBoundary> out;
    out.reserve(sigmas.size());
    for (double s : sigmas) {
        out.push_back(solve_boundary(n, s, tol));
    }
    return out;
}

CubicCheck cubic_check(const FreeBoundary& fb)
{
    if (fb.n != 1) {
        throw DomainError("cubic_check: only defined for n = 1");
    }
    const double c = fb.c;
    const double mills = scaled_tail(c);
    if (fb.sigma == 0.0) {
        const double k = -2.0 * c * c * c * exp_half_square(c);
        return {1.0 - c * c + c * c * c * mills, (fb.k - k) / k};
    }
    const double y = c / fb.sigma;
    const double lhs = 1.0 + y * scaled_tail(-y);
    const double rhs = fb.sigma * fb.sigma * (1.0 - c * mills);
    const double k = -2.0 * c * exp_half_square(c) / (1.0 - c * mills);
    return {lhs - rhs, (fb.k - k) / k};
}

} // namespace gheat
