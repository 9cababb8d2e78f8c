#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gheat {

/// Default tolerance on the normalised matching residual.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Solved constants of the self-similar profile for one (n, σ).
///
/// `residual` is the relative mismatch of the matching equation at c: for
/// σ > 0 the two sides of the free-boundary equation divided into each other
/// minus one, for σ = 0 the ratio c^{2n}e^{c²/2}m_{n-1}(c)/(2n-1)! minus one.
struct FreeBoundary {
    int n = 0;
    double sigma = 0.0;
    double c = 0.0;
    double k = 0.0;
    /// d·e^{-c²/(2σ²)}; empty for σ = 0.
    std::optional<double> d_scaled;
    double residual = 0.0;
    int iterations = 0;
};

/// f_n(x) = h_{n-1}(x/σ) + g_{n-1}(x/σ)e^{x²/2σ²}∫_{-∞}^{x/σ}e^{-t²/2}dt
///          - σ^{2n}[h_{n-1}(x) - g_{n-1}(x)e^{x²/2}∫_x^∞e^{-t²/2}dt].
///
/// σ ∈ (0,1), x ≥ -30. Unique zero on x < 0. May overflow to +inf once x/σ
/// exceeds ~37.
double f_fn(int n, double sigma, double x);

/// l_n(x) = ∫_x^∞e^{-t²/2}dt - h_{n-1}(x)/g_{n-1}(x)·e^{-x²/2} for x < 0.
double l_fn(int n, double x);

/// Free boundary for σ ∈ (0,1).
FreeBoundary solve_free_boundary(int n, double sigma, double tol = kBoundaryTolerance);

/// Free boundary for the degenerate case σ = 0.
FreeBoundary solve_free_boundary_degenerate(int n, double tol = kBoundaryTolerance);

/// Dispatches on σ: 0 → degenerate solver, (0,1) → regular solver.
FreeBoundary solve_boundary(int n, double sigma, double tol = kBoundaryTolerance);

/// Residuals of the closed n = 1 system at a solved boundary.
///
/// σ > 0: `boundary` is 1 + y e^{y²/2}∫_{-∞}^y e^{-t²/2}dt - σ²[1 - c e^{c²/2}∫_c^∞e^{-t²/2}dt]
/// with y = c/σ, and `k` is the relative gap to -2c/(e^{-c²/2} - c∫_c^∞e^{-t²/2}dt).
/// σ = 0: `boundary` is 1 - c² + c³e^{c²/2}∫_c^∞e^{-t²/2}dt and `k` the relative
/// gap to -2c³e^{c²/2}.
struct CubicCheck {
    double boundary;
    double k;
};

CubicCheck cubic_check(const FreeBoundary& fb);

/// Solves each σ in a strictly ascending list from [0,1).
std::vector<FreeBoundary> boundary_scan(int n, std::span<const double> sigmas, double tol = kBoundaryTolerance);

} // namespace gheat
