#pragma once

#include "gheat/rational_poly.hpp"

namespace gheat {

/// Largest polynomial order n for which the double-precision tables are built.
inline constexpr int kMaxOrder = 20;

/// g_n(x) = E[(x + Z)^{2n+1}], exact.
RationalPoly g_poly(int n);

/// Companion of g_n such that h_n e^{-x²/2} - g_n ∫_x^∞ e^{-t²/2} dt is the
/// decaying solution of y'' + x y' - (2n+1) y = 0. Exact.
RationalPoly h_poly(int n);

/// Double-precision polynomials of one order n.
///
/// `a` and `b` are the even-order analogues of g and h:
/// e^{x²/2}∫_x^∞ (s-x)^{2n} e^{-s²/2} ds = a(x)·scaled_tail(x) - b(x).
struct MomentPolys {
    FloatPoly g; ///< g_n
    FloatPoly h; ///< h_n
    FloatPoly dh; ///< h_n'
    FloatPoly a; ///< g_n' / (2n+1)
    FloatPoly b; ///< (h_n' - x h_n + g_n) / (2n+1)
};

/// Cached table entry for 0 ≤ n ≤ kMaxOrder. Building the table checks the
/// pair identities for every order and throws IdentityViolation if one fails.
const MomentPolys& moment_polys(int n);

/// q_j(x) = ∫_x^∞ (s - x)^j e^{-s²/2} ds = √(2π) E[((x + Z)^-)^j].
///
/// Closed form through g/h (odd j) or a/b (even j) where that is free of
/// cancellation; a downward continued fraction for the moment ratios otherwise.
double one_sided_moment(int j, double x);

/// e^{x²/2} q_j(x). Finite for x ≥ -37; this is the form in which the
/// free-boundary systems are solved.
double scaled_one_sided_moment(int j, double x);

/// m_n(x) = h_n(x)e^{-x²/2} - g_n(x)∫_x^∞ e^{-t²/2} dt = q_{2n+1}(x) ≥ 0.
double m_fn(int n, double x);

struct IdentityReport {
    int n;
    /// h_{n-1} g_n - g_{n-1} h_n == (2n-1)! x
    bool cross;
    /// h_{n-1} g'_{n-1} + x h_{n-1} g_{n-1} - h'_{n-1} g_{n-1} - g_{n-1}² == (2n-1)!
    bool wronskian;
    bool ok() const { return cross && wronskian; }
};

/// Checks the two polynomial identities in exact arithmetic. n ≥ 1.
IdentityReport pair_identities(int n);

/// Sandwich of the Gaussian tail by ratios of g/h at one (n, x).
struct BoundReport {
    int n;
    double x;
    double lower;
    double tail;
    double upper;
    double lower_gap;       ///< tail - lower, evaluated without cancellation
    double upper_gap;       ///< upper - tail, evaluated without cancellation
    double lower_gap_bound; ///< +inf when no bound applies
    double upper_gap_bound; ///< +inf when no bound applies (n = 1)
};

/// n ≥ 1, x > 0.
BoundReport mills_bounds(int n, double x);

/// x^{2n}[h_{n-1}(x) + g_{n-1}(x) e^{x²/2} ∫_{-∞}^x e^{-t²/2} dt] for x < 0,
/// which tends to (2n-1)! as x → -∞.
double odd_limit_value(int n, double x);

struct Enclosure {
    double lower;
    double upper;
};

/// Rational enclosure of odd_limit_value:
/// [(2n-1)! x^{2n+1} / g_n(x), (2n-1)! x^{2n} / (g'_{n-1}(x) + x g_{n-1}(x))].
Enclosure odd_limit_enclosure(int n, double x);

/// k! as a double.
double factorial(int k);

/// k!! as a double, with 0!! = (-1)!! = 1.
double double_factorial(int k);

} // namespace gheat
