#pragma once

namespace gheat {

inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481;
inline constexpr double kSqrtHalfPi = 1.25331413731550025120788264241;

/// Upper Gaussian tail with its scaled companion, sampled at one abscissa.
struct TailValue {
    double x;
    double tail;    ///< ∫_x^∞ e^{-t²/2} dt
    double scaled;  ///< e^{x²/2} · tail
};

/// ∫_x^∞ e^{-t²/2} dt.
///
/// Relative error below 1e-13 wherever the result is a normal double; returns
/// 0 once the tail underflows (x ≳ 38.5). The mirror integral
/// ∫_{-∞}^x e^{-t²/2} dt is gaussian_tail(-x).
double gaussian_tail(double x);

/// e^{x²/2} ∫_x^∞ e^{-t²/2} dt, the Mills ratio of the standard normal.
///
/// Evaluated through Cody's rational approximations of the scaled
/// complementary error function, so it neither overflows nor underflows for
/// |x| ≤ 35. Overflows to +inf below x ≈ -37.6.
double scaled_tail(double x);

TailValue tail_value(double x);

/// E|Z|^m for standard normal Z.
double abs_moment(int m);

/// E[(x + sZ)^m] for standard normal Z, by binomial expansion.
double classical_shifted_moment(int m, double x, double s);

/// e^{x²/2}, with x² split so the exponent carries no rounding error.
double exp_half_square(double x);

/// e^{-x²/2}, same splitting as exp_half_square.
double exp_neg_half_square(double x);

} // namespace gheat
