#include "gheat/gaussian_kernel.hpp"

#include "gheat/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace gheat {

namespace {

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument must be finite");
    }
}

// W. J. Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969). Coefficients from netlib specfun/erf.
constexpr std::array<double, 5> kA = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                      3209.37758913846947, 0.185777706184603153};
constexpr std::array<double, 4> kB = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                      2844.23683343917062};
constexpr std::array<double, 9> kC = {0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                      298.635138197400131,  881.95222124176909,  1712.04761263407058,
                                      2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                      1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                      3439.36767414372164, 1230.33935480374942};
constexpr std::array<double, 6> kP = {0.305326634961232344, 0.360344899949804439, 0.125781726111229246,
                                      0.0160837851487422766, 6.58749161529837803e-4, 0.0163153871373020978};
constexpr std::array<double, 5> kQ = {2.56852019228982242, 1.87295284992346047, 0.527905102951428412,
                                      0.0605183413124413191, 0.00233520497626869185};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kHuge = 6.71e7;

// exp(y²)·erfc(y) for y ≥ 0.
double erfcx_nonnegative(double y)
{
    if (y <= 0.46875) {
        const double ysq = y * y;
        double num = kA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kA[i]) * ysq;
            den = (den + kB[i]) * ysq;
        }
        const double erf = y * (num + kA[3]) / (den + kB[3]);
        return std::exp(ysq) * (1.0 - erf);
    }
    if (y <= 4.0) {
        double num = kC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        return (num + kC[7]) / (den + kD[7]);
    }
    if (y >= kHuge) {
        return kInvSqrtPi / y;
    }
    const double ysq = 1.0 / (y * y);
    double num = kP[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
        num = (num + kP[i]) * ysq;
        den = (den + kQ[i]) * ysq;
    }
    const double r = ysq * (num + kP[4]) / (den + kQ[4]);
    return (kInvSqrtPi - r) / y;
}

} // namespace

double exp_half_square(double x)
{
    const double head = std::trunc(x * 16.0) / 16.0;
    const double rest = (x - head) * (x + head);
    return std::exp(0.5 * head * head) * std::exp(0.5 * rest);
}

double exp_neg_half_square(double x)
{
    const double head = std::trunc(x * 16.0) / 16.0;
    const double rest = (x - head) * (x + head);
    return std::exp(-0.5 * head * head) * std::exp(-0.5 * rest);
}

double scaled_tail(double x)
{
    require_finite(x, "scaled_tail");
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    if (x >= 0.0) {
        return kSqrtHalfPi * erfcx_nonnegative(x * kInvSqrt2);
    }
    // e^{x²/2}(√(2π) − tail(−x)) = √(2π)e^{x²/2} − scaled(−x)
    return kSqrt2Pi * exp_half_square(x) - kSqrtHalfPi * erfcx_nonnegative(-x * kInvSqrt2);
}

double gaussian_tail(double x)
{
    require_finite(x, "gaussian_tail");
    if (x < 0.0) {
        return kSqrt2Pi - gaussian_tail(-x);
    }
    const double damping = exp_neg_half_square(x);
    if (damping == 0.0) {
        return 0.0;
    }
    return damping * scaled_tail(x);
}

TailValue tail_value(double x)
{
    return {x, gaussian_tail(x), scaled_tail(x)};
}

double abs_moment(int m)
{
    if (m < 0) {
        throw DomainError("abs_moment: order must be nonnegative");
    }
    double dfact = 1.0; // (m-1)!!
    for (int k = m - 1; k > 1; k -= 2) {
        dfact *= k;
    }
    if (m % 2 == 0) {
        return dfact;
    }
    constexpr double kSqrt2OverPi = 0.79788456080286535588;
    return kSqrt2OverPi * dfact;
}

double classical_shifted_moment(int m, double x, double s)
{
    if (m < 0) {
        throw DomainError("classical_shifted_moment: order must be nonnegative");
    }
    if (!(s >= 0.0)) {
        throw DomainError("classical_shifted_moment: scale must be nonnegative");
    }
    require_finite(x, "classical_shifted_moment");
    // Σ_{k even} C(m,k) x^{m-k} s^k (k-1)!!; all terms share the sign of x^m.
    double sum = 0.0;
    double binom = 1.0;    // C(m,k)
    double dfact = 1.0;    // (k-1)!!
    double s_pow = 1.0;    // s^k
    for (int k = 0; k <= m; k += 2) {
        sum += binom * std::pow(x, m - k) * s_pow * dfact;
        if (k + 2 > m) {
            break;
        }
        binom *= static_cast<double>(m - k) * (m - k - 1) / ((k + 1.0) * (k + 2.0));
        dfact *= k + 1;
        s_pow *= s * s;
    }
    return sum;
}

} // namespace gheat
