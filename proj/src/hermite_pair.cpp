#include "gheat/hermite_pair.hpp"

#include "gheat/errors.hpp"
#include "gheat/gaussian_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace gheat {

namespace {

using boost::multiprecision::cpp_int;

// Closed forms lose at most this factor of the result to cancellation before
// the continued fraction takes over.
constexpr double kMaxCancellation = 1e2;
constexpr double kFractionThreshold = 1.0;
constexpr int kMaxFractionDepth = 1 << 22;

cpp_int int_factorial(int k)
{
    cpp_int r = 1;
    for (int i = 2; i <= k; ++i) {
        r *= i;
    }
    return r;
}

cpp_int int_double_factorial(int k)
{
    cpp_int r = 1;
    for (int i = k; i > 1; i -= 2) {
        r *= i;
    }
    return r;
}

cpp_int binomial(int n, int k)
{
    return int_factorial(n) / (int_factorial(k) * int_factorial(n - k));
}

void require_order(int n, const char* what)
{
    if (n < 0) {
        throw DomainError(std::string(what) + ": order must be nonnegative");
    }
}

void require_table_order(int n, const char* what)
{
    require_order(n, what);
    if (n > kMaxOrder) {
        throw RangeError(std::string(what) + ": order exceeds " + std::to_string(kMaxOrder));
    }
}

struct PolyTable {
    std::array<MomentPolys, kMaxOrder + 1> entries;

    PolyTable()
    {
        const RationalPoly x = RationalPoly::monomial(1);
        for (int n = 0; n <= kMaxOrder; ++n) {
            const RationalPoly g = g_poly(n);
            const RationalPoly h = h_poly(n);
            const Rational inv(1, 2 * n + 1);
            entries[static_cast<std::size_t>(n)] = MomentPolys{
                FloatPoly(g),
                FloatPoly(h),
                FloatPoly(h.derivative()),
                FloatPoly(g.derivative() * inv),
                FloatPoly((h.derivative() - x * h + g) * inv),
            };
            if (n >= 1) {
                const auto report = pair_identities(n);
                if (!report.ok()) {
                    throw IdentityViolation("g/h pair identities fail at n = " + std::to_string(n));
                }
            }
        }
    }
};

const PolyTable& poly_table()
{
    static const PolyTable table;
    return table;
}

struct ClosedForm {
    double value;
    double magnitude; // largest term entering the difference
};

ClosedForm closed_scaled(int j, double x)
{
    const double mills = scaled_tail(x);
    if (j % 2 == 1) {
        const auto& p = moment_polys((j - 1) / 2);
        const double first = p.h(x);
        const double second = p.g(x) * mills;
        return {first - second, std::max(std::abs(first), std::abs(second))};
    }
    const auto& p = moment_polys(j / 2);
    const double first = p.a(x) * mills;
    const double second = p.b(x);
    return {first - second, std::max(std::abs(first), std::abs(second))};
}

// For x > 0 the ratios r_i = S_i/S_{i-1} obey r_i = i/(x + r_{i+1}). Running
// that downward from a deep start is stable and every step stays positive.
double fraction_scaled(int j, double x)
{
    const auto tail_ratio = [j, x](int depth) {
        double r = 0.5 * (std::sqrt(x * x + 4.0 * depth) - x);
        for (int i = depth; i > j; --i) {
            r = i / (x + r);
        }
        return r;
    };
    int depth = j + 16;
    double ratio = tail_ratio(depth);
    while (depth < kMaxFractionDepth) {
        depth *= 2;
        const double next = tail_ratio(depth);
        const bool settled = std::abs(next - ratio) <= 2e-16 * next;
        ratio = next;
        if (settled) {
            break;
        }
    }
    double product = 1.0;
    for (int i = j; i >= 1; --i) {
        ratio = i / (x + ratio);
        product *= ratio;
    }
    return scaled_tail(x) * product;
}

void check_moment_args(int j, double x, const char* what)
{
    if (j < 0 || j > 2 * kMaxOrder + 1) {
        throw RangeError(std::string(what) + ": moment order out of range");
    }
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument must be finite");
    }
}

} // namespace

double factorial(int k)
{
    double r = 1.0;
    for (int i = 2; i <= k; ++i) {
        r *= i;
    }
    return r;
}

double double_factorial(int k)
{
    double r = 1.0;
    for (int i = k; i > 1; i -= 2) {
        r *= i;
    }
    return r;
}

RationalPoly g_poly(int n)
{
    require_order(n, "g_poly");
    std::vector<Rational> c(static_cast<std::size_t>(2 * n + 2));
    const cpp_int top = int_factorial(2 * n + 1);
    for (int i = 0; i <= n; ++i) {
        c[static_cast<std::size_t>(2 * i + 1)] =
            Rational(top, int_double_factorial(2 * (n - i)) * int_factorial(2 * i + 1));
    }
    return RationalPoly(std::move(c));
}

RationalPoly h_poly(int n)
{
    require_order(n, "h_poly");
    std::vector<Rational> c(static_cast<std::size_t>(2 * n + 1));
    for (int i = 0; i <= n; ++i) {
        cpp_int partial = 0;
        for (int j = 0; j <= n - i; ++j) {
            partial += binomial(2 * n + 1, j);
        }
        c[static_cast<std::size_t>(2 * i)] =
            Rational(int_factorial(n + i) * int_factorial(n - i) * partial,
                     int_double_factorial(2 * (n - i)) * int_factorial(2 * i));
    }
    return RationalPoly(std::move(c));
}

const MomentPolys& moment_polys(int n)
{
    require_table_order(n, "moment_polys");
    return poly_table().entries[static_cast<std::size_t>(n)];
}

IdentityReport pair_identities(int n)
{
    if (n < 1) {
        throw DomainError("pair_identities: n must be at least 1");
    }
    const RationalPoly x = RationalPoly::monomial(1);
    const RationalPoly g_prev = g_poly(n - 1);
    const RationalPoly h_prev = h_poly(n - 1);
    const RationalPoly g = g_poly(n);
    const RationalPoly h = h_poly(n);
    const Rational fact(int_factorial(2 * n - 1));

    const RationalPoly cross = h_prev * g - g_prev * h;
    const RationalPoly wronskian =
        h_prev * g_prev.derivative() + x * h_prev * g_prev - h_prev.derivative() * g_prev - g_prev * g_prev;

    return {n, cross == RationalPoly::monomial(1, fact), wronskian == RationalPoly::constant(fact)};
}

double scaled_one_sided_moment(int j, double x)
{
    check_moment_args(j, x, "scaled_one_sided_moment");
    if (x <= 0.0) {
        // Both terms are nonnegative here.
        return closed_scaled(j, x).value;
    }
    if (x < kFractionThreshold) {
        const ClosedForm closed = closed_scaled(j, x);
        if (closed.value > 0.0 && closed.magnitude <= kMaxCancellation * closed.value) {
            return closed.value;
        }
    }
    return fraction_scaled(j, x);
}

double one_sided_moment(int j, double x)
{
    check_moment_args(j, x, "one_sided_moment");
    if (x > 0.0) {
        return exp_neg_half_square(x) * scaled_one_sided_moment(j, x);
    }
    const double damping = exp_neg_half_square(x);
    const double tail = gaussian_tail(x);
    if (j % 2 == 1) {
        const auto& p = moment_polys((j - 1) / 2);
        return p.h(x) * damping - p.g(x) * tail;
    }
    const auto& p = moment_polys(j / 2);
    return p.a(x) * tail - p.b(x) * damping;
}

double m_fn(int n, double x)
{
    require_table_order(n, "m_fn");
    return one_sided_moment(2 * n + 1, x);
}

BoundReport mills_bounds(int n, double x)
{
    if (n < 1) {
        throw DomainError("mills_bounds: n must be at least 1");
    }
    require_table_order(n, "mills_bounds");
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("mills_bounds: x must be positive and finite");
    }
    const auto& prev = moment_polys(n - 1);
    const auto& cur = moment_polys(n);
    const double damping = exp_neg_half_square(x);
    const double g_prev = prev.g(x);
    const double dg_prev = (2 * n - 1) * prev.a(x);
    const double denom = dg_prev + x * g_prev;
    const double g_cur = cur.g(x);

    BoundReport r{};
    r.n = n;
    r.x = x;
    r.tail = gaussian_tail(x);
    r.lower = (prev.dh(x) + g_prev) / denom * damping;
    r.upper = cur.h(x) / g_cur * damping;
    r.lower_gap = one_sided_moment(2 * n, x) / denom;
    r.upper_gap = one_sided_moment(2 * n + 1, x) / g_cur;

    const double nf = factorial(n);
    r.lower_gap_bound = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n; ++k) {
        const double bound =
            kSqrt2Pi * factorial(2 * k) * factorial(n - k) / (std::pow(x, 2 * k) * std::pow(2.0, 3 * k) * nf);
        r.lower_gap_bound = std::min(r.lower_gap_bound, bound);
    }
    r.upper_gap_bound = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n - 1; ++k) {
        const double bound = kSqrt2Pi * factorial(2 * k + 1) * factorial(2 * (n - k) - 1) * nf /
                             (std::pow(2.0, k) * std::pow(x, 2 * (k + 1)) * factorial(2 * n) * factorial(n - k - 1));
        r.upper_gap_bound = std::min(r.upper_gap_bound, bound);
    }
    return r;
}

double odd_limit_value(int n, double x)
{
    if (n < 1) {
        throw DomainError("odd_limit_value: n must be at least 1");
    }
    if (!(x < 0.0)) {
        throw DomainError("odd_limit_value: x must be negative");
    }
    // e^{x²/2}∫_{-∞}^x e^{-t²/2}dt = scaled_tail(-x), so the bracket is q_{2n-1}
    // scaled at -x.
    return std::pow(x, 2 * n) * scaled_one_sided_moment(2 * n - 1, -x);
}

Enclosure odd_limit_enclosure(int n, double x)
{
    if (n < 1) {
        throw DomainError("odd_limit_enclosure: n must be at least 1");
    }
    if (!(x < 0.0)) {
        throw DomainError("odd_limit_enclosure: x must be negative");
    }
    const auto& prev = moment_polys(n - 1);
    const double fact = factorial(2 * n - 1);
    const double x2n = std::pow(x, 2 * n);
    return {fact * x2n * x / moment_polys(n).g(x), fact * x2n / ((2 * n - 1) * prev.a(x) + x * prev.g(x))};
}

} // namespace gheat
