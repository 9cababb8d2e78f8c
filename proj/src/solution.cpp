#include "gheat/solution.hpp"

#include "gheat/errors.hpp"
#include "gheat/gaussian_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gheat {

namespace {

void require_order(int n, const char* what)
{
    if (n < 1) {
        throw DomainError(std::string(what) + ": n must be at least 1");
    }
    if (n > kMaxOrder) {
        throw RangeError(std::string(what) + ": n exceeds " + std::to_string(kMaxOrder));
    }
}

void require_sigma(double sigma, const char* what)
{
    if (!(sigma >= 0.0 && sigma <= 1.0)) {
        throw DomainError(std::string(what) + ": sigma must lie in [0, 1]");
    }
}

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + ": arguments must be finite");
    }
}

void require_positive_time(double t, const char* what)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(what) + ": time must be positive and finite");
    }
}

double int_power(double x, int p)
{
    double r = 1.0;
    for (int i = 0; i < p; ++i) {
        r *= x;
    }
    return r;
}

} // namespace

Profile::Profile(int n, double sigma, std::optional<FreeBoundary> fb)
    : n_(n), sigma_(sigma), fb_(std::move(fb)), cur_(&moment_polys(n)), prev_(&moment_polys(n - 1))
{
    odd_ = 2.0 * n + 1.0;
    second_ = odd_ * (2.0 * n);
    if (fb_) {
        const double norm = double_factorial(2 * n);
        k_scaled_ = fb_->k / norm;
        if (fb_->d_scaled) {
            d_scaled_ = *fb_->d_scaled / norm;
            yc_ = fb_->c / sigma;
        }
    }
}

Profile Profile::build(int n, double sigma, double tol)
{
    require_order(n, "Profile::build");
    require_sigma(sigma, "Profile::build");
    if (sigma == 1.0) {
        return Profile(n, sigma, std::nullopt);
    }
    return Profile(n, sigma, solve_boundary(n, sigma, tol));
}

double Profile::c() const
{
    return fb_ ? fb_->c : -std::numeric_limits<double>::infinity();
}

double Profile::eval(double x, int order) const
{
    return eval_branch(x, order, x >= c() ? Branch::upper : Branch::lower);
}

double Profile::eval_branch(double x, int order, Branch branch) const
{
    if (order < 0 || order > 2) {
        throw DomainError("eval_profile: order must be 0, 1 or 2");
    }
    require_finite(x, "eval_profile");
    if (branch == Branch::lower && fb_) {
        return lower(x, order);
    }
    return upper(x, order);
}

double Profile::upper(double x, int order) const
{
    const int j = 2 * n_ + 1 - order;
    const double decay = k_scaled_ == 0.0 ? 0.0 : k_scaled_ * one_sided_moment(j, x);
    switch (order) {
    case 0:
        return cur_->g(x) + decay;
    case 1:
        return odd_ * (cur_->a(x) - decay);
    default:
        return second_ * (prev_->g(x) + decay);
    }
}

double Profile::lower(double x, int order) const
{
    if (sigma_ == 0.0) {
        const double scale = order == 0 ? 1.0 : order == 1 ? odd_ : second_;
        return scale * int_power(x, 2 * n_ + 1 - order);
    }
    const double y = x / sigma_;
    const double poly_scale = std::pow(sigma_, 2 * n_ + 1 - order);
    // e^{(y_c² - y²)/2}: the part of e^{c²/2σ²} not already folded into d_scaled_.
    const double damping = std::exp(0.5 * (yc_ - y) * (yc_ + y));
    const int j = 2 * n_ + 1 - order;
    const double decay = damping == 0.0 ? 0.0 : d_scaled_ * damping * scaled_one_sided_moment(j, -y) / std::pow(sigma_, order);
    switch (order) {
    case 0:
        return poly_scale * cur_->g(y) + decay;
    case 1:
        return odd_ * (poly_scale * cur_->a(y) + decay);
    default:
        return second_ * (poly_scale * prev_->g(y) + decay);
    }
}

double eval_profile(const Profile& p, double x, int order)
{
    return p.eval(x, order);
}

double ode_residual(const Profile& p, double x)
{
    const double v = p.eval(x, 0);
    const double d1 = p.eval(x, 1);
    const double d2 = p.eval(x, 2);
    const double s2 = p.sigma() * p.sigma();
    return std::max(d2, 0.0) - s2 * std::max(-d2, 0.0) + x * d1 - (2.0 * p.n() + 1.0) * v;
}

double eval_solution(const Profile& p, double t, double x)
{
    require_finite(x, "eval_solution");
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("eval_solution: time must be nonnegative and finite");
    }
    if (t == 0.0) {
        return int_power(x, 2 * p.n() + 1);
    }
    return std::pow(t, p.n() + 0.5) * p.eval(x / std::sqrt(t), 0);
}

double eval_solution(const SolutionQuery& q)
{
    return eval_solution(Profile::build(q.n, q.sigma), q.t, q.x);
}

double reflected_solution(const Profile& p, double t, double x)
{
    return eval_solution(p, t, -x);
}

double reflected_solution(const SolutionQuery& q)
{
    return reflected_solution(Profile::build(q.n, q.sigma), q.t, q.x);
}

double odd_moment(int n, double sigma, double t)
{
    require_order(n, "odd_moment");
    require_sigma(sigma, "odd_moment");
    require_positive_time(t, "odd_moment");
    if (sigma == 1.0) {
        return 0.0;
    }
    return solve_boundary(n, sigma).k * std::pow(t, n + 0.5);
}

double g_expectation_monomial(int m, double sigma, double t, double x)
{
    if (m < 1) {
        throw DomainError("g_expectation_monomial: m must be at least 1");
    }
    require_sigma(sigma, "g_expectation_monomial");
    require_positive_time(t, "g_expectation_monomial");
    require_finite(x, "g_expectation_monomial");
    if (m % 2 == 0) {
        return classical_shifted_moment(m, x, std::sqrt(t));
    }
    if (m == 1) {
        return x;
    }
    return eval_solution(Profile::build((m - 1) / 2, sigma), t, x);
}

double constant_control_lower_bound(int m, double sigma, double t, double x, int grid_size)
{
    if (m < 1) {
        throw DomainError("constant_control_lower_bound: m must be at least 1");
    }
    if (grid_size < 2) {
        throw DomainError("constant_control_lower_bound: grid_size must be at least 2");
    }
    require_sigma(sigma, "constant_control_lower_bound");
    require_positive_time(t, "constant_control_lower_bound");
    require_finite(x, "constant_control_lower_bound");
    const double root_t = std::sqrt(t);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
        const double nu = sigma + (1.0 - sigma) * i / (grid_size - 1);
        best = std::max(best, classical_shifted_moment(m, x, nu * root_t));
    }
    return best;
}

double finance_log_moment(int m, double sigma, double mu, double T)
{
    require_finite(mu, "finance_log_moment");
    require_positive_time(T, "finance_log_moment");
    return g_expectation_monomial(m, sigma, T, mu * T);
}

} // namespace gheat
