#pragma once

#include "gheat/free_boundary.hpp"
#include "gheat/hermite_pair.hpp"

#include <optional>

namespace gheat {

/// Which side of the free boundary an evaluation uses.
enum class Branch { upper, lower };

/// Self-similar profile P with u(t, x) = t^{n+1/2} P(x/√t).
///
/// For σ ∈ [0,1) the boundary is solved once at construction. Above c the
/// profile is g_n + (k/(2n)!!)·m_n; below c it is σ^{2n+1}g_n(x/σ) plus the
/// mirrored decaying term (σ > 0) or x^{2n+1} (σ = 0). σ = 1 is the classical
/// g_n everywhere. Immutable after construction.
class Profile {
public:
    static Profile build(int n, double sigma, double tol = kBoundaryTolerance);

    int n() const { return n_; }
    double sigma() const { return sigma_; }
    /// Empty for σ = 1.
    const std::optional<FreeBoundary>& boundary() const { return fb_; }
    /// Free boundary; -∞ for σ = 1 so every x sits on the upper side.
    double c() const;

    /// P, P' or P'' for order 0, 1, 2. x = c takes the upper branch.
    double eval(double x, int order) const;
    /// Forces a branch regardless of the side of c; for matching checks.
    double eval_branch(double x, int order, Branch branch) const;

private:
    Profile(int n, double sigma, std::optional<FreeBoundary> fb);

    double upper(double x, int order) const;
    double lower(double x, int order) const;

    int n_;
    double sigma_;
    std::optional<FreeBoundary> fb_;
    const MomentPolys* cur_;
    const MomentPolys* prev_;
    double k_scaled_ = 0.0; // k/(2n)!!
    double d_scaled_ = 0.0; // d·e^{-c²/2σ²}/(2n)!!
    double yc_ = 0.0;       // c/σ
    double odd_ = 0.0;      // 2n+1
    double second_ = 0.0;   // (2n+1)(2n)
};

double eval_profile(const Profile& p, double x, int order);

/// (P'')⁺ - σ²(P'')⁻ + xP' - (2n+1)P.
double ode_residual(const Profile& p, double x);

struct SolutionQuery {
    int n = 1;
    double sigma = 0.0;
    double t = 0.0;
    double x = 0.0;
};

/// u(t, x) for the initial datum x^{2n+1}; t = 0 returns x^{2n+1} exactly.
double eval_solution(const Profile& p, double t, double x);
double eval_solution(const SolutionQuery& q);

/// u(t, -x).
double reflected_solution(const Profile& p, double t, double x);
double reflected_solution(const SolutionQuery& q);

/// Ê[B_t^{2n+1}] = k_n t^{n+1/2}; zero for σ = 1.
double odd_moment(int n, double sigma, double t);

/// Ê[(x + B_t)^m]. Even m and m = 1 are linear cases; odd m ≥ 3 uses the profile.
double g_expectation_monomial(int m, double sigma, double t, double x);

/// max over ν on a uniform grid of [σ, 1] of E[(x + ν√t Z)^m].
double constant_control_lower_bound(int m, double sigma, double t, double x, int grid_size);

/// Worst-case E[(log S_T)^m] for drift μ and volatility in [σ, 1]: Ê[(μT + B_T)^m].
double finance_log_moment(int m, double sigma, double mu, double T);

} // namespace gheat
