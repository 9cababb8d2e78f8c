// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "gheat/free_boundary.hpp"
#include "gheat/hermite_pair.hpp"
#include "gheat/oracles.hpp"
#include "gheat/solution.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace gheat;

namespace {

constexpr std::array<double, 8> kSigmas{0.0, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (!pass) {
                detail << "; ";
            }
            detail << what;
            pass = false;
        }
    }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void identities(Outcome& o)
{
    for (int n = 1; n <= 12; ++n) {
        o.require(pair_identities(n).ok(), "n=" + std::to_string(n) + " identity fails");
    }
}

void boundary_contract(Outcome& o)
{
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (double s : kSigmas) {
            const std::string tag = "n=" + std::to_string(n) + " sigma=" + fmt(s);
            const FreeBoundary fb = solve_boundary(n, s);
            o.require(fb.c < 0.0, tag + " c >= 0");
            o.require(fb.k > 0.0, tag + " k <= 0");
            o.require(std::abs(fb.residual) <= 1e-12, tag + " residual " + fmt(fb.residual));
            worst = std::max(worst, std::abs(fb.residual));
            if (n == 1) {
                const CubicCheck check = cubic_check(fb);
                o.require(std::abs(check.boundary) <= 1e-12 && std::abs(check.k) <= 1e-12,
                          tag + " cubic form off by " + fmt(std::max(std::abs(check.boundary), std::abs(check.k))));
            }
        }
    }
    o.detail << (o.pass ? "max residual " + fmt(worst) : "");
}

void residual_sweep(Outcome& o)
{
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (double s : kSigmas) {
            const Profile p = Profile::build(n, s);
            for (int i = 0; i <= 400; ++i) {
                const double x = -8.0 + 16.0 * i / 400;
                worst = std::max(worst, std::abs(ode_residual(p, x)) / (1.0 + std::abs(p.eval(x, 0))));
            }
        }
    }
    o.require(worst <= 1e-8, "max scaled residual " + fmt(worst));
    o.detail << (o.pass ? "max scaled residual " + fmt(worst) : "");
}

void matching(Outcome& o)
{
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (double s : kSigmas) {
            const Profile p = Profile::build(n, s);
            const double c = p.c();
            const std::string tag = "n=" + std::to_string(n) + " sigma=" + fmt(s);
            const double u0 = p.eval_branch(c, 0, Branch::lower) - p.eval_branch(c, 0, Branch::upper);
            const double u1 = p.eval_branch(c, 1, Branch::lower) - p.eval_branch(c, 1, Branch::upper);
            const double j0 = std::abs(u0) / (1.0 + std::abs(p.eval(c, 0)));
            const double j1 = std::abs(u1) / (1.0 + std::abs(p.eval(c, 1)));
            o.require(j0 <= 1e-9 && j1 <= 1e-9, tag + " value/slope jump " + fmt(std::max(j0, j1)));
            worst = std::max({worst, j0, j1});
            if (s > 0.0) {
                const double lo = std::abs(p.eval_branch(c, 2, Branch::lower));
                const double up = std::abs(p.eval_branch(c, 2, Branch::upper));
                o.require(lo <= 1e-9 && up <= 1e-9, tag + " P''(c) " + fmt(std::max(lo, up)));
                worst = std::max({worst, lo, up});
            } else {
                const double want = (2.0 * n + 1.0) * (2.0 * n) * std::pow(c, 2 * n - 1);
                const double rel = std::abs(p.eval_branch(c, 2, Branch::lower) - want) / std::abs(want);
                o.require(rel <= 1e-9, tag + " P''(c-) off by " + fmt(rel));
                worst = std::max(worst, rel);
            }
        }
    }
    o.detail << (o.pass ? "max jump " + fmt(worst) : "");
}

void monotonicity(Outcome& o)
{
    for (int n = 1; n <= 5; ++n) {
        const std::string tag = "n=" + std::to_string(n);
        for (std::size_t i = 1; i < kSigmas.size(); ++i) {
            const FreeBoundary a = solve_boundary(n, kSigmas[i - 1]);
            const FreeBoundary b = solve_boundary(n, kSigmas[i]);
            o.require(b.k < a.k, tag + " k not decreasing at sigma=" + fmt(kSigmas[i]));
            o.require(b.c > a.c, tag + " c not increasing at sigma=" + fmt(kSigmas[i]));
        }
        const double ratio = solve_boundary(n, 0.99).k / solve_boundary(n, 0.05).k;
        o.require(ratio < 0.05, tag + " k(0.99)/k(0.05) = " + fmt(ratio));
    }
}

void bounds(Outcome& o)
{
    for (int n = 1; n <= 10; ++n) {
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const BoundReport r = mills_bounds(n, x);
            const bool ok = r.lower_gap >= 0.0 && r.upper_gap >= 0.0 && r.lower_gap <= r.lower_gap_bound &&
                            r.upper_gap <= r.upper_gap_bound;
            o.require(ok, "sandwich n=" + std::to_string(n) + " x=" + fmt(x));
        }
    }
    for (int n = 1; n <= 4; ++n) {
        const double limit = factorial(2 * n - 1);
        const double rel = std::abs(odd_limit_value(n, -30.0) / limit - 1.0);
        o.require(rel <= 0.01, "odd limit n=" + std::to_string(n) + " at x=-30 off by " + fmt(100.0 * rel) + "%");
    }
}

double fd_error(const GridSolution& sol)
{
    const ClosedForm exact(sol.m, sol.sigma);
    double err = 0.0;
    for (std::size_t i = 0; i < sol.x.size(); ++i) {
        if (std::abs(sol.x[i]) <= 2.0) {
            err = std::max(err, std::abs(sol.values[i] - exact(sol.grid.T(), sol.x[i])));
        }
    }
    return err;
}

void finite_differences(Outcome& o)
{
    const FDGrid grid(-8.0, 8.0, 800, 1.0, 0.25);
    for (double s : {0.0, 0.5}) {
        const std::string tag = "sigma=" + fmt(s);
        const double e1 = fd_error(fd_solve(3, s, grid));
        const double e2 = fd_error(fd_solve(3, s, grid.refined()));
        o.require(e1 <= 5e-3, tag + " max error " + fmt(e1));
        o.require(e1 / e2 >= 1.7, tag + " refinement ratio " + fmt(e1 / e2));
        o.detail << (o.pass ? tag + " error " + fmt(e1) + " ratio " + fmt(e1 / e2) + "; " : "");
        const double even = fd_solve(4, s, grid).at(0.0);
        o.require(std::abs(even - 3.0) <= 2e-3, tag + " m=4 at 0 is " + fmt(even));
    }
}

void monte_carlo(Outcome& o)
{
    constexpr double sigma = 0.5;
    constexpr std::int64_t paths = 1000000;
    constexpr int steps = 400;
    constexpr std::uint64_t seed = 7;
    const FreeBoundary fb = solve_boundary(1, sigma);
    const McEstimate feedback = mc_value(3, sigma, 1.0, 0.0, McPolicy::feedback(fb), paths, steps, seed);
    const double band = std::max(3.0 * feedback.std_err, 0.01 * fb.k);
    o.require(std::abs(feedback.mean - fb.k) <= band,
              "feedback " + fmt(feedback.mean) + " vs k " + fmt(fb.k) + " band " + fmt(band));
    std::string constants;
    for (double nu : {0.5, 0.75, 1.0}) {
        const McEstimate e = mc_value(3, sigma, 1.0, 0.0, McPolicy::constant(nu, sigma), paths, steps, seed);
        const std::string tag = "nu=" + fmt(nu);
        o.require(e.mean <= fb.k + 3.0 * e.std_err, tag + " above closed form");
        const double combined = std::sqrt(feedback.std_err * feedback.std_err + e.std_err * e.std_err);
        o.require(feedback.mean - e.mean > 3.0 * combined, tag + " not dominated");
        constants += " " + tag + ":" + fmt(e.mean);
    }
    o.detail << (o.pass ? "feedback " + fmt(feedback.mean) + " +- " + fmt(feedback.std_err) + " vs k " + fmt(fb.k) +
                              ";" + constants
                        : "");
}

void degenerate_limit(Outcome& o)
{
    for (int n = 1; n <= 5; ++n) {
        const FreeBoundary a = solve_boundary(n, 1e-3);
        const FreeBoundary b = solve_boundary(n, 0.0);
        const double rc = std::abs(a.c - b.c) / std::abs(b.c);
        const double rk = std::abs(a.k - b.k) / std::abs(b.k);
        o.require(rc <= 1e-2 && rk <= 1e-2, "n=" + std::to_string(n) + " relative gap " + fmt(std::max(rc, rk)));
    }
}

} // namespace

int main()
{
    const std::array<std::pair<const char*, std::function<void(Outcome&)>>, 9> criteria{{
        {"exact identities n=1..12", identities},
        {"free-boundary contract", boundary_contract},
        {"profile ODE residual sweep", residual_sweep},
        {"matching regularity at c", matching},
        {"monotonicity in sigma", monotonicity},
        {"tail bounds and odd limit", bounds},
        {"finite-difference cross-validation", finite_differences},
        {"Monte Carlo cross-validation", monte_carlo},
        {"degenerate limit", degenerate_limit},
    }};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& ex) {
            o.require(false, std::string("threw: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu %s: %s (%.2fs) %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
