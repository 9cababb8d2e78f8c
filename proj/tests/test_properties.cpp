#include "reference.hpp"

#include "gheat/gaussian_kernel.hpp"
#include "gheat/hermite_pair.hpp"
#include "gheat/solution.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>

using namespace gheat;

namespace {

constexpr std::array<double, 8> kSigmas{0.0, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};

// E[((x + sZ)^+)^j] and E[((x + sZ)^-)^j].
double positive_part_moment(int j, double x, double s)
{
    if (s == 0.0) {
        return x > 0.0 ? std::pow(x, j) : 0.0;
    }
    return std::pow(s, j) * one_sided_moment(j, -x / s) / kSqrt2Pi;
}

double negative_part_moment(int j, double x, double s)
{
    return positive_part_moment(j, -x, s);
}

} // namespace

TEST_SUITE("properties")
{
    TEST_CASE("second-order matching at c")
    {
        for (int n = 1; n <= 5; ++n) {
            for (double s : kSigmas) {
                if (s == 0.0) {
                    continue;
                }
                const Profile p = Profile::build(n, s);
                const double c = p.c();
                const double scale = 1.0 + std::abs(p.eval(c, 0));
                CAPTURE(n);
                CAPTURE(s);
                CHECK(std::abs(p.eval_branch(c, 0, Branch::lower) - p.eval_branch(c, 0, Branch::upper)) <=
                      1e-10 * scale);
                CHECK(std::abs(p.eval_branch(c, 1, Branch::lower) - p.eval_branch(c, 1, Branch::upper)) <=
                      1e-10 * (1.0 + std::abs(p.eval(c, 1))));
                CHECK(std::abs(p.eval_branch(c, 2, Branch::lower)) <= 1e-9);
                CHECK(std::abs(p.eval_branch(c, 2, Branch::upper)) <= 1e-9);
            }
        }
    }

    TEST_CASE("first-order matching and curvature jump for sigma zero")
    {
        for (int n = 1; n <= 5; ++n) {
            const Profile p = Profile::build(n, 0.0);
            const double c = p.c();
            CAPTURE(n);
            CHECK(ref::rel_err(p.eval_branch(c, 0, Branch::lower), p.eval_branch(c, 0, Branch::upper)) <= 1e-10);
            CHECK(ref::rel_err(p.eval_branch(c, 1, Branch::lower), p.eval_branch(c, 1, Branch::upper)) <= 1e-10);
            const double jump_size = (2.0 * n + 1.0) * (2.0 * n) * std::pow(std::abs(c), 2 * n - 1);
            const double lower = p.eval_branch(c, 2, Branch::lower);
            const double upper = p.eval_branch(c, 2, Branch::upper);
            CHECK(ref::rel_err(lower, -jump_size) <= 1e-9);
            CHECK(ref::rel_err(std::abs(upper - lower), jump_size) <= 1e-9);
        }
    }

    TEST_CASE("convex above c, concave below")
    {
        for (int n = 1; n <= 5; ++n) {
            for (double s : kSigmas) {
                const Profile p = Profile::build(n, s);
                const double c = p.c();
                // x = c itself belongs to the matching checks.
                for (int i = 1; i <= 1000; ++i) {
                    const double above = c + (10.0 - c) * i / 1000;
                    const double below = c - (10.0 + c) * i / 1000;
                    CAPTURE(n);
                    CAPTURE(s);
                    CAPTURE(above);
                    CAPTURE(below);
                    CHECK(p.eval(above, 2) >= -1e-12);
                    CHECK(p.eval(below, 2) <= 1e-12);
                }
            }
        }
    }

    TEST_CASE("sandwich between constant controls and the sub-additive split")
    {
        for (int n = 1; n <= 3; ++n) {
            for (double s : {0.0, 0.3, 0.7}) {
                const Profile p = Profile::build(n, s);
                const int j = 2 * n + 1;
                for (double t : {0.5, 1.0, 3.0}) {
                    for (double x = -4.0; x <= 4.0; x += 0.5) {
                        const double u = eval_solution(p, t, x);
                        const double slack = 1e-10 * (1.0 + std::abs(u));
                        const double lower = classical_shifted_moment(j, x, s * std::sqrt(t));
                        const double sup = constant_control_lower_bound(j, s, t, x, 41);
                        const double upper =
                            positive_part_moment(j, x, std::sqrt(t)) - negative_part_moment(j, x, s * std::sqrt(t));
                        CAPTURE(n);
                        CAPTURE(s);
                        CAPTURE(t);
                        CAPTURE(x);
                        CHECK(lower <= u + slack);
                        CHECK(sup <= u + slack);
                        CHECK(u <= upper + slack);
                    }
                }
            }
        }
    }

    TEST_CASE("solution decreases in sigma")
    {
        const std::array<double, 5> sigmas{0.0, 0.3, 0.6, 0.9, 1.0};
        for (int n = 1; n <= 3; ++n) {
            std::array<Profile, 5> profiles{Profile::build(n, sigmas[0]), Profile::build(n, sigmas[1]),
                                            Profile::build(n, sigmas[2]), Profile::build(n, sigmas[3]),
                                            Profile::build(n, sigmas[4])};
            for (int i = 0; i < 20; ++i) {
                const double t = 0.25 + 0.2 * (i % 5);
                const double x = -3.0 + 6.0 * i / 19;
                double prev = std::numeric_limits<double>::infinity();
                for (const Profile& p : profiles) {
                    const double u = eval_solution(p, t, x);
                    CAPTURE(n);
                    CAPTURE(t);
                    CAPTURE(x);
                    CAPTURE(p.sigma());
                    CHECK(u <= prev + 1e-12 * (1.0 + std::abs(u)));
                    prev = u;
                }
            }
        }
    }

    TEST_CASE("tails approach the initial monomial and the classical polynomial")
    {
        for (int n = 1; n <= 5; ++n) {
            for (double s : {0.0, 0.3, 0.9, 0.99, 1.0}) {
                const Profile p = Profile::build(n, s);
                const double right = p.eval(25.0, 0) / moment_polys(n).g(25.0);
                CAPTURE(n);
                CAPTURE(s);
                CHECK(std::abs(right - 1.0) <= 1e-12);
                const double left25 = p.eval(-25.0, 0) / std::pow(-25.0, 2 * n + 1) - 1.0;
                const double left50 = p.eval(-50.0, 0) / std::pow(-50.0, 2 * n + 1) - 1.0;
                CHECK(std::abs(left25) <= 0.1);
                if (left25 != 0.0) {
                    CHECK(std::abs(left50) < std::abs(left25));
                }
            }
        }
    }

    TEST_CASE("identities hold through order 12")
    {
        for (int n = 1; n <= 12; ++n) {
            CAPTURE(n);
            CHECK(pair_identities(n).ok());
        }
    }

    TEST_CASE("tail sandwich at every sampled point")
    {
        for (int n = 1; n <= 10; ++n) {
            for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
                const BoundReport r = mills_bounds(n, x);
                const double ulp = std::numeric_limits<double>::epsilon() * r.tail;
                CAPTURE(n);
                CAPTURE(x);
                CHECK(r.lower_gap >= 0.0);
                CHECK(r.upper_gap >= 0.0);
                CHECK(r.lower_gap <= r.lower_gap_bound);
                CHECK(r.upper_gap <= r.upper_gap_bound);
                CHECK(r.lower <= r.tail + 4.0 * ulp);
                CHECK(r.tail <= r.upper + 4.0 * ulp);
            }
        }
    }
}
