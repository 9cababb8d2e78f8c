#pragma once

#include "gheat/free_boundary.hpp"
#include "gheat/solution.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gheat {

/// Uniform grid for the explicit scheme. Nodes x_0 = x_min … x_{nx+1} = x_max;
/// the nx interior nodes are updated, the two ends are pinned.
class FDGrid {
public:
    /// Throws DomainError unless x_min < 0 < x_max, nx ≥ 16, T > 0 and
    /// 0 < cfl ≤ 0.5.
    FDGrid(double x_min, double x_max, int nx, double T, double cfl = 0.25);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    int nx() const { return nx_; }
    double T() const { return T_; }
    double cfl() const { return cfl_; }
    double dx() const { return (x_max_ - x_min_) / (nx_ + 1); }
    double dt() const { return cfl_ * dx() * dx(); }
    double node(int i) const { return x_min_ + i * dx(); }
    /// Same box, horizon and cfl with 2nx+1 interior nodes, so dx halves.
    FDGrid refined() const;

private:
    double x_min_;
    double x_max_;
    int nx_;
    double T_;
    double cfl_;
};

struct GridSolution {
    FDGrid grid;
    int m = 0;
    double sigma = 0.0;
    int steps = 0;
    std::string boundary_mode = "pinned-exact";
    std::vector<double> x;      ///< all nx+2 nodes
    std::vector<double> values; ///< u(T, x_i)

    /// Cubic Lagrange interpolation through the four nearest nodes.
    double at(double xq) const;
};

/// Ê[(x + B_t)^m] at t ≥ 0; the trace used to pin the grid ends.
/// Builds the profile once and evaluates many (t, x).
class ClosedForm {
public:
    ClosedForm(int m, double sigma);
    double operator()(double t, double x) const;

private:
    int m_;
    double sigma_;
    std::optional<Profile> profile_; // odd m ≥ 3 only
};

/// u ← u + Δt·½((D²u)⁺ - σ²(D²u)⁻) from u(0, x) = x^m up to T, the last step
/// shortened to land on T. Throws NumericalError if a value goes non-finite.
GridSolution fd_solve(int m, double sigma, const FDGrid& grid);

/// Volatility control for the simulated state.
class McPolicy {
public:
    enum class Kind { constant, feedback };

    /// Throws DomainError unless σ ≤ ν ≤ 1.
    static McPolicy constant(double nu, double sigma);
    /// ν = 1 where X ≥ c√(T - t), σ below, with c from `fb`.
    static McPolicy feedback(const FreeBoundary& fb);

    Kind kind() const { return kind_; }
    double sigma() const { return sigma_; }
    double nu(double t, double x, double T) const
    {
        if (kind_ == Kind::constant) {
            return nu_;
        }
        return x >= c_ * std::sqrt(T - t) ? 1.0 : sigma_;
    }

private:
    McPolicy(Kind kind, double nu, double sigma, double c) : kind_(kind), nu_(nu), sigma_(sigma), c_(c) {}

    Kind kind_;
    double nu_;
    double sigma_;
    double c_;
};

struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0; ///< serialized as "stderr"
    std::int64_t paths = 0;
    int steps = 0;
    std::uint64_t seed = 0;
};

/// Euler scheme X ← X + ν(t, X)√Δ ξ from x0, returning the sample mean and
/// standard error of X_T^m. The policy must be admissible for σ. Paths draw
/// from their own streams keyed by (seed, path index), so the estimate does
/// not depend on the thread count.
McEstimate mc_value(int m, double sigma, double T, double x0, const McPolicy& policy, std::int64_t paths, int steps,
                    std::uint64_t seed, int threads = 0);

} // namespace gheat
