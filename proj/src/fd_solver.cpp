#include "gheat/errors.hpp"
#include "gheat/gaussian_kernel.hpp"
#include "gheat/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gheat {

FDGrid::FDGrid(double x_min, double x_max, int nx, double T, double cfl)
    : x_min_(x_min), x_max_(x_max), nx_(nx), T_(T), cfl_(cfl)
{
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < 0.0 && 0.0 < x_max)) {
        throw DomainError("FDGrid: need x_min < 0 < x_max");
    }
    if (nx < 16) {
        throw DomainError("FDGrid: nx must be at least 16");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError("FDGrid: T must be positive and finite");
    }
    if (!(cfl > 0.0 && cfl <= 0.5)) {
        throw DomainError("FDGrid: cfl must lie in (0, 0.5] for a monotone scheme");
    }
}

FDGrid FDGrid::refined() const
{
    return FDGrid(x_min_, x_max_, 2 * nx_ + 1, T_, cfl_);
}

double GridSolution::at(double xq) const
{
    if (!(xq >= x.front() && xq <= x.back())) {
        throw DomainError("GridSolution::at: point outside the grid");
    }
    const int last = static_cast<int>(x.size()) - 1;
    const int cell = std::clamp(static_cast<int>(std::floor((xq - grid.x_min()) / grid.dx())), 0, last - 1);
    const int first = std::clamp(cell - 1, 0, last - 3);
    double sum = 0.0;
    for (int i = first; i < first + 4; ++i) {
        double w = 1.0;
        for (int j = first; j < first + 4; ++j) {
            if (j != i) {
                w *= (xq - x[j]) / (x[i] - x[j]);
            }
        }
        sum += w * values[i];
    }
    return sum;
}

ClosedForm::ClosedForm(int m, double sigma) : m_(m), sigma_(sigma)
{
    if (m < 1) {
        throw DomainError("ClosedForm: m must be at least 1");
    }
    if (!(sigma >= 0.0 && sigma <= 1.0)) {
        throw DomainError("ClosedForm: sigma must lie in [0, 1]");
    }
    if (m % 2 == 1 && m >= 3) {
        profile_.emplace(Profile::build((m - 1) / 2, sigma));
    }
}

double ClosedForm::operator()(double t, double x) const
{
    if (profile_) {
        return eval_solution(*profile_, t, x);
    }
    if (t == 0.0 || m_ == 1) {
        return std::pow(x, m_);
    }
    return classical_shifted_moment(m_, x, std::sqrt(t));
}

GridSolution fd_solve(int m, double sigma, const FDGrid& grid)
{
    const ClosedForm exact(m, sigma);
    const int nodes = grid.nx() + 2;
    const double dx = grid.dx();
    const double dt = grid.dt();
    const double s2 = sigma * sigma;

    GridSolution out{grid, m, sigma, 0, "pinned-exact", {}, {}};
    out.x.resize(nodes);
    out.values.resize(nodes);
    for (int i = 0; i < nodes; ++i) {
        out.x[i] = grid.node(i);
        out.values[i] = std::pow(out.x[i], m);
    }
    out.x.back() = grid.x_max();

    std::vector<double>& u = out.values;
    std::vector<double> next(u);
    const int steps = std::max(1, static_cast<int>(std::ceil(grid.T() / dt * (1.0 - 1e-12))));
    for (int k = 0; k < steps; ++k) {
        const bool last = k + 1 == steps;
        const double step = last ? grid.T() - k * dt : dt;
        const double t = last ? grid.T() : (k + 1) * dt;
        const double ratio = step / (dx * dx);
        for (int i = 1; i < nodes - 1; ++i) {
            const double d2 = u[i - 1] - 2.0 * u[i] + u[i + 1];
            next[i] = u[i] + 0.5 * ratio * (d2 > 0.0 ? d2 : s2 * d2);
        }
        next.front() = exact(t, out.x.front());
        next.back() = exact(t, out.x.back());
        u.swap(next);
        if (!std::isfinite(u[nodes / 2])) {
            throw NumericalError("fd_solve: non-finite value at step " + std::to_string(k + 1) + ", t = " +
                                 std::to_string(t));
        }
    }
    out.steps = steps;
    for (int i = 0; i < nodes; ++i) {
        if (!std::isfinite(u[i])) {
            throw NumericalError("fd_solve: non-finite value at x = " + std::to_string(out.x[i]));
        }
    }
    return out;
}

} // namespace gheat
