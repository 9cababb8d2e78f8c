#include "gheat/report.hpp"

#include <cmath>
#include <cstdio>

namespace gheat {

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void to_json(nlohmann::json& j, const FreeBoundary& fb)
{
    j = nlohmann::json{{"n", fb.n}, {"sigma", fb.sigma}, {"c", fb.c}, {"k", fb.k},
                       {"residual", fb.residual}, {"iterations", fb.iterations}};
    j["d_scaled"] = fb.d_scaled ? nlohmann::json(*fb.d_scaled) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const McEstimate& est)
{
    j = nlohmann::json{{"mean", est.mean}, {"stderr", est.std_err}, {"paths", est.paths}, {"steps", est.steps},
                       {"seed", est.seed}};
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        os << (i ? "," : "") << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_number(row[i]);
        }
        os << '\n';
    }
}

void write_grid_csv(std::ostream& os, const GridSolution& sol)
{
    const ClosedForm exact(sol.m, sol.sigma);
    std::vector<std::vector<double>> rows;
    rows.reserve(sol.x.size());
    for (std::size_t i = 0; i < sol.x.size(); ++i) {
        const double closed = exact(sol.grid.T(), sol.x[i]);
        rows.push_back({sol.x[i], sol.values[i], closed, sol.values[i] - closed});
    }
    write_csv(os, {"x", "u_numeric", "u_closed", "error"}, rows);
}

} // namespace gheat
