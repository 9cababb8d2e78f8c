#include "cli.hpp"

#include "gheat/errors.hpp"
#include "gheat/free_boundary.hpp"
#include "gheat/hermite_pair.hpp"
#include "gheat/oracles.hpp"
#include "gheat/report.hpp"
#include "gheat/solution.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace gheat::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Sink {
    std::string format = "json";
    std::string path;
};

void emit(const std::string& text, const Sink& sink, std::ostream& out)
{
    if (sink.path.empty()) {
        out << text;
        return;
    }
    std::filesystem::path p(sink.path);
    if (const char* dir = std::getenv("GHEAT_OUTPUT_DIR"); dir && p.is_relative()) {
        p = std::filesystem::path(dir) / p;
    }
    std::ofstream file(p);
    if (!file) {
        throw UsageError("cannot open output file " + p.string());
    }
    file << text;
}

json envelope(const std::string& command, json inputs)
{
    return json{{"schema_version", kSchemaVersion}, {"command", command}, {"inputs", std::move(inputs)}};
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

void add_sink(CLI::App* sub, Sink& sink, const std::string& default_format)
{
    sink.format = default_format;
    sub->add_option("--format", sink.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", sink.path, "write here instead of stdout (relative to $GHEAT_OUTPUT_DIR if set)");
}

std::string table(const Sink& sink, const std::string& command, const json& inputs,
                  const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    if (sink.format == "csv") {
        std::ostringstream os;
        write_csv(os, header, rows);
        return os.str();
    }
    json j = envelope(command, inputs);
    j["columns"] = header;
    j["rows"] = rows;
    return dump(j);
}

// boundary

struct BoundaryArgs {
    int n = 1;
    std::optional<double> sigma;
    std::vector<double> scan;
    double tol = kBoundaryTolerance;
    Sink sink;
};

std::string run_boundary(const BoundaryArgs& a)
{
    std::vector<double> sigmas = a.scan;
    if (a.sigma) {
        sigmas.push_back(*a.sigma);
    }
    if (sigmas.empty()) {
        throw UsageError("boundary: give --sigma or --scan");
    }
    for (double s : sigmas) {
        if (!(s >= 0.0 && s < 1.0)) {
            throw UsageError("boundary: sigma must lie in [0, 1)");
        }
    }
    const std::vector<FreeBoundary> fbs = boundary_scan(a.n, sigmas, a.tol);

    json inputs{{"n", a.n}, {"tol", a.tol}};
    inputs[a.scan.empty() ? "sigma" : "scan"] = a.scan.empty() ? json(sigmas.front()) : json(sigmas);
    if (a.sink.format == "csv") {
        std::vector<std::vector<double>> rows;
        for (const FreeBoundary& fb : fbs) {
            rows.push_back({static_cast<double>(fb.n), fb.sigma, fb.c, fb.k,
                            fb.d_scaled.value_or(std::numeric_limits<double>::quiet_NaN()), fb.residual,
                            static_cast<double>(fb.iterations)});
        }
        return table(a.sink, "boundary", inputs, {"n", "sigma", "c", "k", "d_scaled", "residual", "iterations"}, rows);
    }
    json j = envelope("boundary", inputs);
    j["results"] = json::array();
    for (const FreeBoundary& fb : fbs) {
        json r = fb;
        if (fb.n == 1) {
            const CubicCheck check = cubic_check(fb);
            r["cubic_check"] = {{"boundary", check.boundary}, {"k", check.k}};
        }
        j["results"].push_back(r);
    }
    return dump(j);
}

// eval

struct EvalArgs {
    int n = 1;
    double sigma = 0.0;
    std::vector<double> t{1.0};
    double x_min = -4.0;
    double x_max = 4.0;
    int points = 81;
    Sink sink;
};

std::string run_eval(const EvalArgs& a)
{
    if (!(a.sigma >= 0.0 && a.sigma <= 1.0)) {
        throw UsageError("eval: sigma must lie in [0, 1]");
    }
    if (!(a.x_min < a.x_max)) {
        throw UsageError("eval: need x-min < x-max");
    }
    for (double t : a.t) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw UsageError("eval: times must be nonnegative");
        }
    }
    const Profile p = Profile::build(a.n, a.sigma);
    const double odd = 2.0 * a.n + 1.0;
    std::vector<std::vector<double>> rows;
    for (double t : a.t) {
        for (int i = 0; i < a.points; ++i) {
            const double x = a.x_min + (a.x_max - a.x_min) * i / (a.points - 1);
            if (t == 0.0) {
                // Initial datum itself; there is no profile to take a residual of.
                rows.push_back({t, x, std::pow(x, odd), odd * std::pow(x, odd - 1.0),
                                odd * (odd - 1.0) * std::pow(x, odd - 2.0), 0.0});
                continue;
            }
            const double xi = x / std::sqrt(t);
            const double v = p.eval(xi, 0);
            rows.push_back({t, x, std::pow(t, a.n + 0.5) * v, std::pow(t, a.n) * p.eval(xi, 1),
                            std::pow(t, a.n - 0.5) * p.eval(xi, 2), ode_residual(p, xi) / (1.0 + std::abs(v))});
        }
    }
    json inputs{{"n", a.n}, {"sigma", a.sigma}, {"t", a.t}, {"x_min", a.x_min}, {"x_max", a.x_max},
                {"points", a.points}};
    if (p.boundary()) {
        inputs["c"] = p.c();
    }
    return table(a.sink, "eval", inputs, {"t", "x", "u", "u_x", "u_xx", "residual"}, rows);
}

// moment / finance

struct MomentArgs {
    int n = 1;
    double sigma = 0.0;
    double t = 1.0;
};

std::string run_moment(const MomentArgs& a)
{
    if (!(a.sigma >= 0.0 && a.sigma <= 1.0)) {
        throw UsageError("moment: sigma must lie in [0, 1]");
    }
    json j = envelope("moment", {{"n", a.n}, {"sigma", a.sigma}, {"t", a.t}});
    j["value"] = odd_moment(a.n, a.sigma, a.t);
    if (a.sigma < 1.0) {
        const FreeBoundary fb = solve_boundary(a.n, a.sigma);
        j["c"] = fb.c;
        j["k"] = fb.k;
    } else {
        j["k"] = 0.0;
    }
    return dump(j);
}

struct FinanceArgs {
    int m = 1;
    double sigma = 0.0;
    double mu = 0.0;
    double T = 1.0;
};

std::string run_finance(const FinanceArgs& a)
{
    if (!(a.sigma >= 0.0 && a.sigma <= 1.0)) {
        throw UsageError("finance: sigma must lie in [0, 1]");
    }
    json j = envelope("finance", {{"m", a.m}, {"sigma", a.sigma}, {"mu", a.mu}, {"T", a.T}});
    j["value"] = finance_log_moment(a.m, a.sigma, a.mu, a.T);
    return dump(j);
}

// verify

struct VerifyArgs {
    bool identities = false;
    bool bounds = false;
    bool fd = false;
    bool mc = false;
    int n = 1;
    double sigma = 0.5;
    double T = 1.0;
    int nx = 800;
    double cfl = 0.25;
    double fd_tol = 5e-3;
    std::int64_t paths = 1000000;
    int steps = 400;
    std::uint64_t seed = 7;
    int threads = 0;
};

json verify_identities(int n)
{
    json checks = json::array();
    for (int k = 1; k <= n; ++k) {
        const IdentityReport r = pair_identities(k);
        checks.push_back({{"name", "identities"}, {"n", k}, {"cross", r.cross}, {"wronskian", r.wronskian},
                          {"pass", r.ok()}});
    }
    return checks;
}

json verify_bounds(int n)
{
    json checks = json::array();
    for (int k = 1; k <= n; ++k) {
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const BoundReport r = mills_bounds(k, x);
            const bool pass = r.lower_gap >= 0.0 && r.upper_gap >= 0.0 && r.lower_gap <= r.lower_gap_bound &&
                              r.upper_gap <= r.upper_gap_bound;
            checks.push_back({{"name", "mills_sandwich"}, {"n", k}, {"x", x}, {"lower", r.lower}, {"tail", r.tail},
                              {"upper", r.upper}, {"lower_gap", r.lower_gap}, {"upper_gap", r.upper_gap},
                              {"pass", pass}});
        }
        for (double x : {-30.0, -10.0, -5.0, -2.0, -1.0}) {
            const Enclosure e = odd_limit_enclosure(k, x);
            const double v = odd_limit_value(k, x);
            checks.push_back({{"name", "odd_limit_enclosure"}, {"n", k}, {"x", x}, {"value", v}, {"lower", e.lower},
                              {"upper", e.upper}, {"limit", factorial(2 * k - 1)},
                              {"pass", e.lower <= v && v <= e.upper}});
        }
    }
    return checks;
}

json verify_fd(const VerifyArgs& a)
{
    const FDGrid grid(-8.0, 8.0, a.nx, a.T, a.cfl);
    const GridSolution sol = fd_solve(2 * a.n + 1, a.sigma, grid);
    const ClosedForm exact(2 * a.n + 1, a.sigma);
    double err = 0.0;
    for (std::size_t i = 0; i < sol.x.size(); ++i) {
        if (std::abs(sol.x[i]) <= 2.0) {
            err = std::max(err, std::abs(sol.values[i] - exact(a.T, sol.x[i])));
        }
    }
    return json::array({{{"name", "fd_max_error"}, {"m", 2 * a.n + 1}, {"sigma", a.sigma}, {"nx", a.nx},
                         {"cfl", a.cfl}, {"steps", sol.steps}, {"max_error", err}, {"tolerance", a.fd_tol},
                         {"pass", err <= a.fd_tol}}});
}

json verify_mc(const VerifyArgs& a)
{
    if (!(a.sigma < 1.0)) {
        throw UsageError("verify --mc: sigma must lie in [0, 1)");
    }
    const FreeBoundary fb = solve_boundary(a.n, a.sigma);
    const McEstimate est =
        mc_value(2 * a.n + 1, a.sigma, a.T, 0.0, McPolicy::feedback(fb), a.paths, a.steps, a.seed, a.threads);
    const double reference = fb.k * std::pow(a.T, a.n + 0.5);
    const double band = std::max(3.0 * est.std_err, 0.01 * std::abs(reference));
    return json::array({{{"name", "mc_feedback"}, {"reference", reference}, {"estimate", est}, {"band", band},
                         {"pass", std::abs(est.mean - reference) <= band}}});
}

std::pair<std::string, bool> run_verify(const VerifyArgs& a)
{
    if (!(a.identities || a.bounds || a.fd || a.mc)) {
        throw UsageError("verify: choose at least one of --identities, --bounds, --fd, --mc");
    }
    if (!(a.sigma >= 0.0 && a.sigma <= 1.0)) {
        throw UsageError("verify: sigma must lie in [0, 1]");
    }
    json inputs{{"n", a.n}, {"sigma", a.sigma}};
    json checks = json::array();
    const auto append = [&checks](const json& more) {
        for (const auto& c : more) {
            checks.push_back(c);
        }
    };
    if (a.identities) {
        append(verify_identities(a.n));
    }
    if (a.bounds) {
        append(verify_bounds(a.n));
    }
    if (a.fd) {
        inputs["T"] = a.T;
        inputs["nx"] = a.nx;
        inputs["cfl"] = a.cfl;
        inputs["fd_tol"] = a.fd_tol;
        append(verify_fd(a));
    }
    if (a.mc) {
        inputs["T"] = a.T;
        inputs["paths"] = a.paths;
        inputs["steps"] = a.steps;
        inputs["seed"] = a.seed;
        append(verify_mc(a));
    }
    const bool pass = std::all_of(checks.begin(), checks.end(), [](const json& c) { return c["pass"].get<bool>(); });
    json j = envelope("verify", inputs);
    j["checks"] = checks;
    j["pass"] = pass;
    return {dump(j), pass};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Explicit solutions of the G-heat equation for odd-power initial data"};
    app.require_subcommand(1);

    BoundaryArgs boundary;
    CLI::App* b = app.add_subcommand("boundary", "free boundary c and constant k for one or more sigma");
    b->add_option("-n", boundary.n, "order (initial datum x^{2n+1})")->required()->check(CLI::Range(1, kMaxOrder));
    auto* b_sigma = b->add_option("--sigma", boundary.sigma, "lower volatility in [0, 1)");
    auto* b_scan = b->add_option("--scan", boundary.scan, "ascending comma-separated sigma list")->delimiter(',');
    b_sigma->excludes(b_scan);
    b->add_option("--tol", boundary.tol, "matching residual tolerance")->check(CLI::PositiveNumber);
    add_sink(b, boundary.sink, "json");

    EvalArgs eval;
    CLI::App* e = app.add_subcommand("eval", "u, its x-derivatives and the profile residual on a grid");
    e->add_option("-n", eval.n, "order")->required()->check(CLI::Range(1, kMaxOrder));
    e->add_option("--sigma", eval.sigma, "lower volatility in [0, 1]");
    e->add_option("-t", eval.t, "comma-separated times")->delimiter(',');
    e->add_option("--x-min", eval.x_min);
    e->add_option("--x-max", eval.x_max);
    e->add_option("--points", eval.points)->check(CLI::Range(2, 10000000));
    add_sink(e, eval.sink, "csv");

    MomentArgs moment;
    Sink moment_sink;
    CLI::App* mo = app.add_subcommand("moment", "sublinear expectation of B_t^{2n+1}");
    mo->add_option("-n", moment.n, "order")->required()->check(CLI::Range(1, kMaxOrder));
    mo->add_option("--sigma", moment.sigma, "lower volatility in [0, 1]");
    mo->add_option("-t", moment.t, "time")->check(CLI::PositiveNumber);
    mo->add_option("-o,--output", moment_sink.path);

    FinanceArgs finance;
    Sink finance_sink;
    CLI::App* f = app.add_subcommand("finance", "worst-case m-th moment of log S_T under uncertain volatility");
    f->add_option("-m", finance.m, "power")->required()->check(CLI::Range(1, 2 * kMaxOrder + 1));
    f->add_option("--sigma", finance.sigma, "lower volatility in [0, 1]");
    f->add_option("--mu", finance.mu, "drift");
    f->add_option("-T", finance.T, "horizon")->check(CLI::PositiveNumber);
    f->add_option("-o,--output", finance_sink.path);

    VerifyArgs verify;
    Sink verify_sink;
    CLI::App* v = app.add_subcommand("verify", "cross-checks; exit 1 if any fails");
    v->add_flag("--identities", verify.identities, "exact g/h identities for orders 1..n");
    v->add_flag("--bounds", verify.bounds, "tail sandwich and gap bounds for orders 1..n");
    v->add_flag("--fd", verify.fd, "finite differences against the closed form");
    v->add_flag("--mc", verify.mc, "feedback-control Monte Carlo against k t^{n+1/2}");
    v->add_option("-n", verify.n, "order")->check(CLI::Range(1, kMaxOrder));
    v->add_option("--sigma", verify.sigma, "lower volatility");
    v->add_option("-T", verify.T, "horizon")->check(CLI::PositiveNumber);
    v->add_option("--nx", verify.nx, "interior FD nodes")->check(CLI::Range(16, 1000000));
    v->add_option("--cfl", verify.cfl, "dt/dx^2");
    v->add_option("--fd-tol", verify.fd_tol)->check(CLI::PositiveNumber);
    v->add_option("--paths", verify.paths)->check(CLI::PositiveNumber);
    v->add_option("--steps", verify.steps)->check(CLI::PositiveNumber);
    v->add_option("--seed", verify.seed);
    v->add_option("--threads", verify.threads, "0 = hardware concurrency")->check(CLI::NonNegativeNumber);
    v->add_option("-o,--output", verify_sink.path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (b->parsed()) {
            emit(run_boundary(boundary), boundary.sink, out);
        } else if (e->parsed()) {
            emit(run_eval(eval), eval.sink, out);
        } else if (mo->parsed()) {
            emit(run_moment(moment), moment_sink, out);
        } else if (f->parsed()) {
            emit(run_finance(finance), finance_sink, out);
        } else if (v->parsed()) {
            const auto [text, pass] = run_verify(verify);
            emit(text, verify_sink, out);
            return pass ? kSuccess : kVerificationFailed;
        }
    } catch (const UsageError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsageError;
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsageError;
    } catch (const RangeError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsageError;
    } catch (const IdentityViolation& ex) {
        err << "verification failed: " << ex.what() << "\n";
        return kVerificationFailed;
    } catch (const std::exception& ex) {
        err << "numerical failure: " << ex.what() << "\n";
        return kNumericalFailure;
    }
    return kSuccess;
}

} // namespace gheat::cli
