#include "gheat/errors.hpp"
#include "gheat/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace gheat {

namespace {

constexpr std::int64_t kBlockPaths = 1024;

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64; one instance per path, started from a hash of (seed, path).
class PathEngine {
public:
    using result_type = std::uint64_t;

    PathEngine(std::uint64_t seed, std::uint64_t path) : state_(mix64(seed ^ mix64(path + 0x9e3779b97f4a7c15ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

} // namespace

McPolicy McPolicy::constant(double nu, double sigma)
{
    if (!(sigma >= 0.0 && sigma <= 1.0)) {
        throw DomainError("McPolicy: sigma must lie in [0, 1]");
    }
    if (!(nu >= sigma && nu <= 1.0)) {
        throw DomainError("McPolicy: constant control must lie in [sigma, 1]");
    }
    return McPolicy(Kind::constant, nu, sigma, 0.0);
}

McPolicy McPolicy::feedback(const FreeBoundary& fb)
{
    if (!(fb.sigma >= 0.0 && fb.sigma < 1.0) || !(fb.c < 0.0)) {
        throw DomainError("McPolicy: feedback needs a solved boundary with c < 0");
    }
    return McPolicy(Kind::feedback, 1.0, fb.sigma, fb.c);
}

McEstimate mc_value(int m, double sigma, double T, double x0, const McPolicy& policy, std::int64_t paths, int steps,
                    std::uint64_t seed, int threads)
{
    if (m < 1) {
        throw DomainError("mc_value: m must be at least 1");
    }
    if (!(T > 0.0) || !std::isfinite(T) || !std::isfinite(x0)) {
        throw DomainError("mc_value: T must be positive and x0 finite");
    }
    if (paths < 1 || steps < 1) {
        throw DomainError("mc_value: paths and steps must be at least 1");
    }
    const bool admissible = policy.kind() == McPolicy::Kind::constant ? policy.nu(0.0, 0.0, T) >= sigma
                                                                       : policy.sigma() == sigma;
    if (!admissible) {
        throw DomainError("mc_value: policy takes values outside [sigma, 1]");
    }

    const double dt = T / steps;
    const double root_dt = std::sqrt(dt);
    const std::int64_t blocks = (paths + kBlockPaths - 1) / kBlockPaths;
    std::vector<BlockSums> sums(static_cast<std::size_t>(blocks));
    std::atomic<std::int64_t> next_block{0};

    const auto worker = [&] {
        for (std::int64_t b = next_block++; b < blocks; b = next_block++) {
            BlockSums s;
            const std::int64_t end = std::min(paths, (b + 1) * kBlockPaths);
            for (std::int64_t p = b * kBlockPaths; p < end; ++p) {
                PathEngine engine(seed, static_cast<std::uint64_t>(p));
                std::normal_distribution<double> normal;
                double x = x0;
                for (int k = 0; k < steps; ++k) {
                    x += policy.nu(k * dt, x, T) * root_dt * normal(engine);
                }
                const double v = std::pow(x, m);
                s.sum += v;
                s.sum_sq += v * v;
            }
            sums[static_cast<std::size_t>(b)] = s;
        }
    };

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = static_cast<int>(std::clamp<std::int64_t>(workers, 1, blocks));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
    }

    BlockSums total;
    for (const BlockSums& s : sums) {
        total.sum += s.sum;
        total.sum_sq += s.sum_sq;
    }
    const double n = static_cast<double>(paths);
    const double mean = total.sum / n;
    const double var = paths > 1 ? std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return McEstimate{mean, std::sqrt(var / n), paths, steps, seed};
}

} // namespace gheat
