#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cpilink/series.hpp"

// Deterministic generators for synthetic data. Self-contained Box-Muller
// normals so frozen test values do not depend on the standard library's
// distribution internals.
namespace cpilink::sim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream for replication i of check `stream` under `root`.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t i) {
    return splitmix64(splitmix64(root ^ 0xc2b2ae3d27d4eb4fULL) + splitmix64(stream) * 0x9e3779b97f4a7c15ULL + i);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x853c49e6748fea9bULL) {}

    std::uint64_t next_u64() {
        state_ = splitmix64(state_ + 0x2545f4914f6cdd1dULL);
        return state_;
    }

    // Uniform in (0, 1].
    double next_unit() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::vector<double> random_walk(Rng& rng, int n, double start, double drift,
                                       double step_sd) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double x = start;
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = x;
        x += drift + step_sd * rng.next_normal();
    }
    return v;
}

inline std::vector<double> ar1(Rng& rng, int n, double phi, double sd) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double x = 0.0;
    for (int i = 0; i < n; ++i) {
        x = phi * x + sd * rng.next_normal();
        v[static_cast<std::size_t>(i)] = x;
    }
    return v;
}

inline std::vector<double> white_noise(Rng& rng, int n, double sd) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = sd * rng.next_normal();
    return v;
}

inline MonthlySeries walk_series(std::string id, MonthlyIndex start, int n, std::uint64_t seed,
                                 double level = 100.0, double drift = 0.2, double step_sd = 0.5) {
    Rng rng(seed);
    return MonthlySeries(std::move(id), start, random_walk(rng, n, level, drift, step_sd));
}

}  // namespace cpilink::sim
