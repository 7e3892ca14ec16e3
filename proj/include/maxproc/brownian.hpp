#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "maxproc/errors.hpp"

namespace maxproc {

// Simulation layout: a two-sided path on [-horizon, horizon] with step dt,
// built from n_paths independent replicas.  Each replica is reproducible
// from (seed, path_index) alone.
struct PathConfig {
    double dt;
    double horizon;
    std::uint64_t seed = 0;
    int n_paths = 1;
};

inline void validate(const PathConfig& cfg) {
    if (!(cfg.dt > 0.0) || !(cfg.horizon > 0.0))
        throw InvalidParams("PathConfig: dt and horizon must be positive");
    if (cfg.n_paths < 1) throw InvalidParams("PathConfig: n_paths must be >= 1");
}

// Discrete two-sided Brownian path: values[i] is the state at
// t = (i - n_side) * dt, exactly 0 at t = 0, Gaussian increments of variance
// dt independently to the right and to the left of the origin.
struct BrownianPath {
    double dt = 0.0;
    std::size_t n_side = 0;             // steps per side
    std::vector<double> values;         // size 2*n_side + 1

    std::size_t zero_index() const { return n_side; }
    double horizon() const { return static_cast<double>(n_side) * dt; }
    double t_of(std::size_t i) const {
        return (static_cast<double>(i) - static_cast<double>(n_side)) * dt;
    }
};

// splitmix64 finalizer; two rounds decorrelate (seed, path_index) pairs into
// substream seeds.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t path_index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) + path_index);
}

inline BrownianPath gen_brownian(const PathConfig& cfg, std::uint64_t path_index) {
    validate(cfg);
    BrownianPath path;
    path.dt = cfg.dt;
    path.n_side = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
    path.values.assign(2 * path.n_side + 1, 0.0);

    std::mt19937_64 rng(substream_seed(cfg.seed, path_index));
    std::normal_distribution<double> gauss(0.0, std::sqrt(cfg.dt));

    const std::size_t z = path.zero_index();
    double s = 0.0;
    for (std::size_t i = 1; i <= path.n_side; ++i) {
        s += gauss(rng);
        path.values[z + i] = s;
    }
    s = 0.0;
    for (std::size_t i = 1; i <= path.n_side; ++i) {
        s += gauss(rng);
        path.values[z - i] = s;
    }
    return path;
}

}  // namespace maxproc
