#pragma once
// Monte Carlo cross-check of Phi = Lambda_{Y,s}(X_s).
//
// Random source: xoshiro256** seeded through splitmix64. Samples are drawn in
// blocks of kBlockSize; block b uses the generator seeded with
// splitmix64(seed ^ (b * 0x9E3779B97F4A7C15)), so any partition of blocks over
// workers reproduces the same sample vector.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "relage/orders.hpp"
#include "relage/transform.hpp"

namespace relage {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        for (auto& w : s_) w = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_{};
};

inline constexpr std::size_t kBlockSize = 4096;

inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t st = seed ^ (block * 0x9E3779B97F4A7C15ULL);
    return splitmix64(st);
}

struct McConfig {
    std::size_t n = 100000;
    std::uint64_t seed = 20240601;
    int s = 1;

    void validate() const {
        if (n < 1000) throw std::invalid_argument("Monte Carlo sample count must be at least 1000");
        if (s < 1) throw std::invalid_argument("Monte Carlo level must be at least 1");
    }
};

class McRangeError : public std::runtime_error {
public:
    McRangeError(const std::string& what, std::size_t count) : std::runtime_error(what), count_(count) {}
    std::size_t count() const noexcept { return count_; }

private:
    std::size_t count_;
};

struct Samples {
    std::vector<double> xs;
    std::size_t clamped = 0;  // draws beyond the table range, placed at x_max
};

// Draws with survival Tbar_{X,s}: x = Lambda_s^{-1}(-log(1 - u)).
inline Samples sample_xs(const TransformTable& t, int s, const McConfig& cfg) {
    cfg.validate();
    if (s < 1 || s > t.s_max()) throw std::out_of_range("level out of range: " + std::to_string(s));
    Samples out;
    out.xs.resize(cfg.n);
    const double top = t.max_cum_hazard(s);
    for (std::size_t b = 0; b * kBlockSize < cfg.n; ++b) {
        Xoshiro256ss rng(block_seed(cfg.seed, b));
        const std::size_t end = std::min(cfg.n, (b + 1) * kBlockSize);
        for (std::size_t i = b * kBlockSize; i < end; ++i) {
            const double e = -std::log1p(-rng.uniform());
            if (e > top) {
                ++out.clamped;
                out.xs[i] = t.x_max();
            } else {
                out.xs[i] = t.inv_cum_hazard(s, e);
            }
        }
    }
    return out;
}

struct McResult {
    double ks = 0.0;
    std::size_t n = 0;
    std::size_t out_of_range = 0;
    std::uint64_t seed = 0;
    int s = 1;

    bool operator==(const McResult&) const = default;
};

// Kolmogorov-Smirnov distance between the empirical survival of
// Lambda_{Y,s}(X_s) and phi_survival.
inline McResult ks_distance_phi(const TransformTable& tx, const TransformTable& ty, int s, const McConfig& cfg) {
    const Samples smp = sample_xs(tx, s, cfg);
    McResult res;
    res.n = cfg.n;
    res.seed = cfg.seed;
    res.s = s;
    res.out_of_range = smp.clamped;
    const double ylim = ty.x_max();
    std::vector<double> v;
    v.reserve(smp.xs.size());
    for (double x : smp.xs) {
        if (x > ylim) {
            ++res.out_of_range;
            continue;
        }
        v.push_back(ty.lambda(s, x));
    }
    if (res.out_of_range * 1000 > cfg.n)
        throw McRangeError(std::to_string(res.out_of_range) + " of " + std::to_string(cfg.n) +
                               " samples fall outside the tabulated range",
                           res.out_of_range);
    std::sort(v.begin(), v.end());
    // Samples outside the range sit above every retained value.
    const double n = static_cast<double>(cfg.n);
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double p = phi_survival(tx, ty, s, v[i]);
        const double above_before = (n - static_cast<double>(i)) / n;    // empirical survival just left of v[i]
        const double above_after = (n - static_cast<double>(i) - 1) / n;  // at v[i]
        d = std::max({d, std::abs(above_before - p), std::abs(above_after - p)});
    }
    res.ks = d;
    return res;
}

}  // namespace relage
