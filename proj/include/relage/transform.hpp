#pragma once
// Iterated equilibrium (total-time-on-test) survival transforms.
//
// Level s of a lifetime X is the survival function
//   Tbar_{X,s}(x) = int_x^inf Tbar_{X,s-1}(t) dt / mu_{X,s-1},   Tbar_{X,0} = f_X,
// with generalized mean mu_{X,s} = int_0^inf Tbar_{X,s}. Every level is kept in
// log space as a cumulative hazard Lambda_s = -log Tbar_s, which survives the
// underflow of Tbar in the tail. The recursion used is
//   mrl_s(x)         = int_0^inf exp(-(Lambda_s(x+u) - Lambda_s(x))) du
//   Lambda_{s+1}(x)  = Lambda_s(x) + log(mu_s / mrl_s(x)),  mu_s = mrl_s(0)
//   r_{s+1}(x)       = 1 / mrl_s(x)
//   r'_{s+1}(x)      = r_{s+1}(x) (r_{s+1}(x) - r_s(x))
// so Lambda, its derivative and its curvature are known at every node and the
// interpolant between nodes is a quintic Hermite segment.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relage/distcore.hpp"
#include "relage/numerics.hpp"

namespace relage {

inline constexpr int kMaxLevel = 8;

class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TableRangeError : public std::out_of_range {
public:
    TableRangeError(const std::string& what, double limit) : std::out_of_range(what), limit_(limit) {}
    // Largest admissible argument (x_max, or the maximal cumulative hazard).
    double limit() const noexcept { return limit_; }

private:
    double limit_;
};

struct GridConfig {
    std::size_t n_points = 2001;
    double tail_epsilon = 1e-10;
    std::optional<double> x_max;           // fixed right end; disables automatic selection
    std::optional<double> x_min_positive;  // default x_max * 1e-9
    double linear_fraction = 0.25;         // share of nodes spaced linearly on [0, median]

    void validate() const {
        if (n_points < 101) throw std::invalid_argument("grid needs at least 101 points");
        if (!(tail_epsilon > 0.0 && tail_epsilon < 1e-4))
            throw std::invalid_argument("tail_epsilon must lie in (0, 1e-4)");
        if (x_max && !(*x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
        if (x_min_positive && !(*x_min_positive > 0.0))
            throw std::invalid_argument("x_min_positive must be positive");
        if (!(linear_fraction > 0.0 && linear_fraction < 1.0))
            throw std::invalid_argument("linear_fraction must lie in (0, 1)");
    }
};

enum class TableQuantity { Tbar, Lambda, Hazard, Mrl };

class TransformTable {
public:
    int s_max() const noexcept { return s_max_; }
    const DistributionSpec& spec() const noexcept { return *spec_; }
    const GridConfig& config() const noexcept { return cfg_; }

    double origin() const noexcept { return origin_; }
    double x_max() const noexcept { return origin_ + z_.back(); }
    double x_min_positive() const noexcept { return cfg_.x_min_positive.value_or(x_max() * 1e-9); }
    std::size_t size() const noexcept { return z_.size(); }

    // Absolute abscissae of the grid nodes (the first one is the origin).
    std::vector<double> nodes() const {
        std::vector<double> out(z_.size());
        for (std::size_t i = 0; i < z_.size(); ++i) out[i] = origin_ + z_[i];
        return out;
    }

    std::span<const double> lambda_nodes(int s) const { return level(s).lambda; }
    std::span<const double> hazard_nodes(int s) const { return level(s).r; }
    std::span<const double> mrl_nodes(int s) const { return level(s).mrl; }
    std::vector<double> tbar_nodes(int s) const {
        const auto& lam = level(s).lambda;
        std::vector<double> out(lam.size());
        for (std::size_t i = 0; i < lam.size(); ++i) out[i] = std::exp(-lam[i]);
        return out;
    }

    double gen_mean(int s) const {
        if (s < 0 || s > s_max_) throw std::out_of_range("level out of range: " + std::to_string(s));
        return s == 0 ? 1.0 : levels_[s].mean;
    }

    // Fraction of mu_s carried by the analytic tail beyond x_max.
    double tail_fraction(int s) const { return level(s).tail_fraction; }

    // Density at the origin, f_X(0) for an unshifted X.
    double density_at_origin() const { return levels_[1].r[0]; }

    double lambda(int s, double x) const {
        const auto& lv = level(s);
        Locator loc = locate(x);
        if (loc.before_origin) return 0.0;
        if (loc.exact) return lv.lambda[loc.i];
        return lv.lambda[loc.i] + segment(lv, loc.i).increment(loc.t);
    }

    double hazard(int s, double x) const {
        const auto& lv = level(s);
        Locator loc = locate(x);
        if (loc.before_origin) return 0.0;
        if (loc.exact) return lv.r[loc.i];
        return segment(lv, loc.i).derivative(loc.t);
    }

    double tbar(int s, double x) const { return std::exp(-lambda(s, x)); }

    // mrl_s is the reciprocal of the next level's hazard, so the identity
    // r_{s+1} mrl_s = 1 holds pointwise off the nodes as well.
    double mrl(int s, double x) const {
        const auto& lv = level(s);
        Locator loc = locate(x);
        if (loc.before_origin) return lv.mean + (origin_ - x);
        if (loc.exact) return lv.mrl[loc.i];
        return 1.0 / segment(levels_[s + 1], loc.i).derivative(loc.t);
    }

    double query(int s, TableQuantity q, double x) const {
        switch (q) {
        case TableQuantity::Tbar: return tbar(s, x);
        case TableQuantity::Lambda: return lambda(s, x);
        case TableQuantity::Hazard: return hazard(s, x);
        case TableQuantity::Mrl: return mrl(s, x);
        }
        throw std::logic_error("unknown table quantity");
    }

    double max_cum_hazard(int s) const { return level(s).lambda.back(); }

    // Smallest x with Lambda_s(x) = u; |Lambda_s(x) - u| <= 1e-10 max(1, u).
    double inv_cum_hazard(int s, double u) const {
        const auto& lv = level(s);
        if (!(u >= 0.0)) throw std::out_of_range("cumulative hazard argument must be nonnegative");
        if (u == 0.0) return 0.0;
        const double top = lv.lambda.back();
        if (u > top) throw TableRangeError("cumulative hazard beyond the grid maximum", top);
        auto it = std::lower_bound(lv.lambda.begin(), lv.lambda.end(), u);
        std::size_t j = static_cast<std::size_t>(it - lv.lambda.begin());
        if (lv.lambda[j] == u) {
            while (j > 0 && lv.lambda[j - 1] == u) --j;
            return origin_ + z_[j];
        }
        const std::size_t i = j - 1;
        const numerics::HermiteSegment seg = segment(lv, i);
        const double target = u - lv.lambda[i];
        const double t = numerics::invert_monotone([&](double tt) { return seg.increment(tt); }, target, 0.0, 1.0,
                                                   0.0, seg.df, 1e-14 * std::max(1.0, u));
        return origin_ + z_[i] + t * seg.h;
    }

private:
    friend TransformTable build_transforms(const DistributionSpec&, int, GridConfig);

    struct Level {
        std::vector<double> lambda, r, dr, mrl;
        double mean = 0.0;
        double tail_fraction = 0.0;
    };

    struct Locator {
        bool before_origin = false;
        bool exact = false;
        std::size_t i = 0;
        double t = 0.0;
    };

    const Level& level(int s) const {
        if (s < 1 || s > s_max_) throw std::out_of_range("level out of range: " + std::to_string(s));
        return levels_[s];
    }

    Locator locate(double x) const {
        if (!(x >= 0.0)) throw std::out_of_range("query point must be nonnegative");
        Locator loc;
        if (x < origin_) {
            loc.before_origin = true;
            return loc;
        }
        const double z = x - origin_;
        const double zmax = z_.back();
        if (z > zmax * (1.0 + 1e-12)) throw TableRangeError("query point beyond x_max", x_max());
        auto it = std::upper_bound(z_.begin(), z_.end(), z);
        std::size_t i = it == z_.begin() ? 0 : static_cast<std::size_t>(it - z_.begin()) - 1;
        if (i >= z_.size() - 1) {
            loc.i = z_.size() - 1;
            loc.exact = true;
            return loc;
        }
        loc.i = i;
        if (z == z_[i]) {
            loc.exact = true;
            return loc;
        }
        loc.t = (z - z_[i]) / (z_[i + 1] - z_[i]);
        return loc;
    }

    numerics::HermiteSegment segment(const Level& lv, std::size_t i) const {
        return {z_[i], z_[i + 1] - z_[i], lv.lambda[i + 1] - lv.lambda[i], lv.r[i], lv.r[i + 1], lv.dr[i], lv.dr[i + 1]};
    }

    std::shared_ptr<const DistributionSpec> spec_;
    GridConfig cfg_;
    int s_max_ = 0;
    double origin_ = 0.0;
    std::vector<double> z_;      // local abscissae, z = x - origin
    std::vector<Level> levels_;  // index 1..s_max+1; level s_max+1 has no mrl
};

namespace detail {

// Local (origin-relative) view of a distribution.
struct LocalDist {
    const DistributionSpec& spec;
    double origin;
    std::optional<double> end;  // local right end of the support

    double cumhaz(double z) const { return spec.cumulative_hazard(origin + z); }
    double hazard(double z) const { return spec.hazard(origin + z); }
    double increment(double z0, double z1) const { return spec.cumulative_hazard_increment(origin + z0, origin + z1); }
    bool expression_source() const {
        return std::holds_alternative<HazardSource>(spec.source()) || std::holds_alternative<MrlSource>(spec.source());
    }

    double hazard_slope(double z) const {
        const double h = 1e-4 * std::max(z, 1e-2) * (end ? std::min(1.0, *end) : 1.0);
        if (end && z + h >= *end) return (3 * hazard(z) - 4 * hazard(z - h) + hazard(z - 2 * h)) / (2 * h);
        if (z - h < 0.0) return (-3 * hazard(z) + 4 * hazard(z + h) - hazard(z + 2 * h)) / (2 * h);
        return (hazard(z + h) - hazard(z - h)) / (2 * h);
    }

    double median() const {
        const double target = std::log(2.0);
        double lo = 0.0, hi = end ? *end : 1.0;
        if (!end) {
            for (int k = 0; k < 400 && cumhaz(hi) < target; ++k) hi *= 2.0;
        }
        for (int k = 0; k < 200 && hi - lo > 1e-14 * hi; ++k) {
            const double mid = 0.5 * (lo + hi);
            (cumhaz(mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
};

inline std::vector<double> hybrid_grid(std::size_t n, double median, double zmax, std::optional<double> end,
                                       double linear_fraction) {
    std::vector<double> z(n);
    const double split = end ? std::min(median, 0.5 * zmax) : std::min(median, zmax);
    std::size_t n_lin = std::max<std::size_t>(2, static_cast<std::size_t>(linear_fraction * n));
    if (split >= zmax) n_lin = n;
    for (std::size_t i = 0; i < n_lin; ++i) z[i] = split * i / (n_lin - 1);
    if (n_lin == n) {
        for (std::size_t i = 0; i < n; ++i) z[i] = zmax * i / (n - 1);
        return z;
    }
    const std::size_t n_geo = n - n_lin;
    if (end) {
        // Geometric in the distance to the right end of the support.
        const double d0 = *end - split, d1 = *end - zmax;
        for (std::size_t j = 1; j <= n_geo; ++j)
            z[n_lin - 1 + j] = *end - d0 * std::pow(d1 / d0, static_cast<double>(j) / n_geo);
    } else {
        for (std::size_t j = 1; j <= n_geo; ++j)
            z[n_lin - 1 + j] = split * std::pow(zmax / split, static_cast<double>(j) / n_geo);
    }
    z.back() = zmax;
    return z;
}

}  // namespace detail

inline TransformTable build_transforms(const DistributionSpec& spec, int s_max, GridConfig cfg = {}) {
    cfg.validate();
    if (s_max < 1 || s_max > kMaxLevel)
        throw std::invalid_argument("s_max must lie in [1, " + std::to_string(kMaxLevel) + "]");

    TransformTable table;
    table.spec_ = std::make_shared<const DistributionSpec>(spec);
    table.s_max_ = s_max;
    table.origin_ = spec.origin();
    std::optional<double> end;
    if (auto e = spec.support_end()) end = *e - table.origin_;
    const detail::LocalDist dist{spec, table.origin_, end};
    const double median = dist.median();
    const double log_eps = -std::log(cfg.tail_epsilon);

    // Fill levels for a given local right end; returns the smallest
    // cumulative hazard at the right end over levels 1..s_max.
    auto fill = [&](double zmax) {
        table.z_ = detail::hybrid_grid(cfg.n_points, median, zmax, end, cfg.linear_fraction);
        const auto& z = table.z_;
        const std::size_t n = z.size();
        table.levels_.assign(s_max + 2, {});

        auto& first = table.levels_[1];
        first.lambda.resize(n);
        first.r.resize(n);
        first.dr.resize(n);
        const bool by_increments = dist.expression_source();
        for (std::size_t i = 0; i < n; ++i) {
            first.lambda[i] = (by_increments && i > 0) ? first.lambda[i - 1] + dist.increment(z[i - 1], z[i])
                                                       : dist.cumhaz(z[i]);
            first.r[i] = dist.hazard(z[i]);
            first.dr[i] = std::isfinite(first.r[i]) ? dist.hazard_slope(z[i]) : std::numeric_limits<double>::quiet_NaN();
            if (!std::isfinite(first.lambda[i]))
                throw TableRangeError("grid extends beyond the support", table.origin_ + z[i]);
            if (i > 0 && first.lambda[i] < first.lambda[i - 1] - 1e-9 * std::max(1.0, first.lambda[i]))
                throw DivergenceError("survival function is not monotone near x=" + std::to_string(table.origin_ + z[i]));
        }
        first.lambda[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i) first.lambda[i] = std::max(first.lambda[i], first.lambda[i - 1]);

        double min_end_hazard = std::numeric_limits<double>::infinity();
        for (int s = 1; s <= s_max; ++s) {
            auto& lv = table.levels_[s];
            lv.mrl.assign(n, 0.0);
            const double r_end = lv.r[n - 1];
            if (!(r_end > 0.0) || !std::isfinite(r_end))
                throw DivergenceError("level " + std::to_string(s) + " hazard vanishes at x_max");
            if (end) {
                const double d = *end - z[n - 1];
                lv.mrl[n - 1] = d / (r_end * d + 1.0);
            } else {
                const double c = std::isfinite(lv.dr[n - 1]) ? 0.5 * lv.dr[n - 1] : 0.0;
                lv.mrl[n - 1] = numerics::quadratic_tail_mean(r_end, c);
            }
            for (std::size_t k = n - 1; k-- > 0;) {
                const numerics::HermiteSegment seg{z[k], z[k + 1] - z[k], lv.lambda[k + 1] - lv.lambda[k],
                                                   lv.r[k], lv.r[k + 1], lv.dr[k], lv.dr[k + 1]};
                double part;
                if (s == 1 && (!std::isfinite(lv.r[k]) || !std::isfinite(lv.r[k + 1]))) {
                    // Singular hazard at a node: the interpolant is poor, use the exact law.
                    const double base = lv.lambda[k];
                    part = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                        [&](double t) { return std::exp(-std::max(0.0, dist.cumhaz(t) - base)); }, z[k], z[k + 1], 15,
                        1e-12);
                } else {
                    part = numerics::integrate_exp_neg(seg);
                }
                lv.mrl[k] = part + std::exp(-seg.df) * lv.mrl[k + 1];
            }
            lv.mean = lv.mrl[0];
            lv.tail_fraction = std::exp(-lv.lambda[n - 1]) * lv.mrl[n - 1] / lv.mean;
            min_end_hazard = std::min(min_end_hazard, lv.lambda[n - 1]);

            auto& next = table.levels_[s + 1];
            next.lambda.resize(n);
            next.r.resize(n);
            next.dr.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                next.lambda[i] = lv.lambda[i] + std::log(lv.mean / lv.mrl[i]);
                next.r[i] = 1.0 / lv.mrl[i];
                next.dr[i] = next.r[i] * (next.r[i] - lv.r[i]);
            }
            next.lambda[0] = 0.0;
            for (std::size_t i = 1; i < n; ++i) {
                if (next.lambda[i] < next.lambda[i - 1] - 1e-9 * std::max(1.0, next.lambda[i]))
                    throw DivergenceError("level " + std::to_string(s + 1) + " survival is not monotone");
                next.lambda[i] = std::max(next.lambda[i], next.lambda[i - 1]);
            }
        }
        return min_end_hazard;
    };

    if (cfg.x_max) {
        const double zmax = *cfg.x_max - table.origin_;
        if (!(zmax > 0.0)) throw std::invalid_argument("x_max must exceed the support origin");
        if (end && zmax >= *end) throw std::invalid_argument("x_max must lie inside the support");
        fill(zmax);
    } else if (end) {
        double gap = *end * cfg.tail_epsilon;
        for (int it = 0;; ++it) {
            if (fill(*end - gap) >= log_eps) break;
            if (it == 20) throw DivergenceError("could not reach tail_epsilon inside the support");
            gap *= 0.1;
        }
    } else {
        double zmax = std::max(median, 1e-300);
        for (int k = 0; k < 2000 && dist.cumhaz(zmax) < log_eps; ++k) zmax *= 1.25;
        for (int it = 0;; ++it) {
            if (fill(zmax) >= log_eps) break;
            if (it == 80) throw DivergenceError("tail_epsilon not reached; generalized means may diverge");
            zmax *= 1.5;
        }
    }

    for (int s = 1; s <= s_max; ++s) {
        if (table.levels_[s].tail_fraction > 0.01)
            throw DivergenceError("generalized mean of level " + std::to_string(s) +
                                  " diverges: tail correction exceeds 1% of the integral");
    }
    table.cfg_ = cfg;
    return table;
}

inline double gen_mean(const TransformTable& t, int s) { return t.gen_mean(s); }
inline double inv_cum_hazard(const TransformTable& t, int s, double u) { return t.inv_cum_hazard(s, u); }
inline double query(const TransformTable& t, int s, TableQuantity q, double x) { return t.query(s, q, x); }

}  // namespace relage
