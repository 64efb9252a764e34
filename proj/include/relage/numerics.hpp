#pragma once
// Small numerical kernels shared by the transform, shape and sampling code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace relage::numerics {

// Scaled complementary error function exp(z^2) erfc(z) for z >= 0.
inline double erfcx(double z) {
    if (z < 2.0) return std::exp(z * z) * std::erfc(z);
    // Continued fraction: sqrt(pi) erfcx(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    double tail = z;
    for (int k = 120; k >= 1; --k) tail = z + (0.5 * k) / tail;
    return 1.0 / (std::sqrt(std::numbers::pi_v<double>) * tail);
}

// Integral of exp(-(r u + c u^2)) over u in [0, inf), the mean residual life
// of a tail whose cumulative hazard is locally quadratic. Requires r > 0.
inline double quadratic_tail_mean(double r, double c) {
    const double rel = c / (r * r);
    if (std::abs(rel) < 1e-4) return (1.0 - 2.0 * rel + 12.0 * rel * rel) / r;
    if (c > 0.0) {
        const double sc = std::sqrt(c);
        return 0.5 * std::sqrt(std::numbers::pi_v<double>) / sc * erfcx(r / (2.0 * sc));
    }
    // Decreasing hazard: the local model diverges; keep the asymptotic series.
    return (1.0 - 2.0 * rel + 12.0 * rel * rel) / r;
}

// Piecewise Hermite interpolation of a nondecreasing function from values,
// first and (optionally) second derivatives at two nodes. Works on the
// increment relative to the left node so large offsets do not cost precision.
struct HermiteSegment {
    double x0, h;
    double df;            // f1 - f0
    double d0, d1;        // first derivatives
    double s0, s1;        // second derivatives (may be non-finite)

    enum class Order { Linear, Cubic, Quintic };

    Order order() const {
        if (!std::isfinite(d0) || !std::isfinite(d1)) return Order::Linear;
        if (!std::isfinite(s0) || !std::isfinite(s1)) return Order::Cubic;
        return Order::Quintic;
    }

    // Increment f(x0 + t h) - f0 for t in [0, 1].
    double increment(double t) const {
        double v;
        switch (order()) {
        case Order::Linear: v = df * t; break;
        case Order::Cubic: {
            const double t2 = t * t, t3 = t2 * t;
            v = df * (3 * t2 - 2 * t3) + h * d0 * (t3 - 2 * t2 + t) + h * d1 * (t3 - t2);
            break;
        }
        default: {
            const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
            v = df * (10 * t3 - 15 * t4 + 6 * t5) + h * d0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
                h * h * s0 * 0.5 * (t2 - 3 * t3 + 3 * t4 - t5) + h * d1 * (-4 * t3 + 7 * t4 - 3 * t5) +
                h * h * s1 * 0.5 * (t3 - 2 * t4 + t5);
        }
        }
        return std::clamp(v, std::min(0.0, df), std::max(0.0, df));
    }

    double derivative(double t) const {
        double v;
        switch (order()) {
        case Order::Linear: v = df / h; break;
        case Order::Cubic: {
            const double t2 = t * t;
            v = (df * (6 * t - 6 * t2) + h * d0 * (3 * t2 - 4 * t + 1) + h * d1 * (3 * t2 - 2 * t)) / h;
            break;
        }
        default: {
            const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
            v = (df * (30 * t2 - 60 * t3 + 30 * t4) + h * d0 * (1 - 18 * t2 + 32 * t3 - 15 * t4) +
                 h * h * s0 * 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4) +
                 h * d1 * (-12 * t2 + 28 * t3 - 15 * t4) + h * h * s1 * 0.5 * (3 * t2 - 8 * t3 + 5 * t4)) /
                h;
        }
        }
        return std::max(v, 0.0);
    }
};

// Integral over [0, h] of exp(-increment) for one Hermite segment. The segment
// is split into sub-panels on which the exponent changes by at most ~0.5, and
// integration stops once the integrand is negligible.
inline double integrate_exp_neg(const HermiteSegment& seg) {
    using Rule = boost::math::quadrature::gauss<double, 7>;
    const double rmax = std::max({std::isfinite(seg.d0) ? seg.d0 : 0.0, std::isfinite(seg.d1) ? seg.d1 : 0.0,
                                  seg.df / seg.h});
    const int panels = std::clamp(static_cast<int>(std::ceil(rmax * seg.h / 0.5)), 1, 4096);
    const double w = 1.0 / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = p * w;
        const double start = std::exp(-seg.increment(a));
        if (start < 1e-18 * total) break;
        const double part = Rule::integrate(
            [&](double t) { return std::exp(-seg.increment(t)); }, a, a + w);
        total += part;
    }
    return total * seg.h;
}

// Solve g(x) = target for a nondecreasing g on [a, b], g(a) <= target <= g(b).
// Bracketing bisection with secant steps; the bracket always shrinks.
template <class F>
double invert_monotone(F&& g, double target, double a, double b, double ga, double gb, double abs_tol) {
    if (target <= ga) return a;
    if (target >= gb) return b;
    bool last_secant_ok = true;
    double x = a;
    for (int it = 0; it < 300; ++it) {
        double cand = a + (target - ga) * (b - a) / (gb - ga);
        if (!last_secant_ok || !(cand > a && cand < b)) cand = 0.5 * (a + b);
        const double width = b - a;
        x = cand;
        const double gx = g(x);
        if (std::abs(gx - target) <= abs_tol) return x;
        if (gx < target) {
            a = x;
            ga = gx;
        } else {
            b = x;
            gb = gx;
        }
        last_secant_ok = (b - a) < 0.5 * width;
        if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b))) break;
    }
    return x;
}

// Fritsch-Carlson monotone cubic through (xs, ys); used where only sampled
// values are available.
class MonotoneCubic {
public:
    MonotoneCubic(std::span<const double> xs, std::span<const double> ys)
        : xs_(xs.begin(), xs.end()), ys_(ys.begin(), ys.end()), m_(xs.size()) {
        const std::size_t n = xs_.size();
        if (n < 2) throw std::invalid_argument("MonotoneCubic needs at least two points");
        std::vector<double> delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
        m_[0] = delta[0];
        m_[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i)
            m_[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (delta[i] == 0.0) {
                m_[i] = m_[i + 1] = 0.0;
                continue;
            }
            const double a = m_[i] / delta[i], b = m_[i + 1] / delta[i];
            const double s = a * a + b * b;
            if (s > 9.0) {
                const double tau = 3.0 / std::sqrt(s);
                m_[i] = tau * a * delta[i];
                m_[i + 1] = tau * b * delta[i];
            }
        }
    }

    double operator()(double x) const {
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
        i = std::min(i, xs_.size() - 2);
        const double h = xs_[i + 1] - xs_[i];
        const double t = (x - xs_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return ys_[i] * (2 * t3 - 3 * t2 + 1) + h * m_[i] * (t3 - 2 * t2 + t) + ys_[i + 1] * (3 * t2 - 2 * t3) +
               h * m_[i + 1] * (t3 - t2);
    }

private:
    std::vector<double> xs_, ys_, m_;
};

}  // namespace relage::numerics
