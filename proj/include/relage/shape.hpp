#pragma once
// Numerical shape predicates on sampled curves.
//
// A verdict is judged against tol * scale with scale = max(1, max|y|).
// margin is the smallest slack of the defining inequality (negative when
// violated); strictness measures how far the curve is from the boundary case
// (for "increasing", the total rise). A curve holds when no violation exceeds
// the tolerance and it is not flat to within the tolerance; a flat curve
// (the boundary, e.g. a constant ratio) is reported inconclusive.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace relage {

enum class VerdictKind { Holds, Fails, Inconclusive };

inline const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::Holds: return "holds";
    case VerdictKind::Fails: return "fails";
    case VerdictKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline VerdictKind verdict_kind_from_string(const std::string& s) {
    if (s == "holds") return VerdictKind::Holds;
    if (s == "fails") return VerdictKind::Fails;
    if (s == "inconclusive") return VerdictKind::Inconclusive;
    throw std::invalid_argument("unknown verdict kind '" + s + "'");
}

inline bool decisive(VerdictKind k) { return k != VerdictKind::Inconclusive; }

// A violating point, or a point pair for the additivity shapes.
struct Witness {
    double x = 0.0;
    std::optional<double> y;

    bool operator==(const Witness&) const = default;
};

struct ShapeVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    double margin = 0.0;
    double strictness = 0.0;
    double scale = 1.0;
    double tolerance = 0.0;
    std::optional<Witness> witness;
    std::string note;

    bool operator==(const ShapeVerdict&) const = default;
};

struct Shape {
    enum class Kind { Increasing, Decreasing, Convex, StarShaped, AntistarShaped, SuperAdditive, SubAdditive, AtLeast };
    Kind kind = Kind::Increasing;
    double c = 0.0;  // threshold for AtLeast

    static Shape increasing() { return {Kind::Increasing}; }
    static Shape decreasing() { return {Kind::Decreasing}; }
    static Shape convex() { return {Kind::Convex}; }
    static Shape star_shaped() { return {Kind::StarShaped}; }
    static Shape antistar_shaped() { return {Kind::AntistarShaped}; }
    static Shape super_additive() { return {Kind::SuperAdditive}; }
    static Shape sub_additive() { return {Kind::SubAdditive}; }
    static Shape at_least(double c) { return {Kind::AtLeast, c}; }
};

struct ShapeOptions {
    // Evaluate every admissible pair instead of the stratified subset.
    bool full_pairs = false;
    // Exact f for the additivity shapes; linear interpolation of ys otherwise.
    std::function<double(double)> eval;
};

namespace detail {

inline double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    if (i >= xs.size() - 1) return ys.back();
    const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + t * (ys[i + 1] - ys[i]);
}

struct Slack {
    double margin = std::numeric_limits<double>::infinity();
    double strictness = 0.0;
    std::optional<Witness> witness;
};

// Monotone in the direction sign (+1 increasing, -1 decreasing).
inline Slack monotone_slack(std::span<const double> xs, std::span<const double> ys, double sign) {
    Slack out;
    std::size_t worst = 0;
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
        const double d = sign * (ys[k + 1] - ys[k]);
        if (d < out.margin) {
            out.margin = d;
            worst = k;
        }
    }
    out.strictness = sign * (ys.back() - ys.front());
    if (out.margin < 0.0) out.witness = Witness{xs[worst + 1], std::nullopt};
    return out;
}

inline Slack convex_slack(std::span<const double> xs, std::span<const double> ys) {
    // Consecutive slopes must not decrease.
    const std::size_t n = xs.size();
    std::vector<double> slope(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) slope[k] = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
    Slack out;
    std::size_t worst = 0;
    for (std::size_t k = 0; k + 1 < slope.size(); ++k) {
        const double d = slope[k + 1] - slope[k];
        if (d < out.margin) {
            out.margin = d;
            worst = k;
        }
    }
    // Distance below the chord through the end points.
    const double chord = (ys.back() - ys.front()) / (xs.back() - xs.front());
    for (std::size_t k = 1; k + 1 < n; ++k)
        out.strictness = std::max(out.strictness, ys.front() + chord * (xs[k] - xs.front()) - ys[k]);
    if (out.margin < 0.0) out.witness = Witness{xs[worst + 1], std::nullopt};
    return out;
}

inline Slack additive_slack(std::span<const double> xs, std::span<const double> ys, double sign,
                            const ShapeOptions& opt) {
    const std::size_t n = xs.size();
    const double top = xs.back();
    auto f = [&](double x) { return opt.eval ? opt.eval(x) : interpolate(xs, ys, x); };
    Slack out;
    auto visit = [&](std::size_t i, std::size_t j) {
        const double d = sign * (f(xs[i] + xs[j]) - ys[i] - ys[j]);
        out.strictness = std::max(out.strictness, d);
        if (d < out.margin) {
            out.margin = d;
            out.witness = Witness{xs[i], xs[j]};
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (opt.full_pairs) {
            for (std::size_t j = i; j < n && xs[i] + xs[j] <= top; ++j) visit(i, j);
        } else {
            // j = i + 2^k - 1: every short stride plus a logarithmic spread.
            for (std::size_t step = 1;; step *= 2) {
                const std::size_t j = i + step - 1;
                if (j >= n || xs[i] + xs[j] > top) break;
                visit(i, j);
            }
        }
    }
    if (out.margin >= 0.0) out.witness.reset();
    if (!std::isfinite(out.margin)) out.margin = 0.0;  // no admissible pair
    return out;
}

}  // namespace detail

inline ShapeVerdict check_shape(std::span<const double> xs, std::span<const double> ys, Shape shape, double tol,
                                const ShapeOptions& opt = {}) {
    if (xs.size() != ys.size()) throw std::invalid_argument("check_shape: xs and ys differ in length");
    if (xs.size() < 3) throw std::invalid_argument("check_shape: need at least three points");
    if (!(tol > 0.0)) throw std::invalid_argument("check_shape: tolerance must be positive");
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (!std::isfinite(xs[k]) || !std::isfinite(ys[k]))
            throw std::invalid_argument("check_shape: non-finite grid value at index " + std::to_string(k));
        if (k > 0 && !(xs[k] > xs[k - 1])) throw std::invalid_argument("check_shape: xs not strictly increasing");
    }
    using K = Shape::Kind;
    const bool needs_positive = shape.kind == K::StarShaped || shape.kind == K::AntistarShaped ||
                                shape.kind == K::SuperAdditive || shape.kind == K::SubAdditive;
    if (needs_positive && !(xs.front() > 0.0)) throw std::invalid_argument("check_shape: xs must be positive");

    double scale = 1.0;
    for (double y : ys) scale = std::max(scale, std::abs(y));

    detail::Slack sl;
    std::vector<double> ratio;
    switch (shape.kind) {
    case K::Increasing: sl = detail::monotone_slack(xs, ys, 1.0); break;
    case K::Decreasing: sl = detail::monotone_slack(xs, ys, -1.0); break;
    case K::Convex: sl = detail::convex_slack(xs, ys); break;
    case K::StarShaped:
    case K::AntistarShaped:
        ratio.resize(xs.size());
        for (std::size_t k = 0; k < xs.size(); ++k) ratio[k] = ys[k] / xs[k];
        sl = detail::monotone_slack(xs, ratio, shape.kind == K::StarShaped ? 1.0 : -1.0);
        for (double v : ratio) scale = std::max(scale, std::abs(v));
        break;
    case K::SuperAdditive: sl = detail::additive_slack(xs, ys, 1.0, opt); break;
    case K::SubAdditive: sl = detail::additive_slack(xs, ys, -1.0, opt); break;
    case K::AtLeast: {
        const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
        sl.margin = *lo - shape.c;
        sl.strictness = *hi - shape.c;
        if (sl.margin < 0.0) sl.witness = Witness{xs[static_cast<std::size_t>(lo - ys.begin())], std::nullopt};
        break;
    }
    }

    ShapeVerdict v;
    v.margin = sl.margin;
    v.strictness = sl.strictness;
    v.scale = scale;
    v.tolerance = tol;
    v.witness = sl.witness;
    const double band = tol * scale;
    if (sl.margin < -band) v.kind = VerdictKind::Fails;
    else if (sl.margin > band || sl.strictness > band) v.kind = VerdictKind::Holds;
    else v.kind = VerdictKind::Inconclusive;
    return v;
}

}  // namespace relage
