#pragma once
// Relative-ageing orderings between two distributions at level s.
//
// Phi = Lambda_{Y,s}(X_s) has cumulative hazard H = Lambda_{X,s} o Lambda_{Y,s}^{-1}.
// X ages faster than Y in an ordering when Phi belongs to the matching
// positive ageing class. Each ordering is decided on a ratio or threshold
// form over x (the primary shape) and cross-checked on H over a u-grid.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relage/shape.hpp"
#include "relage/transform.hpp"

namespace relage {

enum class Ordering { sIFR_R, sIFRA_R, sNBU_R, sNBUFR_R, sNBAFR_R };

inline constexpr std::array<Ordering, 5> kAllOrderings = {Ordering::sIFR_R, Ordering::sIFRA_R, Ordering::sNBU_R,
                                                          Ordering::sNBUFR_R, Ordering::sNBAFR_R};

inline const char* to_string(Ordering o) {
    switch (o) {
    case Ordering::sIFR_R: return "sIFR_R";
    case Ordering::sIFRA_R: return "sIFRA_R";
    case Ordering::sNBU_R: return "sNBU_R";
    case Ordering::sNBUFR_R: return "sNBUFR_R";
    case Ordering::sNBAFR_R: return "sNBAFR_R";
    }
    return "?";
}

inline Ordering ordering_from_string(const std::string& s) {
    for (Ordering o : kAllOrderings)
        if (s == to_string(o)) return o;
    throw std::invalid_argument("unknown ordering '" + s + "'");
}

struct OrderOptions {
    double tol = 1e-8;
    std::size_t u_points = 1001;
    bool full_pairs = false;
};

struct OrderVerdict {
    Ordering ordering = Ordering::sIFR_R;
    int s = 1;
    VerdictKind kind = VerdictKind::Inconclusive;
    ShapeVerdict primary_shape;
    std::optional<ShapeVerdict> crosscheck_shape;
    double tolerance = 0.0;
    std::string note;

    bool operator==(const OrderVerdict&) const = default;
};

class GridIncompatibility : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Survival of Phi at x: Tbar_{X,s}(Lambda_{Y,s}^{-1}(x)).
inline double phi_survival(const TransformTable& tx, const TransformTable& ty, int s, double x) {
    if (!(x >= 0.0)) throw std::out_of_range("phi_survival: x must be nonnegative");
    const double y = ty.inv_cum_hazard(s, x);
    if (y > tx.x_max()) throw TableRangeError("phi_survival: point beyond the X table", ty.lambda(s, tx.x_max()));
    return std::clamp(tx.tbar(s, y), 0.0, 1.0);
}

// Cumulative hazard of Phi.
inline double phi_cum_hazard(const TransformTable& tx, const TransformTable& ty, int s, double u) {
    return tx.lambda(s, ty.inv_cum_hazard(s, u));
}

namespace detail {

struct CommonRange {
    double lo, hi;
};

inline CommonRange common_range(const TransformTable& tx, const TransformTable& ty, int s) {
    if (s < 1 || s > tx.s_max() || s > ty.s_max())
        throw std::out_of_range("level " + std::to_string(s) + " not available in both tables");
    const double lo = std::max(tx.origin(), ty.origin());
    const double hi = std::min(tx.x_max(), ty.x_max());
    if (!(hi > lo)) throw GridIncompatibility("tables have no common range beyond their origins");
    return {lo, hi};
}

// Drops points within a relative 1e-6 of their predecessor; near-coincident
// abscissae make slope differences meaningless.
inline void thin_sorted(std::vector<double>& g) {
    std::sort(g.begin(), g.end());
    std::vector<double> out;
    out.reserve(g.size());
    for (double x : g)
        if (out.empty() || x - out.back() > 1e-6 * std::abs(x)) out.push_back(x);
    if (out.back() != g.back()) out.back() = g.back();
    g = std::move(out);
}

// Union of both node sets inside [lo, hi], plus lo + x_min_positive.
inline std::vector<double> merged_grid(const TransformTable& tx, const TransformTable& ty, CommonRange r) {
    std::vector<double> g;
    for (const auto* t : {&tx, &ty})
        for (double x : t->nodes())
            if (x >= r.lo && x <= r.hi) g.push_back(x);
    g.push_back(r.lo);
    g.push_back(r.hi);
    const double first = r.lo + std::min(tx.x_min_positive(), ty.x_min_positive());
    thin_sorted(g);
    g.insert(std::upper_bound(g.begin(), g.end(), first), first);
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// Half linear on (0, top], half geometric from top * 1e-6.
inline std::vector<double> u_grid(double top, std::size_t n) {
    std::vector<double> g;
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k <= half; ++k) g.push_back(top * static_cast<double>(k) / half);
    const double a = top * 1e-6;
    for (std::size_t k = 0; k < n - half; ++k)
        g.push_back(a * std::pow(top / a, static_cast<double>(k) / (n - half)));
    thin_sorted(g);
    return g;
}

struct Curve {
    std::vector<double> xs, ys;
};

inline Curve hazard_ratio(const TransformTable& tx, const TransformTable& ty, int s, const std::vector<double>& grid,
                          bool positive_only) {
    Curve c;
    for (double x : grid) {
        if (positive_only && x <= grid.front()) continue;
        const double ry = ty.hazard(s, x), rx = tx.hazard(s, x);
        if (!(ry > 0.0) || !std::isfinite(ry) || !std::isfinite(rx)) continue;
        c.xs.push_back(x);
        c.ys.push_back(rx / ry);
    }
    return c;
}

inline Curve lambda_ratio(const TransformTable& tx, const TransformTable& ty, int s, const std::vector<double>& grid) {
    Curve c;
    for (double x : grid) {
        const double ly = ty.lambda(s, x);
        if (!(ly > 0.0)) continue;
        c.xs.push_back(x);
        c.ys.push_back(tx.lambda(s, x) / ly);
    }
    return c;
}

// H = Lambda_a o Lambda_b^{-1} on a u-grid reaching Lambda_b(hi).
struct HCurve {
    Curve c;
    double top = 0.0;
};

inline HCurve h_curve(const TransformTable& ta, const TransformTable& tb, int s, double hi, std::size_t n) {
    HCurve h;
    h.top = tb.lambda(s, hi);
    if (!(h.top > 0.0)) throw GridIncompatibility("reference cumulative hazard vanishes on the common range");
    h.c.xs = u_grid(h.top, n);
    h.c.ys.reserve(h.c.xs.size());
    for (double u : h.c.xs) h.c.ys.push_back(phi_cum_hazard(ta, tb, s, std::min(u, h.top)));
    return h;
}

inline ShapeVerdict shape_or_note(const Curve& c, Shape shape, double tol, const ShapeOptions& opt = {}) {
    if (c.xs.size() < 3) {
        ShapeVerdict v;
        v.tolerance = tol;
        v.note = "fewer than three admissible grid points";
        return v;
    }
    return check_shape(c.xs, c.ys, shape, tol, opt);
}

// Threshold for the NBUFR / NBAFR forms; nullopt when undefined.
inline std::optional<double> threshold(const TransformTable& tx, const TransformTable& ty, int s) {
    if (s >= 2) return ty.gen_mean(s - 1) / tx.gen_mean(s - 1);
    const double fy = ty.density_at_origin(), fx = tx.density_at_origin();
    if (!(fy > 0.0) || !std::isfinite(fy)) return std::nullopt;
    return fx / fy;
}

}  // namespace detail

inline OrderVerdict check_order(const TransformTable& tx, const TransformTable& ty, int s, Ordering ordering,
                                const OrderOptions& opt = {}) {
    if (!(opt.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const auto range = detail::common_range(tx, ty, s);
    const auto grid = detail::merged_grid(tx, ty, range);
    const double tol = opt.tol;

    OrderVerdict v;
    v.ordering = ordering;
    v.s = s;
    v.tolerance = tol;

    auto h = [&] { return detail::h_curve(tx, ty, s, range.hi, opt.u_points); };
    ShapeOptions exact_h;
    exact_h.full_pairs = opt.full_pairs;

    switch (ordering) {
    case Ordering::sIFR_R: {
        v.primary_shape = detail::shape_or_note(detail::hazard_ratio(tx, ty, s, grid, false), Shape::increasing(), tol);
        v.crosscheck_shape = detail::shape_or_note(h().c, Shape::convex(), tol);
        break;
    }
    case Ordering::sIFRA_R: {
        v.primary_shape = detail::shape_or_note(detail::lambda_ratio(tx, ty, s, grid), Shape::increasing(), tol);
        v.crosscheck_shape = detail::shape_or_note(h().c, Shape::star_shaped(), tol);
        break;
    }
    case Ordering::sNBU_R: {
        const auto hc = h();
        exact_h.eval = [&](double u) { return phi_cum_hazard(tx, ty, s, std::min(u, hc.top)); };
        v.primary_shape = detail::shape_or_note(hc.c, Shape::super_additive(), tol, exact_h);
        // Dual: H^{-1} = Lambda_Y o Lambda_X^{-1} is sub-additive.
        const auto inv = detail::h_curve(ty, tx, s, range.hi, opt.u_points);
        ShapeOptions exact_inv;
        exact_inv.full_pairs = opt.full_pairs;
        exact_inv.eval = [&](double u) { return phi_cum_hazard(ty, tx, s, std::min(u, inv.top)); };
        v.crosscheck_shape = detail::shape_or_note(inv.c, Shape::sub_additive(), tol, exact_inv);
        break;
    }
    case Ordering::sNBUFR_R:
    case Ordering::sNBAFR_R: {
        const auto c = detail::threshold(tx, ty, s);
        if (!c) {
            v.primary_shape.tolerance = tol;
            v.kind = VerdictKind::Inconclusive;
            v.note = "threshold f_X(0)/f_Y(0) undefined: Y has zero density at its origin";
            return v;
        }
        const bool fr = ordering == Ordering::sNBUFR_R;
        const auto curve = fr ? detail::hazard_ratio(tx, ty, s, grid, true) : detail::lambda_ratio(tx, ty, s, grid);
        v.primary_shape = detail::shape_or_note(curve, Shape::at_least(*c), tol);
        if (std::isfinite(*c)) {
            auto hc = h().c;
            if (fr) {
                // H(u) - c u nondecreasing.
                for (std::size_t k = 0; k < hc.xs.size(); ++k) hc.ys[k] -= *c * hc.xs[k];
                v.crosscheck_shape = detail::shape_or_note(hc, Shape::increasing(), tol);
            } else {
                // H(u) / u >= c.
                for (std::size_t k = 0; k < hc.xs.size(); ++k) hc.ys[k] /= hc.xs[k];
                v.crosscheck_shape = detail::shape_or_note(hc, Shape::at_least(*c), tol);
            }
        } else {
            v.note = "threshold is infinite; cross-check skipped";
        }
        break;
    }
    }

    v.kind = v.primary_shape.kind;
    if (v.crosscheck_shape && decisive(v.kind) && decisive(v.crosscheck_shape->kind) &&
        v.crosscheck_shape->kind != v.kind) {
        v.kind = VerdictKind::Inconclusive;
        v.note = "primary and cross-check characterizations disagree";
    }
    return v;
}

struct ChainResult {
    std::array<OrderVerdict, 5> verdicts;
    bool consistent = true;

    bool operator==(const ChainResult&) const = default;
};

// consistent is false when an ordering holds while a later one in
// sIFR_R => sIFRA_R => sNBU_R => sNBUFR_R => sNBAFR_R decisively fails.
inline bool chain_consistent(const std::array<OrderVerdict, 5>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].kind != VerdictKind::Holds) continue;
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[j].kind == VerdictKind::Fails) return false;
    }
    return true;
}

inline ChainResult implication_chain(const TransformTable& tx, const TransformTable& ty, int s,
                                     const OrderOptions& opt = {}) {
    ChainResult out;
    for (std::size_t i = 0; i < kAllOrderings.size(); ++i) out.verdicts[i] = check_order(tx, ty, s, kAllOrderings[i], opt);
    out.consistent = chain_consistent(out.verdicts);
    return out;
}

}  // namespace relage
