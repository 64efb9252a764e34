#pragma once
// Lifetime distributions on [0, inf) built from a named family or from a
// hazard, mean-residual-life or survival expression.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relage/exprlang.hpp"

namespace relage {

class DistributionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Exponential {
    double rate;
};
struct Weibull {
    double shape;
    double scale;
};
struct Uniform {
    double upper;  // uniform on (0, upper)
};

struct HazardSource {
    std::string text;
    Expr expr;
};
struct MrlSource {
    std::string text;
    Expr expr;
};
struct SurvivalSource {
    std::string text;
    Expr expr;
};

using Source = std::variant<Exponential, Weibull, Uniform, HazardSource, MrlSource, SurvivalSource>;

inline Source hazard_source(const std::string& text) { return HazardSource{text, parse(text)}; }
inline Source mrl_source(const std::string& text) { return MrlSource{text, parse(text)}; }
inline Source survival_source(const std::string& text) { return SurvivalSource{text, parse(text)}; }

enum class Quantity { Pdf, Survival, Hazard, Mrl };

inline const char* to_string(Quantity q) {
    switch (q) {
    case Quantity::Pdf: return "pdf";
    case Quantity::Survival: return "survival";
    case Quantity::Hazard: return "hazard";
    case Quantity::Mrl: return "mrl";
    }
    return "?";
}

// Immutable after construction. Evaluators work in the standardized
// coordinate z = (x - shift) / scale of the underlying source.
class DistributionSpec {
public:
    const Source& source() const noexcept { return source_; }
    const std::string& label() const noexcept { return label_; }
    const std::optional<double>& support_hint() const noexcept { return support_hint_; }
    double scale() const noexcept { return scale_; }
    double shift() const noexcept { return shift_; }

    // Left end of the support (the shift of an affine transform).
    double origin() const noexcept { return shift_; }

    // Right end of the support in x coordinates, if finite.
    std::optional<double> support_end() const {
        if (!base_end_) return std::nullopt;
        return shift_ + scale_ * *base_end_;
    }

    double survival(double x) const {
        require_nonnegative(x);
        if (x <= shift_) return 1.0;
        const double z = to_base(x);
        if (base_end_ && z >= *base_end_) return 0.0;
        return std::clamp(base_survival(z), 0.0, 1.0);
    }

    double cumulative_hazard(double x) const {
        require_nonnegative(x);
        if (x <= shift_) return 0.0;
        const double z = to_base(x);
        if (base_end_ && z >= *base_end_) return std::numeric_limits<double>::infinity();
        return std::max(0.0, base_cumhaz(z));
    }

    // Lambda(x1) - Lambda(x0) for origin <= x0 <= x1 inside the support,
    // integrated over the short interval only.
    double cumulative_hazard_increment(double x0, double x1) const {
        require_nonnegative(x0);
        if (x1 <= x0) return 0.0;
        x0 = std::max(x0, shift_);
        if (x1 <= x0) return 0.0;
        const double z0 = to_base(x0), z1 = to_base(x1);
        if (base_end_ && z1 >= *base_end_) return std::numeric_limits<double>::infinity();
        using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
        if (auto* h = std::get_if<HazardSource>(&source_))
            return GK::integrate([&](double t) { return h->expr(t); }, z0, z1, 8, 1e-10);
        if (auto* m = std::get_if<MrlSource>(&source_)) {
            const double inv = GK::integrate([&](double t) { return 1.0 / m->expr(t); }, z0, z1, 8, 1e-10);
            return std::log(m->expr(z1) / m->expr(z0)) + inv;
        }
        return base_cumhaz(z1) - base_cumhaz(z0);
    }

    double hazard(double x) const {
        require_nonnegative(x);
        if (x < shift_) return 0.0;
        const double z = require_inside(x);
        return base_hazard(z) / scale_;
    }

    double pdf(double x) const {
        require_nonnegative(x);
        if (x < shift_) return 0.0;
        const double z = to_base(x);
        if (base_end_ && z >= *base_end_) return 0.0;
        if (std::holds_alternative<SurvivalSource>(source_)) return survival_source_pdf(z) / scale_;
        const double h = base_hazard(z);
        if (!std::isfinite(h)) return h;
        return h * base_survival(z) / scale_;
    }

    double mrl(double x) const {
        require_nonnegative(x);
        if (x < shift_) return (shift_ - x) + scale_ * base_mrl(0.0);
        const double z = require_inside(x);
        return scale_ * base_mrl(z);
    }

    double evaluate(Quantity q, double x) const {
        switch (q) {
        case Quantity::Pdf: return pdf(x);
        case Quantity::Survival: return survival(x);
        case Quantity::Hazard: return hazard(x);
        case Quantity::Mrl: return mrl(x);
        }
        throw std::logic_error("unknown quantity");
    }

    std::string describe() const {
        std::string s = std::visit(
            [](const auto& src) -> std::string {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, Exponential>) return "exponential(rate=" + num(src.rate) + ")";
                else if constexpr (std::is_same_v<T, Weibull>)
                    return "weibull(shape=" + num(src.shape) + ", scale=" + num(src.scale) + ")";
                else if constexpr (std::is_same_v<T, Uniform>) return "uniform(0, " + num(src.upper) + ")";
                else if constexpr (std::is_same_v<T, HazardSource>) return "hazard(" + src.text + ")";
                else if constexpr (std::is_same_v<T, MrlSource>) return "mrl(" + src.text + ")";
                else return "survival(" + src.text + ")";
            },
            source_);
        if (scale_ != 1.0 || shift_ != 0.0) s = num(scale_) + "*" + s + "+" + num(shift_);
        return s;
    }

private:
    friend DistributionSpec make_distribution(Source, std::optional<double>, std::string);
    friend DistributionSpec affine(const DistributionSpec&, double, double);

    DistributionSpec(Source src, std::optional<double> hint, std::string label)
        : source_(std::move(src)), support_hint_(hint), label_(std::move(label)) {
        if (auto* u = std::get_if<Uniform>(&source_)) base_end_ = u->upper;
        else base_end_ = support_hint_;
    }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }

    static void require_nonnegative(double x) {
        if (!(x >= 0.0)) throw std::out_of_range("evaluation point must be nonnegative");
    }

    double to_base(double x) const { return (x - shift_) / scale_; }

    double require_inside(double x) const {
        const double z = to_base(x);
        if (base_end_ && z >= *base_end_) throw std::out_of_range("point outside the support");
        return z;
    }

    double base_survival(double z) const {
        if (auto* s = std::get_if<SurvivalSource>(&source_)) return s->expr(z);
        if (auto* u = std::get_if<Uniform>(&source_)) return 1.0 - z / u->upper;
        return std::exp(-base_cumhaz(z));
    }

    // Integral of f over [0, z] on panels [0, 1], [1, 2], [2, 4], ... so that
    // far tails (as probed by the MRL integral) stay resolved.
    template <class F>
    static double panel_integral(F&& f, double z) {
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        double lo = 0.0, hi = std::min(z, 1.0), sum = 0.0;
        while (true) {
            sum += GK::integrate(f, lo, hi, 12, 1e-10);
            if (hi >= z || !std::isfinite(sum)) return sum;
            lo = hi;
            hi = std::min(z, 2.0 * hi);
        }
    }

    double base_cumhaz(double z) const {
        return std::visit(
            [&](const auto& src) -> double {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, Exponential>) return src.rate * z;
                else if constexpr (std::is_same_v<T, Weibull>) return std::pow(z / src.scale, src.shape);
                else if constexpr (std::is_same_v<T, Uniform>) return -std::log1p(-z / src.upper);
                else if constexpr (std::is_same_v<T, HazardSource>) {
                    if (z == 0.0) return 0.0;
                    return panel_integral([&](double t) { return src.expr(t); }, z);
                } else if constexpr (std::is_same_v<T, MrlSource>) {
                    if (z == 0.0) return 0.0;
                    const double inv = panel_integral([&](double t) { return 1.0 / src.expr(t); }, z);
                    return std::log(src.expr(z) / src.expr(0.0)) + inv;
                } else {
                    return -std::log(src.expr(z));
                }
            },
            source_);
    }

    double base_hazard(double z) const {
        return std::visit(
            [&](const auto& src) -> double {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, Exponential>) return src.rate;
                else if constexpr (std::is_same_v<T, Weibull>) {
                    if (z == 0.0) {
                        if (src.shape < 1.0) return std::numeric_limits<double>::infinity();
                        return src.shape == 1.0 ? 1.0 / src.scale : 0.0;
                    }
                    return src.shape / src.scale * std::pow(z / src.scale, src.shape - 1.0);
                } else if constexpr (std::is_same_v<T, Uniform>) return 1.0 / (src.upper - z);
                else if constexpr (std::is_same_v<T, HazardSource>) return src.expr(z);
                else if constexpr (std::is_same_v<T, MrlSource>) {
                    return (1.0 + derivative(src.expr, z)) / src.expr(z);
                } else {
                    return survival_source_pdf(z) / src.expr(z);
                }
            },
            source_);
    }

    // Central difference with step max(1e-6, 1e-6 z); second-order one-sided
    // at the origin when the expression is undefined for negative arguments.
    static double derivative(const Expr& e, double z) {
        const double h = std::max(1e-6, 1e-6 * z);
        if (z - h >= 0.0) return (e(z + h) - e(z - h)) / (2.0 * h);
        try {
            return (e(z + h) - e(z - h)) / (2.0 * h);
        } catch (const DomainError&) {
            return (-3.0 * e(z) + 4.0 * e(z + h) - e(z + 2.0 * h)) / (2.0 * h);
        }
    }

    double survival_source_pdf(double z) const {
        const auto& src = std::get<SurvivalSource>(source_);
        return std::max(0.0, -derivative(src.expr, z));
    }

    double base_mrl(double z) const {
        if (auto* e = std::get_if<Exponential>(&source_)) return 1.0 / e->rate;
        if (auto* u = std::get_if<Uniform>(&source_)) return 0.5 * (u->upper - z);
        if (auto* m = std::get_if<MrlSource>(&source_)) return m->expr(z);
        const double lz = base_cumhaz(z);
        if (base_end_) {
            const double end = *base_end_;
            using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
            return GK::integrate(
                [&](double t) { return t >= end ? 0.0 : std::exp(-(base_cumhaz(t) - lz)); }, z, end, 15, 1e-12);
        }
        boost::math::quadrature::exp_sinh<double> integrator;
        return integrator.integrate([&](double u) {
            if (!std::isfinite(u)) return 0.0;
            const double d = base_cumhaz(z + u) - lz;
            return std::isfinite(d) ? std::exp(-d) : 0.0;
        });
    }

    Source source_;
    std::optional<double> support_hint_;
    std::optional<double> base_end_;
    std::string label_;
    double scale_ = 1.0;
    double shift_ = 0.0;
};

namespace detail {

inline void validate_source(const DistributionSpec& d) {
    const Source& src = d.source();
    if (auto* e = std::get_if<Exponential>(&src); e && !(e->rate > 0.0))
        throw DistributionError("exponential rate must be positive");
    if (auto* w = std::get_if<Weibull>(&src); w && !(w->shape > 0.0 && w->scale > 0.0))
        throw DistributionError("weibull shape and scale must be positive");
    if (auto* u = std::get_if<Uniform>(&src); u && !(u->upper > 0.0))
        throw DistributionError("uniform upper bound must be positive");
    if (d.support_hint() && !(*d.support_hint() > 0.0))
        throw DistributionError("support hint must be positive");
    const bool is_expr = std::holds_alternative<HazardSource>(src) || std::holds_alternative<MrlSource>(src) ||
                         std::holds_alternative<SurvivalSource>(src);
    if (!is_expr) return;

    // 200-point probe grid on the support (or on [0, 10] when unbounded).
    const double end = d.support_end().value_or(10.0);
    constexpr int probes = 200;
    double prev_surv = 1.0;
    bool any_positive_hazard = false;
    for (int i = 0; i < probes; ++i) {
        const double z = end * i / probes;
        if (auto* h = std::get_if<HazardSource>(&src)) {
            const double v = h->expr(z);
            if (v < 0.0) throw DistributionError("hazard expression is negative at x=" + std::to_string(z));
            any_positive_hazard = any_positive_hazard || v > 0.0;
        } else if (auto* m = std::get_if<MrlSource>(&src)) {
            const double v = m->expr(z);
            if (!(v > 0.0)) throw DistributionError("mrl expression is not positive at x=" + std::to_string(z));
            if (d.hazard(z) < 0.0)
                throw DistributionError("mrl expression implies a negative hazard at x=" + std::to_string(z));
            any_positive_hazard = true;
        } else if (auto* s = std::get_if<SurvivalSource>(&src)) {
            const double v = s->expr(z);
            if (i == 0 && std::abs(v - 1.0) > 1e-12)
                throw DistributionError("survival expression must equal 1 at x=0");
            if (!(v > 0.0) || v > 1.0 + 1e-12)
                throw DistributionError("survival expression leaves (0,1] at x=" + std::to_string(z));
            if (v > prev_surv + 1e-12)
                throw DistributionError("survival expression increases at x=" + std::to_string(z));
            prev_surv = v;
            any_positive_hazard = true;
        }
    }
    if (!any_positive_hazard) throw DistributionError("hazard expression vanishes on the probe grid");
}

}  // namespace detail

inline DistributionSpec make_distribution(Source source, std::optional<double> support_hint = std::nullopt,
                                          std::string label = {}) {
    DistributionSpec d(std::move(source), support_hint, std::move(label));
    detail::validate_source(d);
    return d;
}

// Distribution of aX + b. Nested transforms compose into a single one.
inline DistributionSpec affine(const DistributionSpec& spec, double a, double b) {
    if (!(a > 0.0)) throw DistributionError("affine scale must be positive");
    if (!(b >= 0.0)) throw DistributionError("affine shift must be nonnegative");
    DistributionSpec out = spec;
    out.scale_ = a * spec.scale_;
    out.shift_ = a * spec.shift_ + b;
    return out;
}

inline double evaluate(const DistributionSpec& spec, Quantity q, double x) { return spec.evaluate(q, x); }

}  // namespace relage
