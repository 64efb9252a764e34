#pragma once
// Comparison configs, reports and curve export.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relage/ageing.hpp"
#include "relage/distcore.hpp"
#include "relage/montecarlo.hpp"
#include "relage/orders.hpp"
#include "relage/transform.hpp"

namespace relage {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An error raised while running a comparison, tagged with the stage.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct DistConfig {
    std::string label;
    std::string kind;                      // exponential | weibull | uniform | mrl | hazard | survival
    std::map<std::string, double> params;  // family parameters
    std::string expression;                // expression sources
    std::optional<double> support;
    double a = 1.0, b = 0.0;  // affine map a X + b

    bool operator==(const DistConfig&) const = default;
};

struct ComparisonConfig {
    DistConfig x, y;
    int s_max = 2;
    GridConfig grid;
    double tolerance = 1e-8;
    std::vector<Ordering> orderings{kAllOrderings.begin(), kAllOrderings.end()};
    bool full_pairs = false;
    bool mc_enabled = false;
    McConfig mc;
    std::string output_dir;

    bool operator==(const ComparisonConfig& o) const {
        auto g = [](const GridConfig& c) {
            return std::tie(c.n_points, c.tail_epsilon, c.x_max, c.x_min_positive, c.linear_fraction);
        };
        return x == o.x && y == o.y && s_max == o.s_max && g(grid) == g(o.grid) && tolerance == o.tolerance &&
               orderings == o.orderings && full_pairs == o.full_pairs && mc_enabled == o.mc_enabled &&
               mc.n == o.mc.n && mc.seed == o.mc.seed && output_dir == o.output_dir;
    }
};

namespace detail {

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

inline double get_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + " needs '" + key + "'");
    if (!j.at(key).is_number()) throw ConfigError(where + "." + key + " must be a number");
    return j.at(key).get<double>();
}

// Numbers that may be non-finite are written as strings.
inline json num_to_json(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline double num_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("not a number: " + s);
}

inline DistConfig dist_from_json(const json& j, const std::string& where) {
    reject_unknown(j, {"label", "family", "params", "mrl", "hazard", "survival", "support", "affine"}, where);
    DistConfig d;
    d.label = j.value("label", where == "x" ? std::string("X") : std::string("Y"));
    int sources = 0;
    for (const char* k : {"mrl", "hazard", "survival"}) {
        if (!j.contains(k)) continue;
        ++sources;
        if (!j.at(k).is_string()) throw ConfigError(where + "." + k + " must be a string");
        d.kind = k;
        d.expression = j.at(k).get<std::string>();
    }
    if (j.contains("family")) {
        ++sources;
        d.kind = j.at("family").get<std::string>();
        const json params = j.value("params", json::object());
        if (d.kind == "exponential") {
            reject_unknown(params, {"rate"}, where + ".params");
            d.params["rate"] = get_number(params, "rate", where + ".params");
        } else if (d.kind == "weibull") {
            reject_unknown(params, {"shape", "scale"}, where + ".params");
            d.params["shape"] = get_number(params, "shape", where + ".params");
            d.params["scale"] = params.contains("scale") ? get_number(params, "scale", where + ".params") : 1.0;
        } else if (d.kind == "uniform") {
            reject_unknown(params, {"upper"}, where + ".params");
            d.params["upper"] = params.contains("upper") ? get_number(params, "upper", where + ".params") : 1.0;
        } else {
            throw ConfigError(where + ".family '" + d.kind + "' is not one of exponential, weibull, uniform");
        }
    } else if (j.contains("params")) {
        throw ConfigError(where + ".params given without a family");
    }
    if (sources != 1) throw ConfigError(where + " needs exactly one of family, mrl, hazard, survival");
    if (j.contains("support")) d.support = get_number(j, "support", where);
    if (j.contains("affine")) {
        const json& af = j.at("affine");
        reject_unknown(af, {"a", "b"}, where + ".affine");
        d.a = af.contains("a") ? get_number(af, "a", where + ".affine") : 1.0;
        d.b = af.contains("b") ? get_number(af, "b", where + ".affine") : 0.0;
        if (!(d.a > 0.0)) throw ConfigError(where + ".affine.a must be positive");
        if (!(d.b >= 0.0)) throw ConfigError(where + ".affine.b must be nonnegative");
    }
    return d;
}

inline json dist_to_json(const DistConfig& d) {
    json j;
    j["label"] = d.label;
    if (d.kind == "mrl" || d.kind == "hazard" || d.kind == "survival") {
        j[d.kind] = d.expression;
    } else {
        j["family"] = d.kind;
        j["params"] = d.params;
    }
    if (d.support) j["support"] = *d.support;
    if (d.a != 1.0 || d.b != 0.0) j["affine"] = {{"a", d.a}, {"b", d.b}};
    return j;
}

}  // namespace detail

inline DistributionSpec build_spec(const DistConfig& d) {
    Source src = [&]() -> Source {
        if (d.kind == "exponential") return Exponential{d.params.at("rate")};
        if (d.kind == "weibull") return Weibull{d.params.at("shape"), d.params.at("scale")};
        if (d.kind == "uniform") return Uniform{d.params.at("upper")};
        if (d.kind == "mrl") return mrl_source(d.expression);
        if (d.kind == "hazard") return hazard_source(d.expression);
        if (d.kind == "survival") return survival_source(d.expression);
        throw ConfigError("unknown distribution kind '" + d.kind + "'");
    }();
    DistributionSpec spec = make_distribution(std::move(src), d.support, d.label);
    if (d.a != 1.0 || d.b != 0.0) spec = affine(spec, d.a, d.b);
    return spec;
}

inline ComparisonConfig config_from_json(const json& j) {
    detail::reject_unknown(j, {"x", "y", "s_max", "grid", "tolerance", "orderings", "full_pairs", "monte_carlo",
                               "output_dir"},
                           "config");
    ComparisonConfig c;
    if (!j.contains("x") || !j.contains("y")) throw ConfigError("config needs both 'x' and 'y'");
    c.x = detail::dist_from_json(j.at("x"), "x");
    c.y = detail::dist_from_json(j.at("y"), "y");
    if (j.contains("s_max")) {
        if (!j.at("s_max").is_number_integer()) throw ConfigError("s_max must be an integer");
        c.s_max = j.at("s_max").get<int>();
    }
    if (c.s_max < 1 || c.s_max > kMaxLevel)
        throw ConfigError("s_max must lie in [1, " + std::to_string(kMaxLevel) + "]");
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        detail::reject_unknown(g, {"n_points", "tail_epsilon", "x_max", "x_min_positive", "linear_fraction"}, "grid");
        if (g.contains("n_points")) {
            if (!g.at("n_points").is_number_unsigned()) throw ConfigError("grid.n_points must be a positive integer");
            c.grid.n_points = g.at("n_points").get<std::size_t>();
        }
        if (g.contains("tail_epsilon")) c.grid.tail_epsilon = detail::get_number(g, "tail_epsilon", "grid");
        if (g.contains("x_max")) c.grid.x_max = detail::get_number(g, "x_max", "grid");
        if (g.contains("x_min_positive")) c.grid.x_min_positive = detail::get_number(g, "x_min_positive", "grid");
        if (g.contains("linear_fraction")) c.grid.linear_fraction = detail::get_number(g, "linear_fraction", "grid");
    }
    try {
        c.grid.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    if (j.contains("tolerance")) c.tolerance = detail::get_number(j, "tolerance", "config");
    if (!(c.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    if (j.contains("orderings")) {
        if (!j.at("orderings").is_array()) throw ConfigError("orderings must be a list");
        c.orderings.clear();
        for (const auto& o : j.at("orderings")) {
            try {
                c.orderings.push_back(ordering_from_string(o.get<std::string>()));
            } catch (const std::exception& e) {
                throw ConfigError(std::string("orderings: ") + e.what());
            }
        }
    }
    if (j.contains("full_pairs")) c.full_pairs = j.at("full_pairs").get<bool>();
    if (j.contains("monte_carlo")) {
        const json& m = j.at("monte_carlo");
        detail::reject_unknown(m, {"enabled", "n", "seed"}, "monte_carlo");
        c.mc_enabled = m.value("enabled", true);
        if (m.contains("n")) c.mc.n = m.at("n").get<std::size_t>();
        if (m.contains("seed")) c.mc.seed = m.at("seed").get<std::uint64_t>();
        if (c.mc.n < 1000) throw ConfigError("monte_carlo.n must be at least 1000");
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    return c;
}

inline ComparisonConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
    }
}

inline json config_to_json(const ComparisonConfig& c) {
    json j;
    j["x"] = detail::dist_to_json(c.x);
    j["y"] = detail::dist_to_json(c.y);
    j["s_max"] = c.s_max;
    json g;
    g["n_points"] = c.grid.n_points;
    g["tail_epsilon"] = c.grid.tail_epsilon;
    if (c.grid.x_max) g["x_max"] = *c.grid.x_max;
    if (c.grid.x_min_positive) g["x_min_positive"] = *c.grid.x_min_positive;
    g["linear_fraction"] = c.grid.linear_fraction;
    j["grid"] = g;
    j["tolerance"] = c.tolerance;
    j["orderings"] = json::array();
    for (Ordering o : c.orderings) j["orderings"].push_back(to_string(o));
    j["full_pairs"] = c.full_pairs;
    j["monte_carlo"] = {{"enabled", c.mc_enabled}, {"n", c.mc.n}, {"seed", c.mc.seed}};
    if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
    return j;
}

struct TableSummary {
    std::string label;
    std::string description;
    double origin = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;
    std::vector<double> gen_means;       // levels 1..s_max
    std::vector<double> tail_fractions;  // levels 1..s_max

    bool operator==(const TableSummary&) const = default;
};

struct DirectionResult {
    std::string direction;  // "X_vs_Y" or "Y_vs_X"
    int s = 1;
    std::vector<OrderVerdict> verdicts;
    bool chain_consistent = true;

    bool operator==(const DirectionResult&) const = default;
};

struct ComparisonReport {
    int schema_version = kSchemaVersion;
    ComparisonConfig config;
    TableSummary x, y;
    std::vector<DirectionResult> results;
    AgeingReport ageing_x, ageing_y;
    std::vector<McResult> monte_carlo;
    std::vector<std::string> conclusions;

    bool operator==(const ComparisonReport&) const = default;

    bool any_inconclusive() const {
        for (const auto& r : results)
            for (const auto& v : r.verdicts)
                if (v.kind == VerdictKind::Inconclusive) return true;
        return false;
    }
};

struct ComparisonRun {
    ComparisonReport report;
    TransformTable tx, ty;
};

namespace detail {

inline TableSummary summarize(const TransformTable& t) {
    TableSummary s;
    s.label = t.spec().label();
    s.description = t.spec().describe();
    s.origin = t.origin();
    s.x_max = t.x_max();
    s.n_points = t.size();
    for (int k = 1; k <= t.s_max(); ++k) {
        s.gen_means.push_back(t.gen_mean(k));
        s.tail_fractions.push_back(t.tail_fraction(k));
    }
    return s;
}

template <class F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

// The strongest ordering (earliest in the chain) that holds.
inline std::optional<Ordering> strongest_holding(const DirectionResult& r) {
    for (const auto& v : r.verdicts)
        if (v.kind == VerdictKind::Holds) return v.ordering;
    return std::nullopt;
}

}  // namespace detail

inline ComparisonRun execute(const ComparisonConfig& cfg) {
    auto spec_x = detail::stage("build distribution x", [&] { return build_spec(cfg.x); });
    auto spec_y = detail::stage("build distribution y", [&] { return build_spec(cfg.y); });
    auto tx = detail::stage("transform x", [&] { return build_transforms(spec_x, cfg.s_max, cfg.grid); });
    auto ty = detail::stage("transform y", [&] { return build_transforms(spec_y, cfg.s_max, cfg.grid); });

    ComparisonRun run{ComparisonReport{}, std::move(tx), std::move(ty)};
    auto& rep = run.report;
    rep.config = cfg;
    rep.x = detail::summarize(run.tx);
    rep.y = detail::summarize(run.ty);

    OrderOptions opt;
    opt.tol = cfg.tolerance;
    opt.full_pairs = cfg.full_pairs;
    detail::stage("orders", [&] {
        for (int s = 1; s <= cfg.s_max; ++s) {
            for (int dir = 0; dir < 2; ++dir) {
                const auto& a = dir == 0 ? run.tx : run.ty;
                const auto& b = dir == 0 ? run.ty : run.tx;
                DirectionResult r;
                r.direction = dir == 0 ? "X_vs_Y" : "Y_vs_X";
                r.s = s;
                for (Ordering o : cfg.orderings) r.verdicts.push_back(check_order(a, b, s, o, opt));
                // The chain flag only constrains orderings that were requested.
                for (std::size_t i = 0; i < r.verdicts.size(); ++i)
                    for (std::size_t j = 0; j < r.verdicts.size(); ++j)
                        if (r.verdicts[i].kind == VerdictKind::Holds && r.verdicts[j].kind == VerdictKind::Fails &&
                            static_cast<int>(r.verdicts[i].ordering) < static_cast<int>(r.verdicts[j].ordering))
                            r.chain_consistent = false;
                rep.results.push_back(std::move(r));
            }
        }
        return 0;
    });
    rep.ageing_x = detail::stage("ageing x", [&] { return ageing_report(run.tx, cfg.s_max, cfg.tolerance); });
    rep.ageing_y = detail::stage("ageing y", [&] { return ageing_report(run.ty, cfg.s_max, cfg.tolerance); });

    if (cfg.mc_enabled) {
        detail::stage("monte carlo", [&] {
            for (int s = 1; s <= cfg.s_max; ++s) {
                McConfig mc = cfg.mc;
                mc.s = s;
                rep.monte_carlo.push_back(ks_distance_phi(run.tx, run.ty, s, mc));
            }
            return 0;
        });
    }

    for (int s = 1; s <= cfg.s_max; ++s) {
        bool any = false;
        for (const auto& r : rep.results) {
            if (r.s != s) continue;
            if (auto o = detail::strongest_holding(r)) {
                const auto& who = r.direction == "X_vs_Y" ? cfg.x.label : cfg.y.label;
                rep.conclusions.push_back(who + " ages faster at level " + std::to_string(s) + " (" + to_string(*o) +
                                          ")");
                any = true;
            }
        }
        if (!any) rep.conclusions.push_back("no ordering holds in either direction at level " + std::to_string(s));
    }
    return run;
}

inline ComparisonReport run_comparison(const ComparisonConfig& cfg) { return execute(cfg).report; }

// ---- report JSON ----

namespace detail {

inline json shape_to_json(const ShapeVerdict& v) {
    json j;
    j["kind"] = to_string(v.kind);
    j["margin"] = num_to_json(v.margin);
    j["strictness"] = num_to_json(v.strictness);
    j["scale"] = num_to_json(v.scale);
    j["tolerance"] = v.tolerance;
    if (v.witness) {
        j["witness"] = {{"x", num_to_json(v.witness->x)}};
        if (v.witness->y) j["witness"]["y"] = num_to_json(*v.witness->y);
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline ShapeVerdict shape_from_json(const json& j) {
    ShapeVerdict v;
    v.kind = verdict_kind_from_string(j.at("kind").get<std::string>());
    v.margin = num_from_json(j.at("margin"));
    v.strictness = num_from_json(j.at("strictness"));
    v.scale = num_from_json(j.at("scale"));
    v.tolerance = j.at("tolerance").get<double>();
    if (j.contains("witness")) {
        Witness w;
        w.x = num_from_json(j.at("witness").at("x"));
        if (j.at("witness").contains("y")) w.y = num_from_json(j.at("witness").at("y"));
        v.witness = w;
    }
    v.note = j.value("note", std::string());
    return v;
}

inline json order_to_json(const OrderVerdict& v) {
    json j;
    j["ordering"] = to_string(v.ordering);
    j["s"] = v.s;
    j["kind"] = to_string(v.kind);
    j["tolerance"] = v.tolerance;
    j["primary"] = shape_to_json(v.primary_shape);
    if (v.crosscheck_shape) j["crosscheck"] = shape_to_json(*v.crosscheck_shape);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline OrderVerdict order_from_json(const json& j) {
    OrderVerdict v;
    v.ordering = ordering_from_string(j.at("ordering").get<std::string>());
    v.s = j.at("s").get<int>();
    v.kind = verdict_kind_from_string(j.at("kind").get<std::string>());
    v.tolerance = j.at("tolerance").get<double>();
    v.primary_shape = shape_from_json(j.at("primary"));
    if (j.contains("crosscheck")) v.crosscheck_shape = shape_from_json(j.at("crosscheck"));
    v.note = j.value("note", std::string());
    return v;
}

inline json summary_to_json(const TableSummary& s) {
    json j{{"label", s.label}, {"description", s.description}, {"origin", s.origin},
           {"x_max", s.x_max}, {"n_points", s.n_points}};
    j["gen_means"] = json::array();
    j["tail_fractions"] = json::array();
    for (double v : s.gen_means) j["gen_means"].push_back(num_to_json(v));
    for (double v : s.tail_fractions) j["tail_fractions"].push_back(num_to_json(v));
    return j;
}

inline TableSummary summary_from_json(const json& j) {
    TableSummary s;
    s.label = j.at("label").get<std::string>();
    s.description = j.at("description").get<std::string>();
    s.origin = j.at("origin").get<double>();
    s.x_max = j.at("x_max").get<double>();
    s.n_points = j.at("n_points").get<std::size_t>();
    for (const auto& v : j.at("gen_means")) s.gen_means.push_back(num_from_json(v));
    for (const auto& v : j.at("tail_fractions")) s.tail_fractions.push_back(num_from_json(v));
    return s;
}

inline json ageing_to_json(const AgeingReport& a) {
    json j;
    j["label"] = a.label;
    j["levels"] = json::array();
    for (const auto& lv : a.levels) {
        json l;
        l["s"] = lv.s;
        for (std::size_t c = 0; c < kAllClasses.size(); ++c) {
            json e = shape_to_json(lv.verdicts[c]);
            if (lv.classical[c]) e["classical_name"] = *lv.classical[c];
            l["classes"][to_string(kAllClasses[c])] = e;
        }
        j["levels"].push_back(l);
    }
    return j;
}

inline AgeingReport ageing_from_json(const json& j) {
    AgeingReport a;
    a.label = j.at("label").get<std::string>();
    for (const auto& l : j.at("levels")) {
        AgeingReport::Level lv;
        lv.s = l.at("s").get<int>();
        for (std::size_t c = 0; c < kAllClasses.size(); ++c) {
            const json& e = l.at("classes").at(to_string(kAllClasses[c]));
            lv.verdicts[c] = shape_from_json(e);
            if (e.contains("classical_name")) lv.classical[c] = e.at("classical_name").get<std::string>();
        }
        a.levels.push_back(std::move(lv));
    }
    return a;
}

}  // namespace detail

inline json report_to_json(const ComparisonReport& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["config"] = config_to_json(r.config);
    j["tables"] = {{"x", detail::summary_to_json(r.x)}, {"y", detail::summary_to_json(r.y)}};
    j["results"] = json::array();
    for (const auto& d : r.results) {
        json e{{"direction", d.direction}, {"s", d.s}, {"chain_consistent", d.chain_consistent}};
        e["verdicts"] = json::array();
        for (const auto& v : d.verdicts) e["verdicts"].push_back(detail::order_to_json(v));
        j["results"].push_back(e);
    }
    j["ageing"] = {{"x", detail::ageing_to_json(r.ageing_x)}, {"y", detail::ageing_to_json(r.ageing_y)}};
    j["monte_carlo"] = json::array();
    for (const auto& m : r.monte_carlo)
        j["monte_carlo"].push_back(
            {{"s", m.s}, {"n", m.n}, {"seed", m.seed}, {"ks", m.ks}, {"out_of_range", m.out_of_range}});
    j["conclusions"] = r.conclusions;
    return j;
}

inline ComparisonReport report_from_json(const json& j) {
    ComparisonReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
        throw std::invalid_argument("unsupported report schema_version " + std::to_string(r.schema_version));
    r.config = config_from_json(j.at("config"));
    r.x = detail::summary_from_json(j.at("tables").at("x"));
    r.y = detail::summary_from_json(j.at("tables").at("y"));
    for (const auto& e : j.at("results")) {
        DirectionResult d;
        d.direction = e.at("direction").get<std::string>();
        d.s = e.at("s").get<int>();
        d.chain_consistent = e.at("chain_consistent").get<bool>();
        for (const auto& v : e.at("verdicts")) d.verdicts.push_back(detail::order_from_json(v));
        r.results.push_back(std::move(d));
    }
    r.ageing_x = detail::ageing_from_json(j.at("ageing").at("x"));
    r.ageing_y = detail::ageing_from_json(j.at("ageing").at("y"));
    for (const auto& m : j.at("monte_carlo")) {
        McResult res;
        res.s = m.at("s").get<int>();
        res.n = m.at("n").get<std::size_t>();
        res.seed = m.at("seed").get<std::uint64_t>();
        res.ks = m.at("ks").get<double>();
        res.out_of_range = m.at("out_of_range").get<std::size_t>();
        r.monte_carlo.push_back(res);
    }
    r.conclusions = j.at("conclusions").get<std::vector<std::string>>();
    return r;
}

// ---- curves ----

namespace detail {

inline void write_csv(const std::filesystem::path& path, const std::vector<double>& xs, const std::vector<double>& ys) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path.string());
    std::fputs("x,value\n", f);
    for (std::size_t i = 0; i < xs.size(); ++i) std::fprintf(f, "%.17g,%.17g\n", xs[i], ys[i]);
    if (std::fclose(f) != 0) throw std::runtime_error("cannot write " + path.string());
}

inline void write_table_curves(const TransformTable& t, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto xs = t.nodes();
    for (int s = 1; s <= t.s_max(); ++s) {
        const auto lam = t.lambda_nodes(s), r = t.hazard_nodes(s), m = t.mrl_nodes(s);
        const std::string tag = "_s" + std::to_string(s) + ".csv";
        write_csv(dir / ("tbar" + tag), xs, t.tbar_nodes(s));
        write_csv(dir / ("lambda" + tag), xs, {lam.begin(), lam.end()});
        // Non-finite hazards (e.g. at a singular origin) are left out.
        std::vector<double> rx, ry;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (std::isfinite(r[i])) {
                rx.push_back(xs[i]);
                ry.push_back(r[i]);
            }
        write_csv(dir / ("r" + tag), rx, ry);
        write_csv(dir / ("mrl" + tag), xs, {m.begin(), m.end()});
    }
}

}  // namespace detail

// Writes x/ and y/ curve families and, when orderings were requested, the
// ratio curves r_X/r_Y, Lambda_X/Lambda_Y and H = Lambda_X o Lambda_Y^{-1}.
inline std::vector<std::filesystem::path> emit_curves(const ComparisonRun& run, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());
    detail::write_table_curves(run.tx, out_dir / "x");
    detail::write_table_curves(run.ty, out_dir / "y");
    std::vector<fs::path> written;
    for (const char* sub : {"x", "y"})
        for (const auto& e : fs::directory_iterator(out_dir / sub)) written.push_back(e.path());
    if (!run.report.config.orderings.empty()) {
        const auto& cfg = run.report.config;
        for (int s = 1; s <= cfg.s_max; ++s) {
            const auto range = detail::common_range(run.tx, run.ty, s);
            const auto grid = detail::merged_grid(run.tx, run.ty, range);
            const auto rr = detail::hazard_ratio(run.tx, run.ty, s, grid, false);
            const auto lr = detail::lambda_ratio(run.tx, run.ty, s, grid);
            const auto h = detail::h_curve(run.tx, run.ty, s, range.hi, 1001);
            const std::string tag = "_s" + std::to_string(s) + ".csv";
            for (auto [name, c] : {std::pair{"ratio_r", &rr}, std::pair{"ratio_lambda", &lr}, std::pair{"h", &h.c}}) {
                const fs::path p = out_dir / (std::string(name) + tag);
                detail::write_csv(p, c->xs, c->ys);
                written.push_back(p);
            }
        }
    }
    std::sort(written.begin(), written.end());
    return written;
}

}  // namespace relage
