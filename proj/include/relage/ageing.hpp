#pragma once
// s-level ageing classes of a single distribution.
//
// Shapes are judged in the local coordinate z = x - origin, so a shifted
// distribution is classified like its unshifted base.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relage/shape.hpp"
#include "relage/transform.hpp"

namespace relage {

enum class AgeingClass { IFR, IFRA, NBU, NBUFR, NBAFR };

inline constexpr std::array<AgeingClass, 5> kAllClasses = {AgeingClass::IFR, AgeingClass::IFRA, AgeingClass::NBU,
                                                           AgeingClass::NBUFR, AgeingClass::NBAFR};

inline const char* to_string(AgeingClass c) {
    switch (c) {
    case AgeingClass::IFR: return "IFR";
    case AgeingClass::IFRA: return "IFRA";
    case AgeingClass::NBU: return "NBU";
    case AgeingClass::NBUFR: return "NBUFR";
    case AgeingClass::NBAFR: return "NBAFR";
    }
    return "?";
}

inline AgeingClass ageing_class_from_string(const std::string& s) {
    for (AgeingClass c : kAllClasses)
        if (s == to_string(c)) return c;
    throw std::invalid_argument("unknown ageing class '" + s + "'");
}

inline std::optional<std::string> classical_name(int s, AgeingClass c) {
    struct Entry {
        int s;
        AgeingClass c;
        const char* name;
    };
    static constexpr Entry table[] = {
        {1, AgeingClass::IFR, "IFR"},     {2, AgeingClass::IFR, "DMRL"},     {3, AgeingClass::IFR, "DVRL"},
        {1, AgeingClass::IFRA, "IFRA"},   {2, AgeingClass::IFRA, "DMRLHA"},  {1, AgeingClass::NBU, "NBU"},
        {1, AgeingClass::NBUFR, "NBUFR"}, {2, AgeingClass::NBUFR, "NBUE"},   {3, AgeingClass::NBUFR, "NDVRL"},
        {1, AgeingClass::NBAFR, "NBAFR"}, {2, AgeingClass::NBAFR, "HNBUE"},
    };
    for (const auto& e : table)
        if (e.s == s && e.c == c) return std::string(e.name);
    return std::nullopt;
}

using ClassVerdicts = std::array<ShapeVerdict, 5>;  // indexed like kAllClasses

inline ClassVerdicts classify(const TransformTable& t, int s, double tol = 1e-8, bool full_pairs = false) {
    if (s < 1 || s > t.s_max()) throw std::out_of_range("level out of range: " + std::to_string(s));
    const auto nodes = t.nodes();
    const auto lam = t.lambda_nodes(s);
    const auto r = t.hazard_nodes(s);
    const double o = t.origin();

    // Hazard on all nodes where it is finite, including the origin.
    std::vector<double> zr, hr;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (std::isfinite(r[i])) {
            zr.push_back(nodes[i] - o);
            hr.push_back(r[i]);
        }

    // Positive abscissae: x_min_positive, then the nodes beyond it.
    const double zmin = t.x_min_positive();
    std::vector<double> zp{zmin}, lp{t.lambda(s, o + zmin)}, rp{t.hazard(s, o + zmin)};
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double z = nodes[i] - o;
        if (z <= zmin * (1.0 + 1e-6)) continue;
        zp.push_back(z);
        lp.push_back(lam[i]);
        rp.push_back(r[i]);
    }
    std::vector<double> avg(zp.size());
    for (std::size_t k = 0; k < zp.size(); ++k) avg[k] = lp[k] / zp[k];

    const double r0 = r[0];
    ClassVerdicts out;
    out[0] = check_shape(zr, hr, Shape::increasing(), tol);
    out[1] = check_shape(zp, avg, Shape::increasing(), tol);
    ShapeOptions exact;
    exact.full_pairs = full_pairs;
    exact.eval = [&](double z) { return t.lambda(s, o + std::min(z, t.x_max() - o)); };
    out[2] = check_shape(zp, lp, Shape::super_additive(), tol, exact);
    out[3] = check_shape(zp, rp, Shape::at_least(r0), tol);
    out[4] = check_shape(zp, avg, Shape::at_least(r0), tol);
    return out;
}

struct AgeingReport {
    struct Level {
        int s = 1;
        ClassVerdicts verdicts;
        std::array<std::optional<std::string>, 5> classical;

        bool operator==(const Level&) const = default;
    };
    std::string label;
    std::vector<Level> levels;

    bool operator==(const AgeingReport&) const = default;
};

inline AgeingReport ageing_report(const TransformTable& t, int s_max, double tol = 1e-8) {
    AgeingReport rep;
    rep.label = t.spec().label();
    for (int s = 1; s <= s_max; ++s) {
        AgeingReport::Level lv;
        lv.s = s;
        lv.verdicts = classify(t, s, tol);
        for (std::size_t c = 0; c < kAllClasses.size(); ++c) lv.classical[c] = classical_name(s, kAllClasses[c]);
        rep.levels.push_back(std::move(lv));
    }
    return rep;
}

}  // namespace relage
