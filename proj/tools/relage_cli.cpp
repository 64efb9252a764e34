// relage: compare the relative ageing of two lifetime distributions.
//
//   relage compare  --config <file> [--out-dir <dir>]
//   relage classify --config <file>
//   relage curves   --config <file> --out-dir <dir>
//   relage mc-check --config <file> --seed <n>
//
// Exit status: 0 when every verdict is decisive, 2 when some verdict is
// inconclusive, 1 on any error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relage/relage.hpp"

namespace {

using namespace relage;

void print_verdicts(const ComparisonReport& rep) {
    for (const auto& r : rep.results) {
        std::printf("%s level %d%s\n", r.direction.c_str(), r.s, r.chain_consistent ? "" : "  [chain inconsistent]");
        for (const auto& v : r.verdicts) {
            std::printf("  %-9s %-12s margin=%-12.4g", to_string(v.ordering), to_string(v.kind), v.primary_shape.margin);
            if (v.primary_shape.witness) std::printf(" witness=%.6g", v.primary_shape.witness->x);
            if (!v.note.empty()) std::printf(" (%s)", v.note.c_str());
            std::printf("\n");
        }
    }
}

void print_ageing(const AgeingReport& a) {
    std::printf("%s\n", a.label.c_str());
    for (const auto& lv : a.levels) {
        std::printf("  level %d:", lv.s);
        for (std::size_t c = 0; c < kAllClasses.size(); ++c) {
            std::printf(" %d-%s=%s", lv.s, to_string(kAllClasses[c]), to_string(lv.verdicts[c].kind));
            if (lv.classical[c]) std::printf("[%s]", lv.classical[c]->c_str());
        }
        std::printf("\n");
    }
}

int write_report(const ComparisonReport& rep, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "report.json");
    if (!out) throw std::runtime_error("cannot write " + (dir / "report.json").string());
    out << report_to_json(rep).dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relative ageing of two lifetime distributions"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;

    auto* compare = app.add_subcommand("compare", "Decide all requested orderings in both directions");
    compare->add_option("--config", config_path, "Comparison config (JSON)")->required()->check(CLI::ExistingFile);
    compare->add_option("--out-dir", out_dir, "Write report.json and curves here");

    auto* classify_cmd = app.add_subcommand("classify", "Classify both distributions into the s-ageing classes");
    classify_cmd->add_option("--config", config_path, "Comparison config (JSON)")->required()->check(CLI::ExistingFile);

    auto* curves = app.add_subcommand("curves", "Export transform and ratio curves as CSV");
    curves->add_option("--config", config_path, "Comparison config (JSON)")->required()->check(CLI::ExistingFile);
    curves->add_option("--out-dir", out_dir, "Output directory")->required();

    auto* mc = app.add_subcommand("mc-check", "Monte Carlo check of Phi against its analytic survival");
    mc->add_option("--config", config_path, "Comparison config (JSON)")->required()->check(CLI::ExistingFile);
    mc->add_option("--seed", seed, "Random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        ComparisonConfig cfg = load_config(config_path);

        if (*compare) {
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            const ComparisonRun run = execute(cfg);
            print_verdicts(run.report);
            for (const auto& m : run.report.monte_carlo)
                std::printf("monte carlo level %d: KS=%.5f (n=%zu)\n", m.s, m.ks, m.n);
            for (const auto& c : run.report.conclusions) std::printf("%s\n", c.c_str());
            if (!cfg.output_dir.empty()) {
                write_report(run.report, cfg.output_dir);
                emit_curves(run, cfg.output_dir);
            }
            return run.report.any_inconclusive() ? 2 : 0;
        }

        if (*classify_cmd) {
            cfg.orderings.clear();
            const ComparisonRun run = execute(cfg);
            print_ageing(run.report.ageing_x);
            print_ageing(run.report.ageing_y);
            for (const auto* a : {&run.report.ageing_x, &run.report.ageing_y})
                for (const auto& lv : a->levels)
                    for (const auto& v : lv.verdicts)
                        if (v.kind == VerdictKind::Inconclusive) return 2;
            return 0;
        }

        if (*curves) {
            const ComparisonRun run = execute(cfg);
            for (const auto& p : emit_curves(run, out_dir)) std::printf("%s\n", p.string().c_str());
            return 0;
        }

        if (*mc) {
            cfg.mc_enabled = true;
            cfg.mc.seed = seed;
            cfg.orderings.clear();
            const ComparisonRun run = execute(cfg);
            for (const auto& m : run.report.monte_carlo)
                std::printf("level %d: KS=%.6f n=%zu seed=%llu out_of_range=%zu\n", m.s, m.ks, m.n,
                            static_cast<unsigned long long>(m.seed), m.out_of_range);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
