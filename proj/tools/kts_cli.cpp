// Command-line front end: solve a system file, compare bases on random
// systems, and run the univariate bounding-interval study.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "kts/kts.hpp"

namespace {

// KTS_LOG = off | info | trace, default off.
void configure_logging()
{
    auto logger = spdlog::stderr_color_mt("kts");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("KTS_LOG");
    const std::string level = env ? env : "off";
    if (level == "trace") {
        spdlog::set_level(spdlog::level::trace);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        spdlog::set_level(spdlog::level::off);
    }
}

const char* outcome_name(kts::PatchOutcome o)
{
    switch (o) {
    case kts::PatchOutcome::subsumed: return "subsumed";
    case kts::PatchOutcome::excluded: return "excluded";
    case kts::PatchOutcome::subdivided: return "subdivided";
    case kts::PatchOutcome::unresolved: return "unresolved";
    }
    return "?";
}

struct SolveArgs {
    std::string input;
    std::string basis;
    std::optional<double> tol;
    std::optional<int> max_depth;
    std::string report;
    bool cond = false;
};

int run_solve(const SolveArgs& a)
{
    kts::BivariateSystem f = kts::parse_system(a.input);
    if (!a.basis.empty()) {
        const auto target = kts::parse_basis(a.basis);
        if (!target) throw kts::Error("unknown basis '" + a.basis + "'");
        f = kts::convert(f, *target, kts::ConversionFrame::shared_variable);
        spdlog::info("converted system to {} basis", a.basis);
    }
    kts::SolverConfig cfg;
    if (a.tol) cfg.newton_tol = *a.tol;
    if (a.max_depth) cfg.min_half_width = std::ldexp(1.0, -*a.max_depth);

    auto observer = [](const kts::PatchEvent& e) {
        spdlog::trace("patch center=({:.17g}, {:.17g}) r={:.6g} -> {}", e.patch.center.x, e.patch.center.y,
                      e.patch.half_width, outcome_name(e.outcome));
    };
    auto report = kts::kts_solve(f, cfg, observer);
    if (a.cond) report.cond_estimate = kts::condition_estimate(f, report.zeros, cfg);

    if (!a.report.empty()) kts::write_text(a.report, kts::format_report(report));

    std::cout << "basis: " << kts::to_string(f.basis()) << " (m=" << f.m() << ", n=" << f.n() << ")\n";
    std::cout << "zeros: " << report.zeros.size() << "\n";
    for (const auto& z : report.zeros) {
        std::cout << "  (" << kts::format_double(z.location.x) << ", " << kts::format_double(z.location.y)
                  << ")  rho*=" << kts::format_double(z.rho_star, "%.6g")
                  << "  omega*=" << kts::format_double(z.omega_star, "%.6g") << "\n";
    }
    std::cout << "patches examined: " << report.patches_examined << " (excluded " << report.exclusion_passes
              << ", kantorovich " << report.kantorovich_passes << ", subsumed " << report.skipped_subsumed
              << ")\n";
    std::cout << "smallest width: " << kts::format_double(report.smallest_width, "%.6g") << "\n";
    if (report.cond_estimate) {
        std::cout << "cond estimate (real zeros only): " << kts::format_double(*report.cond_estimate, "%.6e")
                  << "\n";
    }
    if (report.warning()) {
        std::cerr << "warning: " << report.unresolved_patches.size() << " unresolved patch(es)\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    configure_logging();
    CLI::App app{"Kantorovich-test subdivision solver for bivariate polynomial systems"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* cmd_solve = app.add_subcommand("solve", "find all zeros of a system in [0,1]^2");
    cmd_solve->add_option("--input", solve.input, "system file (JSON)")->required();
    cmd_solve->add_option("--basis", solve.basis, "convert to this basis before solving")
        ->check(CLI::IsMember({"power", "bernstein", "chebyshev"}));
    cmd_solve->add_option("--tol", solve.tol, "Newton residual tolerance");
    cmd_solve->add_option("--max-depth", solve.max_depth, "subdivision floor: min half-width 2^-K")
        ->check(CLI::Range(1, 60));
    cmd_solve->add_option("--report", solve.report, "write the JSON report here");
    cmd_solve->add_flag("--cond", solve.cond, "estimate the condition number");

    int bench_count = 5;
    int min_degree = 2;
    int max_degree = 4;
    std::uint64_t bench_seed = 1;
    std::string bench_out;
    auto* cmd_bench = app.add_subcommand("bench", "solve random systems in all three bases");
    cmd_bench->add_option("--count", bench_count)->check(CLI::PositiveNumber);
    cmd_bench->add_option("--min-degree", min_degree)->check(CLI::Range(0, 20));
    cmd_bench->add_option("--max-degree", max_degree)->check(CLI::Range(0, 20));
    cmd_bench->add_option("--seed", bench_seed);
    cmd_bench->add_option("--out", bench_out, "CSV output path")->required();

    int interval_count = 1000;
    std::uint64_t interval_seed = 1;
    std::string interval_out;
    auto* cmd_intervals = app.add_subcommand("intervals", "compare Bernstein and Chebyshev bounding intervals");
    cmd_intervals->add_option("--count", interval_count)->check(CLI::PositiveNumber);
    cmd_intervals->add_option("--seed", interval_seed);
    cmd_intervals->add_option("--out", interval_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*cmd_solve) return run_solve(solve);
        if (*cmd_bench) {
            const auto rows = kts::bench_bases(bench_count, min_degree, max_degree, bench_seed);
            kts::write_text(bench_out, kts::bench_csv(rows));
            spdlog::info("wrote {} rows to {}", rows.size(), bench_out);
            return 0;
        }
        if (*cmd_intervals) {
            const std::filesystem::path dir(interval_out);
            std::filesystem::create_directories(dir);
            const auto tallies = kts::interval_experiment(interval_count, interval_seed);
            kts::write_text(dir / "tightness.csv", kts::tightness_csv(tallies));
            kts::write_text(dir / "exact_endpoints.csv", kts::exact_endpoint_csv(tallies));
            std::cout << kts::tightness_csv(tallies) << "\n" << kts::exact_endpoint_csv(tallies);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
