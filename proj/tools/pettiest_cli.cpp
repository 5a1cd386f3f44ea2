// Command-line front end: simulate, analyze, theorem-check, version.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pettiest/pettiest.hpp"

namespace {

using namespace pettiest;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::usage:
        case ErrorKind::domain:
        case ErrorKind::size_cap:
            return kExitUsage;
        case ErrorKind::numerical_failure:
            return kExitNumerical;
        default:
            return kExitData;
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

struct SimulateArgs {
    SimConfig config;
    std::string methods = "all";
    std::string out;
    std::string format = "json";
    std::string svg_dir;
    bool timings = false;
};

int run_simulate(SimulateArgs& args) {
    args.config.methods = parse_methods(args.methods);
    const ReportFormat format = parse_format(args.format);
    args.config.keep_artifacts = !args.svg_dir.empty();

    auto runs = run_experiment(args.config);

    if (!args.svg_dir.empty()) {
        std::filesystem::create_directories(args.svg_dir);
        for (const auto& run : runs) {
            if (run.rep != 0) continue;
            const auto path = std::filesystem::path(args.svg_dir) /
                              (std::string(method_id(run.method)) + ".svg");
            write_text_file(path.string(), render_covering_svg(*run.working_data, *run.covering));
        }
        for (auto& run : runs) {
            run.covering.reset();
            run.working_data.reset();
        }
    }

    auto report = make_report(args.config, std::move(runs));
    report.include_timings = args.timings;
    write_output(args.out, emit_report(report, format));
    return kExitOk;
}

struct AnalyzeArgs {
    std::string input;
    double beta = 0.1;
    double alpha = kDefaultAlpha;
    std::size_t p_prime = 2;
    std::size_t steps = 10;
    std::string method = "fastprim-pettiest";
    std::string out;
    std::string format = "json";
    std::string svg;
};

int run_analyze(const AnalyzeArgs& args) {
    const Method method = parse_method(args.method);
    const ReportFormat format = parse_format(args.format);
    const Dataset data = read_dataset_csv_file(args.input);
    const auto analysis =
        analyze_dataset(data, method, args.beta, args.alpha, args.p_prime, args.steps);
    if (!args.svg.empty()) {
        write_text_file(args.svg,
                        render_covering_svg(*analysis.run.working_data, *analysis.run.covering));
    }
    write_output(args.out, emit_analysis(analysis, format));
    return kExitOk;
}

struct TheoremArgs {
    std::size_t p = 5;
    std::size_t p_prime = 2;
    double beta = 0.1;
    std::uint64_t seed = 20210;
    std::size_t n_mc = 100000;
    std::string out;
};

int run_theorem_check(const TheoremArgs& args) {
    const auto report = theorem2_check(paper_sigma(args.p), args.beta, args.p_prime, args.n_mc, args.seed);
    write_output(args.out, emit_optimality(report));
    return report.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PRIM and fastPRIM mode hunting with principal and pettiest components"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run the five-method simulation study");
    simulate->add_option("--n", sim.config.n, "Observations per replication")->capture_default_str();
    simulate->add_option("--p", sim.config.p, "Dimensions")->capture_default_str();
    simulate->add_option("--beta", sim.config.beta, "Box mass per covering step")->capture_default_str();
    simulate->add_option("--alpha", sim.config.alpha, "PRIM peeling fraction")->capture_default_str();
    simulate->add_option("--p-prime", sim.config.p_prime, "Components kept")->capture_default_str();
    simulate->add_option("--steps", sim.config.covering_steps, "Covering steps")->capture_default_str();
    simulate->add_option("--reps", sim.config.reps, "Replications")->capture_default_str();
    simulate->add_option("--seed", sim.config.seed, "Base RNG seed")->capture_default_str();
    simulate->add_option("--methods", sim.methods, "Comma-separated method ids, or 'all'")
        ->capture_default_str();
    simulate->add_option("--out", sim.out, "Output file (stdout when omitted)");
    simulate->add_option("--format", sim.format, "csv or json")->capture_default_str();
    simulate->add_option("--svg-dir", sim.svg_dir, "Write one SVG per method for replication 0");
    simulate->add_option("--threads", sim.config.threads, "Worker threads")->capture_default_str();
    simulate->add_flag("--timings", sim.timings, "Include wall-clock times in JSON output");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Run one method on a CSV dataset");
    analyze->add_option("--input", an.input, "CSV file with a header row")->required();
    analyze->add_option("--beta", an.beta)->capture_default_str();
    analyze->add_option("--alpha", an.alpha)->capture_default_str();
    analyze->add_option("--p-prime", an.p_prime)->capture_default_str();
    analyze->add_option("--steps", an.steps)->capture_default_str();
    analyze->add_option("--method", an.method)->capture_default_str();
    analyze->add_option("--out", an.out, "Output file (stdout when omitted)");
    analyze->add_option("--format", an.format, "csv or json")->capture_default_str();
    analyze->add_option("--svg", an.svg, "Also plot the first two working dimensions");

    TheoremArgs th;
    auto* theorem = app.add_subcommand(
        "theorem-check", "Check that pettiest components give the smallest beta-box");
    theorem->add_option("--p", th.p, "Dimension of the test covariance")->capture_default_str();
    theorem->add_option("--p-prime", th.p_prime)->capture_default_str();
    theorem->add_option("--beta", th.beta)->capture_default_str();
    theorem->add_option("--seed", th.seed)->capture_default_str();
    theorem->add_option("--n-mc", th.n_mc, "Monte Carlo sample size (0 skips sampling)")
        ->capture_default_str();
    theorem->add_option("--out", th.out, "Output file (stdout when omitted)");

    auto* version = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (analyze->parsed()) return run_analyze(an);
        if (theorem->parsed()) return run_theorem_check(th);
        if (version->parsed()) {
            std::cout << "pettiest " << kVersion << "\n";
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
