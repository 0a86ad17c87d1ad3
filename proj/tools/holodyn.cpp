// Command-line front end. Exit codes: 0 success, 1 tier-1 residual exceeded
// or verify failure, 2 config or usage error, 3 pipeline error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <holodyn/holodyn.hpp>

namespace {

holodyn::ModelConfig load_with_seed(const std::string& path) {
    holodyn::ModelConfig config = holodyn::load_config(path);
    if (const char* seed = std::getenv("HOLODYN_SEED"))
        holodyn::apply_seed_override(config, seed);
    return config;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("output: cannot write file '" + out_path + "'");
    out << text;
    if (!out) throw std::runtime_error("output: cannot write file '" + out_path + "'");
}

int run_command(const std::string& config_path, const std::string& out_path) {
    const auto start = std::chrono::steady_clock::now();
    const holodyn::ModelConfig config = load_with_seed(config_path);
    const holodyn::Trajectory traj = holodyn::evolve_frames(config);
    const holodyn::DecompositionResult result = holodyn::verify_factorization(
        traj, holodyn::DecompositionOptions{config.flags.repolarize_holonomy});
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const holodyn::RunReport report = holodyn::run_report(config, traj, result, wall);
    emit(out_path, report.document.dump(2) + "\n");

    if (!report.tier1_pass) {
        std::cerr << "tier-1 checks failed:";
        for (const auto& [name, entry] : report.document.at("tier1").items())
            if (entry.is_object() && !entry.at("pass").get<bool>())
                std::cerr << ' ' << name;
        std::cerr << '\n';
        return 1;
    }
    return 0;
}

int convergence_command(const std::string& config_path, int halvings,
                        const std::string& out_path, const std::string& report_path) {
    const auto start = std::chrono::steady_clock::now();
    const holodyn::ModelConfig config = load_with_seed(config_path);
    const holodyn::ConvergenceTable table = holodyn::convergence_study(
        config, halvings,
        holodyn::DecompositionOptions{config.flags.repolarize_holonomy});
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(out_path, holodyn::to_csv(table));
    if (!report_path.empty())
        emit(report_path,
             holodyn::convergence_report(config, table, halvings, wall).dump(2) + "\n");

    // The identity and circularity columns are rounding-level algebraic
    // checks at every resolution; the discretization-limited columns are
    // reported without gating.
    bool tier1 = true;
    for (const holodyn::ConvergenceRow& row : table.rows)
        tier1 = tier1 && row.res_identity_max <= config.tolerances.identity &&
                row.res_circularity <= config.tolerances.identity;
    if (!tier1) {
        std::cerr << "tier-1 checks failed: generator identity or circularity "
                     "residual exceeded "
                  << config.tolerances.identity << '\n';
        return 1;
    }
    return 0;
}

int verify_command(const std::string& config_path, const std::string& misorder) {
    const holodyn::ModelConfig config = load_with_seed(config_path);
    holodyn::MisorderHook hook = holodyn::MisorderHook::none;
    if (misorder == "holonomy") hook = holodyn::MisorderHook::holonomy;
    else if (misorder == "dynamic") hook = holodyn::MisorderHook::dynamic;

    const std::vector<holodyn::CheckLine> lines = holodyn::invariant_suite(config, hook);
    int failed = 0, skipped = 0;
    for (const holodyn::CheckLine& line : lines) {
        char buffer[256];
        if (line.skipped) {
            ++skipped;
            std::snprintf(buffer, sizeof(buffer), "[SKIP] %-34s (%s)",
                          line.name.c_str(), line.note.c_str());
        } else {
            if (!line.pass) ++failed;
            std::snprintf(buffer, sizeof(buffer),
                          "[%s] %-34s value=%-12.6g threshold%s%g%s%s",
                          line.pass ? "PASS" : "FAIL", line.name.c_str(), line.value,
                          line.at_least ? ">=" : "<=", line.threshold,
                          line.note.empty() ? "" : "  ", line.note.c_str());
        }
        std::cout << buffer << '\n';
    }
    std::cout << "verify: " << (lines.size() - failed - skipped) << " passed, "
              << failed << " failed, " << skipped << " skipped\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subspace evolution operators: holonomy and dynamic factors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", holodyn::version_string);

    std::string config_path, out_path, report_path, misorder;
    int halvings = 0;

    CLI::App* run = app.add_subcommand(
        "run", "propagate, factorize, and write the JSON run report");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_option("--out", out_path, "write the report here instead of stdout");

    CLI::App* convergence = app.add_subcommand(
        "convergence", "run a step-halving study and write the CSV table");
    convergence->add_option("config", config_path, "JSON config file")->required();
    convergence->add_option("--halvings", halvings, "number of step halvings (>= 2)")
        ->required();
    convergence->add_option("--out", out_path, "write the CSV here instead of stdout");
    convergence->add_option("--report", report_path,
                            "also write a structured JSON report here");

    CLI::App* verify = app.add_subcommand(
        "verify", "run the invariant suite and print one line per check");
    verify->add_option("config", config_path, "JSON config file")->required();
    verify
        ->add_option("--misorder", misorder,
                     "test hook: deliberately reverse one ordered product")
        ->check(CLI::IsMember({"holonomy", "dynamic"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return run_command(config_path, out_path);
        if (convergence->parsed())
            return convergence_command(config_path, halvings, out_path, report_path);
        if (verify->parsed()) return verify_command(config_path, misorder);
    } catch (const holodyn::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pipeline error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
