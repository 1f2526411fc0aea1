// Command-line front end. All model work goes through the C API in
// chalsim.h; this file only parses flags, moves bytes, and maps status codes
// to the documented exit codes: 0 success, 2 usage/validation, 3 infeasible
// calibration, 4 I/O or internal failure. Verification failures exit 1.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chalsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

struct ScenarioHandle {
    chalsim_scenario* ptr = nullptr;
    ~ScenarioHandle() { chalsim_scenario_free(ptr); }
};

struct ReportHandle {
    chalsim_report* ptr = nullptr;
    ~ReportHandle() { chalsim_report_free(ptr); }
};

struct TextHandle {
    char* ptr = nullptr;
    ~TextHandle() { chalsim_string_free(ptr); }
};

int fail_with(int exit_code, const std::string& message) {
    std::cerr << "chalsim: " << message << "\n";
    return exit_code;
}

int exit_code_for(int status) {
    switch (status) {
        case CHALSIM_OK: return kExitOk;
        case CHALSIM_ERROR_INVALID_ARGUMENT:
        case CHALSIM_ERROR_PARSE:
        case CHALSIM_ERROR_RANGE: return kExitUsage;
        default: return kExitIo;
    }
}

int report_status(int status) { return fail_with(exit_code_for(status), chalsim_last_error()); }

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) return false;
    out = buffer.str();
    return true;
}

// Empty path means stdout.
bool write_output(const std::string& path, const char* text) {
    if (path.empty()) {
        std::cout << text;
        return static_cast<bool>(std::cout.flush());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    out.flush();
    return static_cast<bool>(out);
}

// CHALSIM_WORKERS overrides the worker count; 0 or unset means automatic.
bool workers_from_env(unsigned& out, std::string& error) {
    out = 0;
    const char* raw = std::getenv("CHALSIM_WORKERS");
    if (raw == nullptr || *raw == '\0') return true;
    char* end = nullptr;
    errno = 0;
    const unsigned long value = std::strtoul(raw, &end, 10);
    if (errno != 0 || end == raw || *end != '\0' || raw[0] == '-' || value > 1'000'000) {
        error = std::string("CHALSIM_WORKERS must be a small non-negative integer, got \"") +
                raw + "\"";
        return false;
    }
    out = static_cast<unsigned>(value);
    return true;
}

// --trials: omitted → automatic (0); an explicit value must be >= 1.
bool trials_from_flag(int64_t flag_value, uint64_t& out, std::string& error) {
    if (flag_value < 0) {
        out = 0;
        return true;
    }
    if (flag_value == 0) {
        error = "--trials must be at least 1";
        return false;
    }
    out = static_cast<uint64_t>(flag_value);
    return true;
}

int emit_report(const chalsim_report* report, const std::string& format,
                const std::string& out_path) {
    TextHandle text;
    const int status = format == "csv" ? chalsim_report_csv(report, &text.ptr)
                                       : chalsim_report_json(report, &text.ptr);
    if (status != CHALSIM_OK) return report_status(status);
    if (!write_output(out_path, text.ptr))
        return fail_with(kExitIo, "cannot write report to " +
                                      (out_path.empty() ? std::string("stdout") : out_path));
    return kExitOk;
}

int load_scenario(const std::string& path, ScenarioHandle& out) {
    std::string content;
    if (!read_file(path, content)) return fail_with(kExitIo, "cannot read " + path);
    const int status = chalsim_scenario_parse(content.c_str(), &out.ptr);
    if (status != CHALSIM_OK) return report_status(status);
    return kExitOk;
}

int run_calibrate(int64_t n, int64_t coalition, const std::string& cost_init,
                  const std::string& cost_proc, const std::string& deposit,
                  const std::string& eta, const std::string& phi_override) {
    ReportHandle report;
    const int status =
        chalsim_calibrate(n, coalition, cost_init.c_str(), cost_proc.c_str(), deposit.c_str(),
                          eta.c_str(), phi_override.empty() ? nullptr : phi_override.c_str(),
                          &report.ptr);
    if (status != CHALSIM_OK) return report_status(status);

    TextHandle json;
    if (int s = chalsim_report_json(report.ptr, &json.ptr); s != CHALSIM_OK)
        return report_status(s);
    if (!write_output("", json.ptr)) return fail_with(kExitIo, "cannot write to stdout");

    int nonempty = 0;
    if (int s = chalsim_report_all_pass(report.ptr, &nonempty); s != CHALSIM_OK)
        return report_status(s);
    return nonempty ? kExitOk : kExitInfeasible;
}

int run_simulate(const std::string& scenario_path, int64_t trials_flag, unsigned workers,
                 const std::string& out_path, const std::string& format) {
    uint64_t trials = 0;
    std::string error;
    if (!trials_from_flag(trials_flag, trials, error)) return fail_with(kExitUsage, error);

    ScenarioHandle scenario;
    if (int code = load_scenario(scenario_path, scenario); code != kExitOk) return code;

    ReportHandle report;
    if (int s = chalsim_simulate(scenario.ptr, trials, workers, &report.ptr); s != CHALSIM_OK)
        return report_status(s);

    TextHandle summary;
    if (int s = chalsim_report_summary(report.ptr, &summary.ptr); s != CHALSIM_OK)
        return report_status(s);
    std::cerr << summary.ptr;

    return emit_report(report.ptr, format, out_path);
}

int run_verify(const std::string& theorem, int64_t trials_flag, unsigned workers,
               const std::string& out_path) {
    uint64_t trials = 0;
    std::string error;
    if (!trials_from_flag(trials_flag, trials, error)) return fail_with(kExitUsage, error);

    ReportHandle report;
    if (int s = chalsim_verify(theorem.c_str(), trials, workers, &report.ptr); s != CHALSIM_OK)
        return report_status(s);

    TextHandle summary;
    if (int s = chalsim_report_summary(report.ptr, &summary.ptr); s != CHALSIM_OK)
        return report_status(s);
    std::cerr << summary.ptr;

    if (int code = emit_report(report.ptr, "json", out_path); code != kExitOk) return code;

    int all_pass = 0;
    if (int s = chalsim_report_all_pass(report.ptr, &all_pass); s != CHALSIM_OK)
        return report_status(s);
    return all_pass ? kExitOk : kExitVerifyFailed;
}

int run_sweep(const std::string& scenario_path, const std::string& axis,
              const std::string& values, int64_t trials_flag, unsigned workers,
              const std::string& out_path, const std::string& format) {
    uint64_t trials = 0;
    std::string error;
    if (!trials_from_flag(trials_flag, trials, error)) return fail_with(kExitUsage, error);

    ScenarioHandle scenario;
    if (int code = load_scenario(scenario_path, scenario); code != kExitOk) return code;

    ReportHandle report;
    const int status = chalsim_sweep(scenario.ptr, axis.c_str(), values.c_str(), trials,
                                     workers, &report.ptr);
    if (status != CHALSIM_OK) return report_status(status);

    return emit_report(report.ptr, format, out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("challenge-game simulator and calibration toolkit (v") +
                 chalsim_version() + ")"};
    app.require_subcommand(1);

    // calibrate
    int64_t n = 0;
    int64_t coalition = 0;
    std::string cost_init = "0";
    std::string cost_proc = "0";
    std::string deposit;
    std::string eta;
    std::string phi_override;
    auto* calibrate = app.add_subcommand(
        "calibrate", "Compute the feasible reward-fraction interval and deposit bounds");
    calibrate->add_option("--n", n, "Number of challengers")->required();
    calibrate->add_option("--coalition", coalition, "Colluding challengers (must be < n/2)")
        ->required();
    calibrate->add_option("--cost-bound-init", cost_init,
                          "Worst-case initial participation cost (decimal string)");
    calibrate->add_option("--cost-bound-proc", cost_proc,
                          "Worst-case processing cost (decimal string)");
    calibrate->add_option("--deposit", deposit, "Proposer deposit (decimal string)")->required();
    calibrate->add_option("--eta", eta, "Deterrence target in (0,1) (decimal string)")
        ->required();
    calibrate->add_option("--phi-override", phi_override,
                          "Recapture fraction to use instead of coalition/n");

    // simulate
    std::string sim_scenario;
    int64_t sim_trials = -1;
    std::string sim_out;
    std::string sim_format = "json";
    auto* simulate =
        app.add_subcommand("simulate", "Run Monte Carlo dispute trials for a scenario file");
    simulate->add_option("--scenario", sim_scenario, "Scenario JSON file")->required();
    simulate->add_option("--trials", sim_trials, "Trial count (default: automatic)");
    simulate->add_option("--out", sim_out, "Output file (default: stdout)");
    simulate->add_option("--format", sim_format, "Report format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));

    // verify
    std::string theorem = "all";
    int64_t verify_trials = -1;
    std::string verify_out;
    auto* verify = app.add_subcommand(
        "verify", "Cross-check the analytic results against independent simulation");
    verify->add_option("--theorem", theorem,
                       "Result id (UP_single, UB_single, F_single_bound, "
                       "NonExclusion_interval, ScaleFree, EtaCorollary) or \"all\"");
    verify->add_option("--trials", verify_trials, "Trial count (default: per-check)");
    verify->add_option("--out", verify_out, "Output file (default: stdout)");

    // sweep
    std::string sweep_scenario;
    std::string sweep_axis;
    std::string sweep_values;
    int64_t sweep_trials = -1;
    std::string sweep_out;
    std::string sweep_format = "csv";
    auto* sweep = app.add_subcommand(
        "sweep", "Vary one parameter over a value list and emit plot-ready rows");
    sweep->add_option("--scenario", sweep_scenario, "Base scenario JSON file")->required();
    sweep->add_option("--axis", sweep_axis, "Parameter to vary: N, A, alpha, D_p, eta, c_tilde")
        ->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values, e.g. \"10,100,1000\"")
        ->required();
    sweep->add_option("--trials", sweep_trials, "Trial count per row (default: automatic)");
    sweep->add_option("--out", sweep_out, "Output file (default: stdout)");
    sweep->add_option("--format", sweep_format, "Report format (default csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    unsigned workers = 0;
    std::string env_error;
    if (!workers_from_env(workers, env_error)) return fail_with(kExitUsage, env_error);

    if (calibrate->parsed())
        return run_calibrate(n, coalition, cost_init, cost_proc, deposit, eta, phi_override);
    if (simulate->parsed())
        return run_simulate(sim_scenario, sim_trials, workers, sim_out, sim_format);
    if (verify->parsed()) return run_verify(theorem, verify_trials, workers, verify_out);
    if (sweep->parsed())
        return run_sweep(sweep_scenario, sweep_axis, sweep_values, sweep_trials, workers,
                         sweep_out, sweep_format);
    return kExitUsage;
}
