#include "chalsim.h"

#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "chalsim/analytics.hpp"
#include "chalsim/calibration.hpp"
#include "chalsim/error.hpp"
#include "chalsim/report_io.hpp"
#include "chalsim/scenario_io.hpp"

using namespace chalsim;

struct chalsim_scenario {
    Scenario scenario;
};

// One report type for every operation; `kind` selects which members are live.
struct chalsim_report {
    enum class Kind { Simulation, Calibration, Verification, Sweep } kind;

    // Simulation
    Scenario scenario;
    SimulationReport simulation;

    // Calibration
    CalibrationQuery query;
    FeasibleInterval interval;
    ScaleFreeDeposit scale_free;
    PhiFreeBound phi_free;

    // Verification
    std::vector<TheoremReport> theorems;

    // Sweep
    SweepTable table;
};

namespace {

thread_local std::string g_last_error;

int set_error(int status, const std::string& message) {
    g_last_error = message;
    return status;
}

int status_for(const Error& e) {
    switch (e.code()) {
        case errc::parse_error: return CHALSIM_ERROR_PARSE;
        case errc::range_error: return CHALSIM_ERROR_RANGE;
        default: return CHALSIM_ERROR_INVALID_ARGUMENT;
    }
}

// Runs the body under the library's exception-to-status contract.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return set_error(status_for(e), e.what());
    } catch (const std::exception& e) {
        return set_error(CHALSIM_ERROR_INTERNAL, e.what());
    } catch (...) {
        return set_error(CHALSIM_ERROR_INTERNAL, "unknown failure");
    }
}

int require(const void* p, const char* what) {
    if (p) return CHALSIM_OK;
    return set_error(CHALSIM_ERROR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

char* copy_out(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

std::string calibration_summary(const chalsim_report& r) {
    std::ostringstream out;
    out << "feasible alpha interval [" << r.interval.alpha_lower.to_decimal_string(9) << ", "
        << r.interval.alpha_upper.to_decimal_string(9) << "] "
        << (r.interval.nonempty ? "nonempty" : "EMPTY") << " ("
        << calibration_regime_name(r.interval.regime) << "); scale-free minimum deposit "
        << r.scale_free.min_deposit.to_string();
    return out.str();
}

} // namespace

extern "C" {

const char* chalsim_version(void) { return "1.0.0"; }

const char* chalsim_last_error(void) { return g_last_error.c_str(); }

void chalsim_string_free(char* text) { delete[] text; }

int chalsim_scenario_parse(const char* json_text, chalsim_scenario** out) {
    if (int s = require(json_text, "json_text"); s != CHALSIM_OK) return s;
    if (int s = require(out, "out"); s != CHALSIM_OK) return s;
    return guarded([&] {
        auto holder = new chalsim_scenario{parse_scenario(json_text)};
        *out = holder;
        return CHALSIM_OK;
    });
}

int chalsim_scenario_serialize(const chalsim_scenario* scenario, char** out_text) {
    if (int s = require(scenario, "scenario"); s != CHALSIM_OK) return s;
    if (int s = require(out_text, "out_text"); s != CHALSIM_OK) return s;
    return guarded([&] {
        *out_text = copy_out(serialize_scenario(scenario->scenario));
        return CHALSIM_OK;
    });
}

void chalsim_scenario_free(chalsim_scenario* scenario) { delete scenario; }

int chalsim_simulate(const chalsim_scenario* scenario, uint64_t trials, unsigned workers,
                     chalsim_report** out) {
    if (int s = require(scenario, "scenario"); s != CHALSIM_OK) return s;
    if (int s = require(out, "out"); s != CHALSIM_OK) return s;
    return guarded([&] {
        const uint64_t n_trials = trials > 0 ? trials : default_trials(scenario->scenario);
        auto report = new chalsim_report{};
        report->kind = chalsim_report::Kind::Simulation;
        report->scenario = scenario->scenario;
        try {
            report->simulation = estimate_utilities(scenario->scenario, n_trials, workers);
        } catch (...) {
            delete report;
            throw;
        }
        *out = report;
        return CHALSIM_OK;
    });
}

int chalsim_calibrate(int64_t n, int64_t a, const char* c_init_bound, const char* c_proc_bound,
                      const char* deposit, const char* eta, const char* phi_override,
                      chalsim_report** out) {
    if (int s = require(c_init_bound, "c_init_bound"); s != CHALSIM_OK) return s;
    if (int s = require(c_proc_bound, "c_proc_bound"); s != CHALSIM_OK) return s;
    if (int s = require(deposit, "deposit"); s != CHALSIM_OK) return s;
    if (int s = require(eta, "eta"); s != CHALSIM_OK) return s;
    if (int s = require(out, "out"); s != CHALSIM_OK) return s;
    return guarded([&] {
        CalibrationQuery query;
        query.n = n;
        query.a = a;
        query.c_tilde = Currency::parse(c_init_bound) + Currency::parse(c_proc_bound);
        query.deposit = Currency::parse(deposit);
        query.eta = Rat::parse(eta);
        std::optional<Rat> phi;
        if (phi_override) {
            phi = Rat::parse(phi_override);
            query.phi_overridden = true;
        }
        if (n < 1) fail(errc::invalid_population, "population needs at least one challenger");
        query.phi = phi ? *phi : Rat(a, n);

        auto report = new chalsim_report{};
        report->kind = chalsim_report::Kind::Calibration;
        report->query = query;
        try {
            report->interval =
                feasible_interval(n, a, query.c_tilde, query.deposit, query.eta, phi);
            report->scale_free = scale_free_min_deposit(query.c_tilde, a, query.eta);
            report->phi_free = phi_free_upper_bound(query.eta);
        } catch (...) {
            delete report;
            throw;
        }
        *out = report;
        return CHALSIM_OK;
    });
}

int chalsim_verify(const char* theorem_id, uint64_t trials, unsigned workers,
                   chalsim_report** out) {
    if (int s = require(theorem_id, "theorem_id"); s != CHALSIM_OK) return s;
    if (int s = require(out, "out"); s != CHALSIM_OK) return s;
    return guarded([&] {
        VerifyConfig config;
        if (trials > 0) config.trials = trials;
        config.workers = workers;

        std::vector<TheoremReport> reports;
        if (std::string(theorem_id) == "all") {
            for (const std::string& id : known_theorems())
                reports.push_back(verify_theorem(id, config));
        } else {
            reports.push_back(verify_theorem(theorem_id, config));
        }

        auto report = new chalsim_report{};
        report->kind = chalsim_report::Kind::Verification;
        report->theorems = std::move(reports);
        *out = report;
        return CHALSIM_OK;
    });
}

int chalsim_sweep(const chalsim_scenario* base, const char* axis, const char* values_csv,
                  uint64_t trials, unsigned workers, chalsim_report** out) {
    if (int s = require(base, "base"); s != CHALSIM_OK) return s;
    if (int s = require(axis, "axis"); s != CHALSIM_OK) return s;
    if (int s = require(values_csv, "values_csv"); s != CHALSIM_OK) return s;
    if (int s = require(out, "out"); s != CHALSIM_OK) return s;
    return guarded([&] {
        const std::vector<std::string> values = split_csv(values_csv);
        if (values.empty()) fail(errc::invalid_argument, "value list must not be empty");
        auto report = new chalsim_report{};
        report->kind = chalsim_report::Kind::Sweep;
        try {
            report->table =
                sweep(parse_sweep_axis(axis), values, base->scenario, trials, workers);
        } catch (...) {
            delete report;
            throw;
        }
        *out = report;
        return CHALSIM_OK;
    });
}

int chalsim_report_json(const chalsim_report* report, char** out_text) {
    if (int s = require(report, "report"); s != CHALSIM_OK) return s;
    if (int s = require(out_text, "out_text"); s != CHALSIM_OK) return s;
    return guarded([&] {
        std::string text;
        switch (report->kind) {
            case chalsim_report::Kind::Simulation:
                text = render_simulation_json(report->scenario, report->simulation);
                break;
            case chalsim_report::Kind::Calibration:
                text = render_calibration_json(report->query, report->interval,
                                               report->scale_free, report->phi_free);
                break;
            case chalsim_report::Kind::Verification:
                text = render_verification_json(report->theorems);
                break;
            case chalsim_report::Kind::Sweep: text = render_sweep_json(report->table); break;
        }
        *out_text = copy_out(text);
        return CHALSIM_OK;
    });
}

int chalsim_report_csv(const chalsim_report* report, char** out_text) {
    if (int s = require(report, "report"); s != CHALSIM_OK) return s;
    if (int s = require(out_text, "out_text"); s != CHALSIM_OK) return s;
    return guarded([&] {
        switch (report->kind) {
            case chalsim_report::Kind::Simulation:
                *out_text = copy_out(render_simulation_csv(report->simulation));
                return CHALSIM_OK;
            case chalsim_report::Kind::Sweep:
                *out_text = copy_out(render_sweep_csv(report->table));
                return CHALSIM_OK;
            default:
                fail(errc::invalid_argument, "this report kind has no CSV rendering");
        }
    });
}

int chalsim_report_summary(const chalsim_report* report, char** out_text) {
    if (int s = require(report, "report"); s != CHALSIM_OK) return s;
    if (int s = require(out_text, "out_text"); s != CHALSIM_OK) return s;
    return guarded([&] {
        std::string text;
        switch (report->kind) {
            case chalsim_report::Kind::Simulation:
                text = render_simulation_summary(report->simulation) + "\n";
                break;
            case chalsim_report::Kind::Calibration:
                text = calibration_summary(*report) + "\n";
                break;
            case chalsim_report::Kind::Verification:
                text = render_verification_text(report->theorems);
                break;
            case chalsim_report::Kind::Sweep:
                text = "sweep over " + sweep_axis_name(report->table.axis) + ": " +
                       std::to_string(report->table.rows.size()) + " rows\n";
                break;
        }
        *out_text = copy_out(text);
        return CHALSIM_OK;
    });
}

int chalsim_report_all_pass(const chalsim_report* report, int* out_flag) {
    if (int s = require(report, "report"); s != CHALSIM_OK) return s;
    if (int s = require(out_flag, "out_flag"); s != CHALSIM_OK) return s;
    return guarded([&] {
        switch (report->kind) {
            case chalsim_report::Kind::Calibration:
                *out_flag = report->interval.nonempty ? 1 : 0;
                break;
            case chalsim_report::Kind::Verification: {
                bool all = true;
                for (const TheoremReport& t : report->theorems) all = all && t.pass;
                *out_flag = all ? 1 : 0;
                break;
            }
            default: *out_flag = 1; break;
        }
        return CHALSIM_OK;
    });
}

void chalsim_report_free(chalsim_report* report) { delete report; }

} // extern "C"
