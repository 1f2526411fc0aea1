#pragma once

#include <string>
#include <vector>

#include "chalsim/analytics.hpp"
#include "chalsim/calibration.hpp"
#include "chalsim/model.hpp"

namespace chalsim {

// Inputs echoed into a calibration report.
struct CalibrationQuery {
    int64_t n = 0;
    int64_t a = 0;
    Currency c_tilde;
    Currency deposit;
    Rat eta;
    Rat phi; // recapture fraction actually used (a/n unless overridden)
    bool phi_overridden = false;
};

// All renderers produce deterministic text: a value appears as the same
// string in the JSON and CSV renderings of the same run, model quantities as
// exact decimals, derived statistics at fixed 9-decimal width.

std::string render_simulation_json(const Scenario& scenario, const SimulationReport& report);
std::string render_simulation_csv(const SimulationReport& report);

// One-line O1/O2 summary for log output.
std::string render_simulation_summary(const SimulationReport& report);

std::string render_verification_json(const std::vector<TheoremReport>& reports);
std::string render_verification_text(const std::vector<TheoremReport>& reports);

std::string render_sweep_json(const SweepTable& table);
std::string render_sweep_csv(const SweepTable& table);

std::string render_calibration_json(const CalibrationQuery& query, const FeasibleInterval& interval,
                                    const ScaleFreeDeposit& scale_free, const PhiFreeBound& phi_free);

std::string calibration_regime_name(CalibrationRegime regime);

} // namespace chalsim
