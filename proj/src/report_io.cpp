#include "chalsim/report_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "chalsim/scenario_io.hpp"

namespace chalsim {

namespace {

using json = nlohmann::json;

// Fixed-width rendering for derived statistics (standard errors, interval
// ends). Model quantities use exact decimal rendering instead.
std::string stat(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

// Exact decimal for accumulated rationals; rounded half-even at 9 places when
// the expansion does not terminate (only possible when the trial count has a
// factor other than 2 and 5).
std::string exact(const Rat& v) { return v.to_decimal_string(9); }

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

const char* bool_text(bool v) { return v ? "true" : "false"; }

json estimate_to_json(const UtilityEstimate& est) {
    return json{{"id", est.challenger},
                {"role", est.coalition ? "coalition" : "honest"},
                {"mean_utility", exact(est.mean_utility)},
                {"se", stat(est.std_error)},
                {"ci_low", stat(est.ci_low)},
                {"ci_high", stat(est.ci_high)},
                {"inclusion_rate", exact(est.inclusion_rate)},
                {"exact", est.exact}};
}

json check_to_json(const TheoremCheck& check) {
    return json{{"name", check.name},
                {"expected", check.expected},
                {"observed", check.observed},
                {"tolerance", check.tolerance},
                {"pass", check.pass}};
}

} // namespace

std::string calibration_regime_name(CalibrationRegime regime) {
    return regime == CalibrationRegime::ScaleLimitedAlphaOne ? "scale_limited_alpha_one"
                                                             : "scale_free_deterrence_bound";
}

std::string render_simulation_json(const Scenario& scenario, const SimulationReport& report) {
    json doc;
    doc["kind"] = "simulation";
    doc["trials"] = report.trials;
    doc["scenario"] = json::parse(serialize_scenario(scenario));
    json estimates = json::array();
    for (const UtilityEstimate& est : report.estimates) estimates.push_back(estimate_to_json(est));
    doc["estimates"] = std::move(estimates);
    doc["adversary_loss"] = {{"mean", exact(report.adversary_loss_mean)},
                             {"se", stat(report.adversary_loss_se)},
                             {"exact", report.adversary_loss_exact}};
    doc["fraud_caught_rate"] = exact(report.fraud_caught_rate);
    doc["goals"] = {{"o1_empirical", report.o1_empirical},
                    {"o2_empirical", report.o2_empirical},
                    {"o1_analytic", report.analytic.o1_holds},
                    {"o2_analytic", report.analytic.o2_holds}};
    return doc.dump(2) + "\n";
}

std::string render_simulation_csv(const SimulationReport& report) {
    std::ostringstream out;
    out << "id,role,mean_utility,se,ci_low,ci_high,inclusion_rate\n";
    for (const UtilityEstimate& est : report.estimates) {
        out << est.challenger << ',' << (est.coalition ? "coalition" : "honest") << ','
            << exact(est.mean_utility) << ',' << stat(est.std_error) << ',' << stat(est.ci_low)
            << ',' << stat(est.ci_high) << ',' << exact(est.inclusion_rate) << '\n';
    }
    return out.str();
}

std::string render_simulation_summary(const SimulationReport& report) {
    std::ostringstream out;
    out << "O1 (all honest means non-negative): "
        << (report.o1_empirical ? "holds" : "VIOLATED") << " empirically, "
        << (report.analytic.o1_holds ? "holds" : "VIOLATED") << " analytically; "
        << "O2 (loss reaches eta*deposit): " << (report.o2_empirical ? "holds" : "VIOLATED")
        << " empirically, " << (report.analytic.o2_holds ? "holds" : "VIOLATED")
        << " analytically; adversary loss mean " << exact(report.adversary_loss_mean) << " over "
        << report.trials << " trials";
    return out.str();
}

std::string render_verification_json(const std::vector<TheoremReport>& reports) {
    json doc;
    doc["kind"] = "verification";
    bool all_pass = true;
    json items = json::array();
    for (const TheoremReport& report : reports) {
        all_pass = all_pass && report.pass;
        json checks = json::array();
        for (const TheoremCheck& check : report.checks) checks.push_back(check_to_json(check));
        items.push_back(json{{"theorem_id", report.theorem_id},
                             {"pass", report.pass},
                             {"trials", report.trials},
                             {"checks", std::move(checks)}});
    }
    doc["all_pass"] = all_pass;
    doc["theorems"] = std::move(items);
    return doc.dump(2) + "\n";
}

std::string render_verification_text(const std::vector<TheoremReport>& reports) {
    std::ostringstream out;
    for (const TheoremReport& report : reports) {
        out << (report.pass ? "PASS" : "FAIL") << ' ' << report.theorem_id;
        if (report.trials > 0) out << " (" << report.trials << " trials per cell)";
        out << '\n';
        for (const TheoremCheck& check : report.checks) {
            out << "  " << (check.pass ? "pass" : "FAIL") << ' ' << check.name << ": expected "
                << check.expected << "; observed " << check.observed << " [tolerance "
                << check.tolerance << "]\n";
        }
    }
    return out.str();
}

namespace {

json sweep_row_to_json(const SweepTable& table, const SweepRow& row) {
    json j;
    j["axis"] = sweep_axis_name(table.axis);
    j["value"] = row.value;
    j["valid"] = row.valid;
    j["error"] = row.error;
    if (!row.valid) return j;
    j["n"] = row.n;
    j["a"] = row.a;
    j["alpha"] = exact(row.alpha);
    j["deposit"] = row.deposit.to_string();
    j["eta"] = exact(row.eta);
    j["c_tilde"] = row.c_tilde.to_string();
    j["alpha_lower"] = exact(row.alpha_lower);
    j["alpha_upper"] = exact(row.alpha_upper);
    j["interval_nonempty"] = row.interval_nonempty;
    j["regime"] = calibration_regime_name(row.regime);
    j["o1_analytic"] = row.o1_analytic;
    j["o2_analytic"] = row.o2_analytic;
    j["o1_empirical"] = row.o1_empirical;
    j["o2_empirical"] = row.o2_empirical;
    j["min_honest_mean_utility"] = exact(row.min_honest_mean_utility);
    j["adversary_loss_mean"] = exact(row.adversary_loss_mean);
    j["fraud_caught_rate"] = exact(row.fraud_caught_rate);
    j["required_single_winner_payout"] = row.required_single_winner_payout.to_string();
    return j;
}

} // namespace

std::string render_sweep_json(const SweepTable& table) {
    json doc;
    doc["kind"] = "sweep";
    doc["axis"] = sweep_axis_name(table.axis);
    doc["trials"] = table.trials;
    json rows = json::array();
    for (const SweepRow& row : table.rows) rows.push_back(sweep_row_to_json(table, row));
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string render_sweep_csv(const SweepTable& table) {
    std::ostringstream out;
    out << "axis,value,valid,error,n,a,alpha,deposit,eta,c_tilde,alpha_lower,alpha_upper,"
           "interval_nonempty,regime,o1_analytic,o2_analytic,o1_empirical,o2_empirical,"
           "min_honest_mean_utility,adversary_loss_mean,fraud_caught_rate,"
           "required_single_winner_payout\n";
    for (const SweepRow& row : table.rows) {
        out << sweep_axis_name(table.axis) << ',' << csv_field(row.value) << ','
            << bool_text(row.valid) << ',' << csv_field(row.error) << ',';
        if (!row.valid) {
            out << ",,,,,,,,,,,,,,,,,\n";
            continue;
        }
        out << row.n << ',' << row.a << ',' << exact(row.alpha) << ',' << row.deposit.to_string()
            << ',' << exact(row.eta) << ',' << row.c_tilde.to_string() << ','
            << exact(row.alpha_lower) << ',' << exact(row.alpha_upper) << ','
            << bool_text(row.interval_nonempty) << ',' << calibration_regime_name(row.regime) << ','
            << bool_text(row.o1_analytic) << ',' << bool_text(row.o2_analytic) << ','
            << bool_text(row.o1_empirical) << ',' << bool_text(row.o2_empirical) << ','
            << exact(row.min_honest_mean_utility) << ',' << exact(row.adversary_loss_mean) << ','
            << exact(row.fraud_caught_rate) << ',' << row.required_single_winner_payout.to_string()
            << '\n';
    }
    return out.str();
}

std::string render_calibration_json(const CalibrationQuery& query, const FeasibleInterval& interval,
                                    const ScaleFreeDeposit& scale_free,
                                    const PhiFreeBound& phi_free) {
    json doc;
    doc["kind"] = "calibration";
    doc["inputs"] = {{"n", query.n},
                     {"a", query.a},
                     {"c_tilde", query.c_tilde.to_string()},
                     {"deposit", query.deposit.to_string()},
                     {"eta", exact(query.eta)},
                     {"phi", exact(query.phi)},
                     {"phi_overridden", query.phi_overridden}};
    doc["interval"] = {{"alpha_lower", exact(interval.alpha_lower)},
                       {"alpha_lower_fraction", interval.alpha_lower.to_fraction_string()},
                       {"alpha_upper", exact(interval.alpha_upper)},
                       {"alpha_upper_fraction", interval.alpha_upper.to_fraction_string()},
                       {"nonempty", interval.nonempty},
                       {"regime", calibration_regime_name(interval.regime)}};
    doc["scale_free_min_deposit"] = scale_free.min_deposit.to_string();
    doc["scale_free_deterrence_vacuous"] = scale_free.advisory_honest_population;
    doc["phi_free_bound"] = {{"bound", exact(phi_free.bound)},
                             {"nontrivial", phi_free.nontrivial}};
    return doc.dump(2) + "\n";
}

} // namespace chalsim
