#pragma once

// Serialization and reporting.
//
// Every artifact is deterministic: rerunning the same command bytes-for-bytes
// reproduces every CSV and JSON body. Timestamps never appear in data files;
// they live in a `<file>.meta.json` sidecar written next to each CSV.
//
// CSV layout: line one is `# config: <compact json>` echoing the producing
// configuration, line two the column header, then data rows. Trailing `#`
// comment lines carry per-family summaries. Readers ignore every line that
// starts with `#`. Doubles are printed with 17 significant digits, infinities
// as `inf`, so a parse-and-reprint round trip is lossless.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "daqc/circuit.hpp"
#include "daqc/metrics.hpp"
#include "daqc/pipeline.hpp"
#include "daqc/problems.hpp"
#include "daqc/qubo.hpp"
#include "daqc/tuner.hpp"

namespace daqc {

std::string family_name(Family f);            // "ld" / "qubo"
Family family_from_name(const std::string&);  // throws on anything else

std::string format_double(double x);  // 17 significant digits; "inf"/"-inf"/"nan"
double parse_double(const std::string& field);

nlohmann::json instance_to_json(const KnapsackInstance& kp);
KnapsackInstance instance_from_json(const nlohmann::json& j);

// Groups instances by (superset, cell), writes one `cell-<label>.json` per
// group plus `manifest.json` into dir (created if missing), and returns the
// manifest path. Labels read `n<cell>` for superset 1 and `C<cell>` for
// superset 2.
std::string write_dataset(const std::string& dir, std::uint64_t seed,
                          const std::vector<KnapsackInstance>& instances,
                          const nlohmann::json& config);

// Accepts a manifest, a JSON array of instances, or a single instance object.
std::vector<KnapsackInstance> read_instances(const std::string& path);

void write_metrics_csv(const std::string& path, const std::vector<RunMetrics>& rows,
                       const nlohmann::json& config);
std::vector<RunMetrics> read_metrics_csv(const std::string& path);

// trial,family,p,T,a,lambda,qubo_gamma_factor,median_tts_ns,finite_fraction,
// short_circuited — one row per trial in trial order.
void write_trial_log_csv(const std::string& path, const TuneResult& result,
                         const nlohmann::json& config);

// Winning parameters, optionally annotated with the tuning outcome.
void write_params_json(const std::string& path, const FamilyParams& params,
                       const TuneResult* tuning = nullptr);
FamilyParams read_params_json(const std::string& path);

// Plain-text quadratic model: comment header (sizes, penalty weights,
// constant offset), then one `i i coeff` line per linear term and one
// `i j coeff` line per quadratic term (i < j, ascending), coefficients as
// exact rationals.
void write_qubo_text(const std::string& path, const QuboModel& q);

nlohmann::json circuit_to_json(const Circuit& c, const ScheduledCircuit* timing,
                               const ConnectivityReport& conn);

// Per-(family, cell) roll-up of a metrics table plus a least-squares slope of
// mean layer count against the cell parameter for each family present.
struct ReportRow {
    Family family = Family::LD;
    long long cell = 0;
    int count = 0;    // rows evaluated
    int skipped = 0;  // rows excluded (over the qubit cap)
    double mean_p = 0.0;
    double mean_T = 0.0;
    double mean_qubits = 0.0;
    double median_r99 = 0.0;
    double median_tts_ns = 0.0;
    double finite_fraction = 0.0;
};

struct FamilyTrend {
    Family family = Family::LD;
    int cells = 0;
    double slope = 0.0;      // d(mean_p)/d(cell)
    double intercept = 0.0;
};

struct Report {
    std::vector<ReportRow> rows;     // sorted by (family, cell)
    std::vector<FamilyTrend> trends; // one per family with >= 2 cells
};

Report build_report(const std::vector<RunMetrics>& rows);  // throws on empty input
void write_report_csv(const std::string& path, const Report& report,
                      const nlohmann::json& config);

}  // namespace daqc
