#include "daqc/io.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "daqc/rng.hpp"

namespace daqc {

namespace {

constexpr const char* kMetricsHeader =
    "instance,family,n,qubits,cell,capacity,p,T,a,lambda,P,r99,tss_ns,tts_ns,skipped,reason";

std::ofstream open_out(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return nlohmann::json::parse(in);
}

// Wall-clock state goes in the sidecar only, keeping the data file itself
// byte-identical across reruns.
void write_meta_sidecar(const std::string& path, const nlohmann::json& config,
                        std::size_t rows) {
    nlohmann::json meta;
    meta["written_at"] = fmt::format("{:%Y-%m-%dT%H:%M:%S}Z", fmt::gmtime(std::time(nullptr)));
    meta["rows"] = rows;
    meta["config"] = config;
    auto out = open_out(path + ".meta.json");
    out << meta.dump(2) << "\n";
}

// Free-text CSV fields are machine-generated and should never contain
// separators; mangle rather than corrupt the table if one ever does.
std::string csv_field(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

long long parse_ll(const std::string& field) {
    std::size_t pos = 0;
    const long long v = std::stoll(field, &pos);
    if (pos != field.size()) throw std::runtime_error("malformed integer field: " + field);
    return v;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

}  // namespace

std::string family_name(Family f) { return f == Family::LD ? "ld" : "qubo"; }

Family family_from_name(const std::string& s) {
    if (s == "ld") return Family::LD;
    if (s == "qubo") return Family::QUBO;
    throw std::invalid_argument("unknown family: " + s);
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

double parse_double(const std::string& field) {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::runtime_error("malformed numeric field: " + field);
    return v;
}

nlohmann::json instance_to_json(const KnapsackInstance& kp) {
    return nlohmann::json{{"id", kp.id},       {"n", kp.n},
                          {"v", kp.v},         {"w", kp.w},
                          {"c", kp.c},         {"seed", kp.seed},
                          {"superset", kp.superset}, {"cell", kp.cell}};
}

KnapsackInstance instance_from_json(const nlohmann::json& j) {
    KnapsackInstance kp;
    kp.id = j.at("id").get<std::string>();
    kp.n = j.at("n").get<int>();
    kp.v = j.at("v").get<std::vector<long long>>();
    kp.w = j.at("w").get<std::vector<long long>>();
    kp.c = j.at("c").get<long long>();
    kp.seed = j.value("seed", std::uint64_t{0});
    kp.superset = j.value("superset", 0);
    kp.cell = j.value("cell", static_cast<long long>(kp.n));
    if (kp.n < 0 || kp.v.size() != static_cast<std::size_t>(kp.n) ||
        kp.w.size() != static_cast<std::size_t>(kp.n))
        throw std::invalid_argument("instance " + kp.id + ": v/w length does not match n");
    return kp;
}

std::string write_dataset(const std::string& dir, std::uint64_t seed,
                          const std::vector<KnapsackInstance>& instances,
                          const nlohmann::json& config) {
    if (instances.empty()) throw std::invalid_argument("write_dataset: no instances");
    std::map<std::pair<int, long long>, std::vector<const KnapsackInstance*>> groups;
    for (const KnapsackInstance& kp : instances) groups[{kp.superset, kp.cell}].push_back(&kp);

    std::filesystem::create_directories(dir);
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [key, members] : groups) {
        const auto [superset, cell] = key;
        const std::string label =
            fmt::format("s{}-{}{}", superset, superset == 2 ? 'C' : 'n', cell);
        const std::string file = "cell-" + label + ".json";
        nlohmann::json arr = nlohmann::json::array();
        for (const KnapsackInstance* kp : members) arr.push_back(instance_to_json(*kp));
        auto out = open_out((std::filesystem::path(dir) / file).string());
        out << arr.dump(2) << "\n";
        cells.push_back({{"cell", label},
                         {"superset", superset},
                         {"param", cell},
                         {"count", members.size()},
                         {"seed", derive_seed(seed, {static_cast<std::uint64_t>(superset),
                                                     static_cast<std::uint64_t>(cell)})},
                         {"file", file}});
    }
    nlohmann::json manifest{{"generator", "xoshiro256**"},
                            {"seed", seed},
                            {"cells", cells},
                            {"config", config}};
    const std::string manifest_path = (std::filesystem::path(dir) / "manifest.json").string();
    auto out = open_out(manifest_path);
    out << manifest.dump(2) << "\n";
    return manifest_path;
}

std::vector<KnapsackInstance> read_instances(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    std::vector<KnapsackInstance> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(instance_from_json(item));
        return out;
    }
    if (j.is_object() && j.contains("cells")) {
        const std::filesystem::path base = std::filesystem::path(path).parent_path();
        for (const auto& cell : j.at("cells")) {
            const nlohmann::json arr =
                read_json_file((base / cell.at("file").get<std::string>()).string());
            if (!arr.is_array())
                throw std::runtime_error("manifest cell file is not an instance array");
            for (const auto& item : arr) out.push_back(instance_from_json(item));
        }
        return out;
    }
    if (j.is_object() && j.contains("id")) {
        out.push_back(instance_from_json(j));
        return out;
    }
    throw std::runtime_error(path + ": not an instance list, manifest, or instance");
}

void write_metrics_csv(const std::string& path, const std::vector<RunMetrics>& rows,
                       const nlohmann::json& config) {
    auto out = open_out(path);
    out << "# config: " << config.dump() << "\n";
    out << kMetricsHeader << "\n";
    int total_skipped = 0;
    for (const RunMetrics& r : rows) {
        out << csv_field(r.instance_id) << ',' << family_name(r.family) << ',' << r.n << ','
            << r.qubits << ',' << r.cell << ',' << r.capacity << ',' << r.p << ','
            << format_double(r.T) << ',' << format_double(r.a) << ','
            << csv_field(r.lambda_desc) << ',' << format_double(r.success_p) << ','
            << format_double(r.r99) << ',' << format_double(r.tss_ns) << ','
            << format_double(r.tts_ns) << ',' << (r.skipped ? 1 : 0) << ','
            << csv_field(r.skip_reason) << "\n";
        total_skipped += r.skipped ? 1 : 0;
    }
    for (const Family f : {Family::LD, Family::QUBO}) {
        std::vector<double> tts;
        int skipped = 0;
        for (const RunMetrics& r : rows) {
            if (r.family != f) continue;
            if (r.skipped)
                ++skipped;
            else
                tts.push_back(r.tts_ns);
        }
        if (tts.empty() && skipped == 0) continue;
        if (tts.empty()) {
            out << fmt::format("# summary: family={} rows=0 skipped={}\n", family_name(f),
                               skipped);
        } else {
            const Aggregate agg = aggregate(tts);
            out << fmt::format("# summary: family={} rows={} skipped={} median_tts_ns={} "
                               "finite={}\n",
                               family_name(f), agg.count, skipped, format_double(agg.median),
                               format_double(agg.finite_fraction));
        }
    }
    out << "# skipped: " << total_skipped << "\n";
    write_meta_sidecar(path, config, rows.size());
}

std::vector<RunMetrics> read_metrics_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<RunMetrics> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != kMetricsHeader)
                throw std::runtime_error(path + ": unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != 16)
            throw std::runtime_error(path + ": expected 16 CSV fields, got " +
                                     std::to_string(f.size()));
        RunMetrics r;
        r.instance_id = f[0];
        r.family = family_from_name(f[1]);
        r.n = static_cast<int>(parse_ll(f[2]));
        r.qubits = static_cast<int>(parse_ll(f[3]));
        r.cell = parse_ll(f[4]);
        r.capacity = parse_ll(f[5]);
        r.p = static_cast<int>(parse_ll(f[6]));
        r.T = parse_double(f[7]);
        r.a = parse_double(f[8]);
        r.lambda_desc = f[9];
        r.success_p = parse_double(f[10]);
        r.r99 = parse_double(f[11]);
        r.tss_ns = parse_double(f[12]);
        r.tts_ns = parse_double(f[13]);
        r.skipped = f[14] == "1";
        r.skip_reason = f[15];
        rows.push_back(std::move(r));
    }
    if (!header_seen) throw std::runtime_error(path + ": no CSV header found");
    return rows;
}

void write_trial_log_csv(const std::string& path, const TuneResult& result,
                         const nlohmann::json& config) {
    auto out = open_out(path);
    out << "# config: " << config.dump() << "\n";
    out << "trial,family,p,T,a,lambda,qubo_gamma_factor,median_tts_ns,finite_fraction,"
           "short_circuited\n";
    for (const TrialRecord& rec : result.log) {
        const FamilyParams& fp = rec.params;
        out << rec.trial << ',' << family_name(fp.family) << ',' << fp.p << ','
            << format_double(fp.T) << ',' << format_double(fp.a) << ','
            << csv_field(fp.lambda_desc()) << ',' << format_double(fp.qubo_gamma_factor) << ','
            << format_double(rec.median_tts) << ',' << format_double(rec.finite_fraction) << ','
            << (rec.short_circuited ? 1 : 0) << "\n";
    }
    out << fmt::format("# best: trial={} median_tts_ns={} finite={} failed={}\n",
                       result.best_trial, format_double(result.best_median_tts),
                       format_double(result.best_finite_fraction), result.failed ? 1 : 0);
    write_meta_sidecar(path, config, result.log.size());
}

void write_params_json(const std::string& path, const FamilyParams& params,
                       const TuneResult* tuning) {
    nlohmann::json j{{"family", family_name(params.family)},
                     {"p", params.p},
                     {"T", params.T},
                     {"a", params.a},
                     {"lambda",
                      {{"gamma", params.lambda.gamma},
                       {"offset", params.lambda.offset},
                       {"a", params.lambda.a},
                       {"constant", params.lambda.constant}}},
                     {"lambda_base",
                      params.lambda_base == LambdaBase::DualCertificate ? "dual" : "unit"},
                     {"qubo_gamma_factor", params.qubo_gamma_factor}};
    if (tuning != nullptr) {
        // median may be infinite, which JSON numbers cannot carry; keep it as
        // the same string format_double produces in the CSVs.
        j["tuning"] = {{"trial", tuning->best_trial},
                       {"trials", tuning->log.size()},
                       {"median_tts_ns", format_double(tuning->best_median_tts)},
                       {"finite_fraction", tuning->best_finite_fraction},
                       {"failed", tuning->failed}};
    }
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

FamilyParams read_params_json(const std::string& path) {
    const nlohmann::json j = read_json_file(path);
    FamilyParams fp;
    fp.family = family_from_name(j.at("family").get<std::string>());
    fp.p = j.at("p").get<int>();
    fp.T = j.at("T").get<double>();
    fp.a = j.at("a").get<double>();
    if (j.contains("lambda")) {
        const nlohmann::json& l = j.at("lambda");
        fp.lambda.gamma = l.value("gamma", 1.0);
        fp.lambda.offset = l.value("offset", 0.0);
        fp.lambda.a = l.value("a", 0.0);
        fp.lambda.constant = l.value("constant", false);
    }
    const std::string base = j.value("lambda_base", "dual");
    if (base == "dual") fp.lambda_base = LambdaBase::DualCertificate;
    else if (base == "unit") fp.lambda_base = LambdaBase::Unit;
    else throw std::runtime_error("params json: unknown lambda_base '" + base + "'");
    fp.qubo_gamma_factor = j.value("qubo_gamma_factor", 1.0);
    return fp;
}

void write_qubo_text(const std::string& path, const QuboModel& q) {
    auto out = open_out(path);
    out << fmt::format("# quadratic model: {} problem bits + {} slack bits = {} variables\n",
                       q.num_x, q.num_y, q.num_x + q.num_y);
    out << "# penalty weights:";
    for (const Rational& g : q.gammas) out << ' ' << to_string(g);
    out << "\n";
    for (const SlackBlock& s : q.slacks)
        out << fmt::format("# slack {}: first_var={} bits={} top_weight={} cmax={}\n",
                           s.constraint, s.first_var, s.num_bits, s.top_weight, s.c_max);
    out << "# offset: " << to_string(q.offset) << "\n";
    for (const auto& [var, coeff] : q.linear)
        out << var << ' ' << var << ' ' << to_string(coeff) << "\n";
    for (const auto& [pair, coeff] : q.quadratic)
        out << pair.first << ' ' << pair.second << ' ' << to_string(coeff) << "\n";
    write_meta_sidecar(path, nlohmann::json::object(),
                       q.linear.size() + q.quadratic.size());
}

nlohmann::json circuit_to_json(const Circuit& c, const ScheduledCircuit* timing,
                               const ConnectivityReport& conn) {
    static const std::map<GateKind, const char*> kKindNames = {
        {GateKind::RZ, "rz"}, {GateKind::RX, "rx"}, {GateKind::RZZ, "rzz"},
        {GateKind::RXX, "rxx"}};
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : c.gates)
        gates.push_back(nlohmann::json::array(
            {kKindNames.at(g.kind), g.q0, g.q1, g.angle}));
    nlohmann::json j{{"family", family_name(c.family)},
                     {"qubits", c.qubits},
                     {"layers", c.layers},
                     {"gates", gates},
                     {"layer_starts", c.layer_starts}};
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : conn.edges) edges.push_back(nlohmann::json::array({a, b}));
    j["connectivity"] = {{"qubits", conn.qubits},
                         {"max_degree", conn.max_degree},
                         {"topology", conn.topology},
                         {"edges", edges}};
    if (timing != nullptr) {
        nlohmann::json profile = nlohmann::json::array();
        for (const Sublayer& s : timing->sublayers)
            profile.push_back(nlohmann::json::array(
                {s.two_qubit ? 1 : 0, s.slots, s.gates.size()}));
        j["timing"] = {{"sublayers", timing->sublayers.size()},
                       {"total_time_ns", timing->total_time_ns},
                       {"sublayer_profile", profile}};
    }
    return j;
}

Report build_report(const std::vector<RunMetrics>& rows) {
    if (rows.empty()) throw std::invalid_argument("build_report: no rows");
    struct Bucket {
        std::vector<double> p, T, qubits, r99, tts;
        int skipped = 0;
    };
    std::map<std::pair<int, long long>, Bucket> buckets;
    for (const RunMetrics& r : rows) {
        Bucket& b = buckets[{static_cast<int>(r.family), r.cell}];
        if (r.skipped) {
            ++b.skipped;
            continue;
        }
        b.p.push_back(r.p);
        b.T.push_back(r.T);
        b.qubits.push_back(r.qubits);
        b.r99.push_back(r.r99);
        b.tts.push_back(r.tts_ns);
    }
    Report report;
    for (const auto& [key, b] : buckets) {
        ReportRow row;
        row.family = static_cast<Family>(key.first);
        row.cell = key.second;
        row.count = static_cast<int>(b.p.size());
        row.skipped = b.skipped;
        if (row.count > 0) {
            row.mean_p = mean_of(b.p);
            row.mean_T = mean_of(b.T);
            row.mean_qubits = mean_of(b.qubits);
            row.median_r99 = aggregate(b.r99).median;
            const Aggregate tts = aggregate(b.tts);
            row.median_tts_ns = tts.median;
            row.finite_fraction = tts.finite_fraction;
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.mean_p = row.mean_T = row.mean_qubits = nan;
            row.median_r99 = row.median_tts_ns = nan;
        }
        report.rows.push_back(row);
    }
    for (const Family f : {Family::LD, Family::QUBO}) {
        std::vector<double> xs, ys;
        for (const ReportRow& row : report.rows)
            if (row.family == f && row.count > 0) {
                xs.push_back(static_cast<double>(row.cell));
                ys.push_back(row.mean_p);
            }
        if (xs.size() < 2) continue;
        const double mx = mean_of(xs), my = mean_of(ys);
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        if (sxx == 0.0) continue;  // a single repeated cell value has no trend
        FamilyTrend trend;
        trend.family = f;
        trend.cells = static_cast<int>(xs.size());
        trend.slope = sxy / sxx;
        trend.intercept = my - trend.slope * mx;
        report.trends.push_back(trend);
    }
    return report;
}

void write_report_csv(const std::string& path, const Report& report,
                      const nlohmann::json& config) {
    auto out = open_out(path);
    out << "# config: " << config.dump() << "\n";
    out << "family,cell,count,skipped,mean_p,mean_T,mean_qubits,median_r99,median_tts_ns,"
           "finite_fraction\n";
    for (const ReportRow& r : report.rows) {
        out << family_name(r.family) << ',' << r.cell << ',' << r.count << ',' << r.skipped
            << ',' << format_double(r.mean_p) << ',' << format_double(r.mean_T) << ','
            << format_double(r.mean_qubits) << ',' << format_double(r.median_r99) << ','
            << format_double(r.median_tts_ns) << ',' << format_double(r.finite_fraction)
            << "\n";
    }
    for (const FamilyTrend& t : report.trends)
        out << fmt::format("# trend: family={} cells={} slope={} intercept={}\n",
                           family_name(t.family), t.cells, format_double(t.slope),
                           format_double(t.intercept));
    write_meta_sidecar(path, config, report.rows.size());
}

}  // namespace daqc
