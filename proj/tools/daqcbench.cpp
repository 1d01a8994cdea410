// daqcbench — compile constrained binary problems into discretized adiabatic
// circuits (dual-multiplier or penalty/QUBO form), simulate them exactly, and
// score time-to-solution. Subcommands:
//
//   gen      draw a reproducible instance dataset and write it with a manifest
//   solve    run both classical oracles over a dataset and cross-check them
//   compile  build one instance's circuit; dump JSON, timing, connectivity
//   tune     random-search schedule parameters against a training set
//   bench    evaluate a parameter set over a dataset into a metrics CSV
//   report   roll metrics CSVs up per cell and fit layer-count trends
//
// Every artifact is reproducible byte-for-byte given the same arguments; see
// README.md for the exact guarantees.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "daqc/duality.hpp"
#include "daqc/io.hpp"
#include "daqc/pipeline.hpp"
#include "daqc/qubo.hpp"
#include "daqc/rational.hpp"
#include "daqc/sim/statevector.hpp"
#include "daqc/tuner.hpp"

namespace {

using daqc::Family;
using nlohmann::json;

std::string default_out_dir() {
    const char* env = std::getenv("DAQCBENCH_OUT");
    return env != nullptr && *env != '\0' ? env : "./out";
}

struct CommonOpts {
    std::uint64_t seed = 12345;
    std::string out_dir = default_out_dir();
    std::string norm_mode = "pauli2";
    std::string norm_time = "perlayer";
    std::string timing = "fused";
    int qubit_cap = 22;
    int jobs = 1;
};

daqc::EvalOptions eval_options(const CommonOpts& c) {
    daqc::EvalOptions o;
    if (c.norm_mode == "pauli2")
        o.norm_mode = daqc::NormMode::Pauli2;
    else if (c.norm_mode == "frobenius")
        o.norm_mode = daqc::NormMode::MatrixFrobenius;
    else
        throw CLI::ValidationError("--norm-mode", "expected pauli2 or frobenius");
    if (c.norm_time == "perlayer")
        o.norm_time = daqc::NormTime::PerLayer;
    else if (c.norm_time == "fixed")
        o.norm_time = daqc::NormTime::FixedAtT;
    else
        throw CLI::ValidationError("--norm-time", "expected perlayer or fixed");
    if (c.timing == "fused")
        o.timing = daqc::TimingMode::Fused;
    else if (c.timing == "unfused")
        o.timing = daqc::TimingMode::Unfused;
    else if (c.timing == "closed-form")
        o.timing = daqc::TimingMode::ClosedForm;
    else
        throw CLI::ValidationError("--timing-mode", "expected fused, unfused, or closed-form");
    o.qubit_cap = c.qubit_cap;
    return o;
}

json common_config(const CommonOpts& c) {
    return json{{"seed", c.seed},     {"norm_mode", c.norm_mode}, {"norm_time", c.norm_time},
                {"timing", c.timing}, {"qubit_cap", c.qubit_cap}};
}

std::string out_path(const CommonOpts& c, const std::string& name) {
    return (std::filesystem::path(c.out_dir) / name).string();
}

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "master seed (default 12345)");
    cmd->add_option("--out-dir", c.out_dir,
                    "artifact directory (default $DAQCBENCH_OUT or ./out)");
    cmd->add_option("--norm-mode", c.norm_mode, "pauli2 | frobenius");
    cmd->add_option("--norm-time", c.norm_time, "perlayer | fixed");
    cmd->add_option("--timing-mode", c.timing, "fused | unfused | closed-form");
    cmd->add_option("--qubit-cap", c.qubit_cap, "skip instances needing more qubits");
    cmd->add_option("--jobs", c.jobs, "worker threads where supported");
}

daqc::KnapsackInstance pick_instance(const std::vector<daqc::KnapsackInstance>& all,
                                     const std::string& id) {
    if (id.empty()) {
        if (all.size() != 1)
            throw CLI::ValidationError("--id", "dataset has several instances; pick one");
        return all.front();
    }
    for (const auto& kp : all)
        if (kp.id == id) return kp;
    throw CLI::ValidationError("--id", "no instance named " + id);
}

struct ParamFlags {
    std::string params_file;
    int p = 10;
    double T = 10.0;
    double a = 0.0;
    double lam_gamma = 1.0;
    double lam_offset = 0.0;
    double lam_a = 0.0;
    bool lam_const = false;
    std::string lambda_base = "dual";
    double qubo_gamma_factor = 1.0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--params", f.params_file, "JSON parameter file (overrides flags)");
    cmd->add_option("--p", f.p, "Trotter layers");
    cmd->add_option("--T", f.T, "total anneal time");
    cmd->add_option("--a", f.a, "schedule shape");
    cmd->add_option("--lam-gamma", f.lam_gamma, "multiplier schedule weight");
    cmd->add_option("--lam-offset", f.lam_offset, "multiplier schedule onset time");
    cmd->add_option("--lam-a", f.lam_a, "multiplier schedule shape");
    cmd->add_flag("--lam-const", f.lam_const, "hold the multiplier constant at its weight");
    cmd->add_option("--lambda-base", f.lambda_base,
                    "dual: weight scales the instance's certified multiplier; unit: verbatim");
    cmd->add_option("--qubo-gamma-factor", f.qubo_gamma_factor,
                    "penalty weight as a multiple of sum(v)+1");
}

daqc::LambdaBase parse_lambda_base(const std::string& name) {
    if (name == "dual") return daqc::LambdaBase::DualCertificate;
    if (name == "unit") return daqc::LambdaBase::Unit;
    throw CLI::ValidationError("--lambda-base", "expected dual or unit");
}

daqc::FamilyParams resolve_params(const ParamFlags& f, Family family) {
    if (!f.params_file.empty()) {
        daqc::FamilyParams fp = daqc::read_params_json(f.params_file);
        fp.family = family;  // the flag wins; the file may predate a family switch
        return fp;
    }
    daqc::FamilyParams fp;
    fp.family = family;
    fp.p = f.p;
    fp.T = f.T;
    fp.a = f.a;
    fp.lambda = {f.lam_gamma, f.lam_offset, f.lam_a, f.lam_const};
    fp.lambda_base = parse_lambda_base(f.lambda_base);
    fp.qubo_gamma_factor = f.qubo_gamma_factor;
    return fp;
}

int run_gen(const CommonOpts& c, int superset, int n_lo, int n_hi, int count,
            std::vector<long long> c_bounds, int fixed_n) {
    std::vector<daqc::KnapsackInstance> all;
    json config = common_config(c);
    config["superset"] = superset;
    config["count_per_cell"] = count;
    if (superset == 1) {
        all = daqc::generate_superset1(c.seed, n_lo, n_hi, count);
        config["n_lo"] = n_lo;
        config["n_hi"] = n_hi;
    } else if (superset == 2) {
        if (c_bounds.empty()) c_bounds = {10, 20, 40};
        all = daqc::generate_superset2(c.seed, c_bounds, count, fixed_n);
        config["c_bounds"] = c_bounds;
        config["n"] = fixed_n;
    } else {
        throw CLI::ValidationError("--superset", "expected 1 or 2");
    }
    const std::string dir =
        (std::filesystem::path(c.out_dir) / ("dataset-s" + std::to_string(superset))).string();
    const std::string manifest = daqc::write_dataset(dir, c.seed, all, config);
    std::cout << "wrote " << all.size() << " instances -> " << manifest << "\n";
    return 0;
}

int run_solve(const std::string& instances_path) {
    const auto all = daqc::read_instances(instances_path);
    int mismatches = 0;
    for (const auto& kp : all) {
        const auto canonical = daqc::to_canonical(kp);
        const long long dp = daqc::solve_dp(kp);
        const auto oracle = daqc::solve_bruteforce(canonical);
        const bool ok = daqc::Rational(dp) == -oracle.optimal_value;
        mismatches += ok ? 0 : 1;
        std::cout << kp.id << " n=" << kp.n << " c=" << kp.c << " optimum=" << dp
                  << " optima=" << oracle.success_set.size() << (ok ? "" : "  MISMATCH")
                  << "\n";
    }
    std::cout << (mismatches == 0 ? "oracles agree on " : "ORACLE MISMATCHES: ")
              << (mismatches == 0 ? std::to_string(all.size()) + " instances"
                                  : std::to_string(mismatches))
              << "\n";
    return mismatches == 0 ? 0 : 1;
}

int run_compile(const CommonOpts& c, const std::string& instances_path, const std::string& id,
                Family family, const ParamFlags& pf) {
    const daqc::KnapsackInstance kp = pick_instance(daqc::read_instances(instances_path), id);
    const daqc::FamilyParams fp = resolve_params(pf, family);
    const daqc::EvalOptions opts = eval_options(c);
    const auto canonical = daqc::to_canonical(kp);
    const daqc::ScheduleParams sp{fp.T, fp.p, fp.a};

    daqc::Circuit circuit;
    json extra;
    if (family == Family::LD) {
        const auto plan = daqc::build_trotter_plan(canonical, sp,
                                                   {daqc::resolve_lambda(canonical, fp)},
                                                   opts.norm_mode, opts.norm_time);
        circuit = daqc::build_ld_circuit(plan, canonical);
    } else {
        const daqc::Rational gamma =
            daqc::rational_from_double(fp.qubo_gamma_factor, 12) * daqc::default_penalty(kp);
        const auto qubo = daqc::build_kp_qubo(kp, gamma);
        const auto ising = daqc::qubo_to_ising(qubo);
        const auto plan = daqc::build_trotter_plan(ising, sp, opts.norm_mode);
        circuit = daqc::build_qubo_circuit(plan, ising);
        const std::string qubo_path = out_path(c, kp.id + "-qubo.txt");
        daqc::write_qubo_text(qubo_path, qubo);
        extra["qubo_export"] = qubo_path;
    }

    const auto conn = daqc::connectivity_report(circuit);
    json j;
    if (opts.timing == daqc::TimingMode::ClosedForm) {
        j = daqc::circuit_to_json(circuit, nullptr, conn);
        j["timing"] = {{"total_time_ns", daqc::tss_closed_form(family, kp.n, kp.c, fp.p)},
                       {"closed_form", true}};
    } else {
        const auto sched = daqc::schedule_sublayers(circuit, opts.timing);
        j = daqc::circuit_to_json(circuit, &sched, conn);
    }
    j["instance"] = daqc::instance_to_json(kp);
    j["config"] = common_config(c);
    for (auto& [k, v] : extra.items()) j[k] = v;

    const std::string path = out_path(c, kp.id + "-" + daqc::family_name(family) + ".json");
    std::filesystem::create_directories(c.out_dir);
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
    std::cout << "circuit: " << circuit.qubits << " qubits, " << circuit.gates.size()
              << " gates over " << circuit.layers << " layers; topology " << conn.topology
              << "\n";
    std::cout << "schedule time: " << daqc::format_double(j["timing"]["total_time_ns"].get<double>())
              << " ns -> " << path << "\n";
    return 0;
}

int run_tune(const CommonOpts& c, const std::string& instances_path, Family family, int trials,
             bool allow_short_circuit, daqc::SearchSpace space) {
    const auto train = daqc::read_instances(instances_path);
    const auto result = daqc::random_search(train, family, space, trials, c.seed,
                                            eval_options(c), c.jobs, allow_short_circuit);
    json config = common_config(c);
    config["trials"] = trials;
    config["family"] = daqc::family_name(family);
    config["train"] = instances_path;
    const std::string log_path = out_path(c, "tune-" + daqc::family_name(family) + "-log.csv");
    const std::string best_path =
        out_path(c, "tune-" + daqc::family_name(family) + "-best.json");
    daqc::write_trial_log_csv(log_path, result, config);
    daqc::write_params_json(best_path, result.best, &result);
    std::cout << "best trial " << result.best_trial << ": median TTS "
              << daqc::format_double(result.best_median_tts) << " ns, finite fraction "
              << daqc::format_double(result.best_finite_fraction)
              << (result.failed ? " (no finite median found)" : "") << "\n";
    std::cout << "log -> " << log_path << "\nparams -> " << best_path << "\n";
    return result.failed ? 1 : 0;
}

int run_bench(const CommonOpts& c, const std::string& instances_path, Family family,
              const ParamFlags& pf, const std::string& csv_name) {
    const auto all = daqc::read_instances(instances_path);
    const daqc::FamilyParams fp = resolve_params(pf, family);
    const daqc::EvalOptions opts = eval_options(c);
    std::vector<daqc::RunMetrics> rows;
    rows.reserve(all.size());
    for (const auto& kp : all) rows.push_back(daqc::evaluate_instance(kp, fp, opts));
    json config = common_config(c);
    config["family"] = daqc::family_name(family);
    config["instances"] = instances_path;
    config["params"] = {{"p", fp.p}, {"T", fp.T}, {"a", fp.a}, {"lambda", fp.lambda_desc()}};
    const std::string path = out_path(c, csv_name);
    daqc::write_metrics_csv(path, rows, config);
    std::vector<double> tts;
    int skipped = 0;
    for (const auto& r : rows) {
        if (r.skipped)
            ++skipped;
        else
            tts.push_back(r.tts_ns);
    }
    if (!tts.empty()) {
        const auto agg = daqc::aggregate(tts);
        std::cout << "evaluated " << agg.count << " instances (" << skipped
                  << " skipped): median TTS " << daqc::format_double(agg.median)
                  << " ns, finite fraction " << daqc::format_double(agg.finite_fraction)
                  << "\n";
    } else {
        std::cout << "evaluated 0 instances (" << skipped << " skipped)\n";
    }
    std::cout << "metrics -> " << path << "\n";
    return 0;
}

int run_report(const CommonOpts& c, const std::vector<std::string>& metrics_paths,
               const std::string& csv_name) {
    std::vector<daqc::RunMetrics> rows;
    for (const std::string& path : metrics_paths) {
        auto part = daqc::read_metrics_csv(path);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const daqc::Report report = daqc::build_report(rows);
    json config = common_config(c);
    config["inputs"] = metrics_paths;
    const std::string path = out_path(c, csv_name);
    daqc::write_report_csv(path, report, config);
    for (const auto& t : report.trends)
        std::cout << "trend " << daqc::family_name(t.family) << ": mean layers ~ "
                  << daqc::format_double(t.slope) << " * cell + "
                  << daqc::format_double(t.intercept) << " over " << t.cells << " cells\n";
    std::cout << "report -> " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discretized adiabatic compiler + exact simulator benchmark"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string family_name = "ld";
    const auto family = [&family_name]() {
        return daqc::family_from_name(family_name);
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate a dataset");
    int superset = 1, n_lo = 4, n_hi = 7, count = 20, fixed_n = 11;
    std::vector<long long> c_bounds;
    add_common(gen, common);
    gen->add_option("--superset", superset, "1 (size sweep) or 2 (coefficient sweep)");
    gen->add_option("--n-lo", n_lo, "smallest item count (superset 1)");
    gen->add_option("--n-hi", n_hi, "largest item count (superset 1)");
    gen->add_option("--count", count, "instances per cell");
    gen->add_option("--c-bounds", c_bounds, "coefficient bounds (superset 2)");
    gen->add_option("--n", fixed_n, "item count (superset 2)");

    // solve
    auto* solve = app.add_subcommand("solve", "cross-check the classical oracles");
    std::string solve_instances;
    add_common(solve, common);
    solve->add_option("--instances", solve_instances, "instance file or manifest")->required();

    // compile
    auto* compile = app.add_subcommand("compile", "compile one instance to a circuit");
    std::string compile_instances, compile_id;
    ParamFlags compile_params;
    add_common(compile, common);
    compile->add_option("--instances", compile_instances, "instance file or manifest")
        ->required();
    compile->add_option("--id", compile_id, "instance id (optional if the file has one)");
    compile->add_option("--family", family_name, "ld | qubo");
    add_param_flags(compile, compile_params);

    // tune
    auto* tune = app.add_subcommand("tune", "random-search schedule parameters");
    std::string tune_instances;
    int trials = 200;
    bool short_circuit = false;
    daqc::SearchSpace space;
    add_common(tune, common);
    tune->add_option("--instances", tune_instances, "training instances")->required();
    tune->add_option("--family", family_name, "ld | qubo");
    tune->add_option("--trials", trials, "random search budget");
    tune->add_flag("--short-circuit", short_circuit,
                   "abandon trials that cannot beat the incumbent (jobs=1 only)");
    tune->add_option("--p-lo", space.p_lo, "layer count lower bound");
    tune->add_option("--p-hi", space.p_hi, "layer count upper bound");
    tune->add_option("--t-lo", space.t_lo, "anneal time lower bound");
    tune->add_option("--t-hi", space.t_hi, "anneal time upper bound");
    std::string tune_lambda_base = "dual";
    tune->add_option("--lambda-base", tune_lambda_base,
                     "dual: weights scale each instance's certified multiplier; unit: verbatim");

    // bench
    auto* bench = app.add_subcommand("bench", "evaluate parameters over a dataset");
    std::string bench_instances, bench_csv = "metrics.csv";
    ParamFlags bench_params;
    add_common(bench, common);
    bench->add_option("--instances", bench_instances, "instance file or manifest")->required();
    bench->add_option("--family", family_name, "ld | qubo");
    bench->add_option("--csv", bench_csv, "output CSV name");
    add_param_flags(bench, bench_params);

    // report
    auto* report = app.add_subcommand("report", "aggregate metrics CSVs per cell");
    std::vector<std::string> report_inputs;
    std::string report_csv = "report.csv";
    add_common(report, common);
    report->add_option("--metrics", report_inputs, "metrics CSV paths")->required();
    report->add_option("--csv", report_csv, "output CSV name");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(common, superset, n_lo, n_hi, count, c_bounds, fixed_n);
        if (solve->parsed()) return run_solve(solve_instances);
        if (compile->parsed())
            return run_compile(common, compile_instances, compile_id, family(), compile_params);
        if (tune->parsed()) {
            space.lambda_base = parse_lambda_base(tune_lambda_base);
            return run_tune(common, tune_instances, family(), trials, short_circuit, space);
        }
        if (bench->parsed())
            return run_bench(common, bench_instances, family(), bench_params, bench_csv);
        if (report->parsed()) return run_report(common, report_inputs, report_csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
