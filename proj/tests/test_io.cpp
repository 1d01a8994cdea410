#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "daqc/io.hpp"

using namespace daqc;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("daqc-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunMetrics sample_row(const std::string& id, Family f, double tts) {
    RunMetrics r;
    r.instance_id = id;
    r.family = f;
    r.n = 4;
    r.qubits = f == Family::LD ? 4 : 7;
    r.cell = 4;
    r.capacity = 9;
    r.p = 12;
    r.T = 7.25;
    r.a = -0.5;
    r.lambda_desc = "g=2;o=0.5;a=0";
    r.success_p = 0.125;
    r.r99 = 34.49;
    r.tss_ns = 600.0;
    r.tts_ns = tts;
    return r;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("doubles survive the printed representation exactly") {
    for (const double x : {0.1, 1.0 / 3.0, 2.5e-17, 6.643856189774724, 1e300, 0.0}) {
        CHECK(parse_double(format_double(x)) == x);
    }
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(std::isinf(parse_double("inf")));
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK_THROWS_AS(parse_double("12x"), std::runtime_error);
    CHECK(family_from_name("ld") == Family::LD);
    CHECK(family_from_name("qubo") == Family::QUBO);
    CHECK_THROWS_AS(family_from_name("both"), std::invalid_argument);
}

TEST_CASE("instances round-trip through JSON") {
    KnapsackInstance kp;
    kp.id = "s1-n4-i002";
    kp.n = 4;
    kp.v = {3, 1, 4, 1};
    kp.w = {5, 9, 2, 6};
    kp.c = 11;
    kp.seed = 0xfeedfacecafebeefULL;
    kp.superset = 1;
    kp.cell = 4;
    const auto back = instance_from_json(instance_to_json(kp));
    CHECK(back.id == kp.id);
    CHECK(back.v == kp.v);
    CHECK(back.w == kp.w);
    CHECK(back.c == kp.c);
    CHECK(back.seed == kp.seed);
    CHECK(back.superset == kp.superset);
    CHECK(back.cell == kp.cell);

    auto bad = instance_to_json(kp);
    bad["v"] = {1, 2};
    CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
}

TEST_CASE("datasets write a manifest and read back in order") {
    const auto dir = fresh_dir("dataset");
    const auto original = generate_superset1(21, 3, 5, 3);
    const auto manifest = write_dataset(dir.string(), 21, original, {{"purpose", "test"}});
    CHECK(std::filesystem::exists(manifest));
    CHECK(std::filesystem::exists(dir / "cell-s1-n4.json"));

    const auto loaded = read_instances(manifest);
    REQUIRE(loaded.size() == original.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].id == original[i].id);
        CHECK(loaded[i].v == original[i].v);
        CHECK(loaded[i].seed == original[i].seed);
    }

    // a single cell file is also a valid instance source
    const auto cell = read_instances((dir / "cell-s1-n3.json").string());
    CHECK(cell.size() == 3);
    CHECK(cell[0].id == "s1-n3-i000");

    CHECK_THROWS_AS(read_instances((dir / "missing.json").string()), std::runtime_error);
}

TEST_CASE("metrics tables round-trip including infinities and skips") {
    const auto dir = fresh_dir("metrics");
    std::vector<RunMetrics> rows;
    rows.push_back(sample_row("a", Family::LD, 123.456));
    rows.push_back(sample_row("b", Family::LD, std::numeric_limits<double>::infinity()));
    RunMetrics skipped = sample_row("c", Family::QUBO, 0.0);
    skipped.skipped = true;
    skipped.skip_reason = "register 31 exceeds cap 22";
    rows.push_back(skipped);

    const auto path = (dir / "metrics.csv").string();
    write_metrics_csv(path, rows, {{"run", 1}});
    const auto back = read_metrics_csv(path);
    REQUIRE(back.size() == 3);
    CHECK(back[0].instance_id == "a");
    CHECK(back[0].tts_ns == 123.456);
    CHECK(back[0].T == 7.25);
    CHECK(back[0].lambda_desc == "g=2;o=0.5;a=0");
    CHECK(std::isinf(back[1].tts_ns));
    CHECK(back[2].skipped);
    CHECK(back[2].skip_reason == "register 31 exceeds cap 22");
    CHECK(back[2].family == Family::QUBO);

    // summary comment lines are present but ignored by the reader
    const auto text = slurp(path);
    CHECK(text.find("# summary: family=ld") != std::string::npos);
    CHECK(text.find("# skipped: 1") != std::string::npos);
    // the sidecar carries the timestamp so the table itself stays stable
    CHECK(std::filesystem::exists(path + ".meta.json"));
    CHECK(text.find("written_at") == std::string::npos);

    const auto path2 = (dir / "metrics2.csv").string();
    write_metrics_csv(path2, rows, {{"run", 1}});
    CHECK(slurp(path) == slurp(path2));  // byte-identical rerun
}

TEST_CASE("parameter files round-trip for both families") {
    const auto dir = fresh_dir("params");
    FamilyParams fp;
    fp.family = Family::LD;
    fp.p = 37;
    fp.T = 19.5;
    fp.a = -1.25;
    fp.lambda.gamma = 3.75;
    fp.lambda.offset = -2.5;
    fp.lambda.a = 0.875;
    const auto path = (dir / "params.json").string();
    write_params_json(path, fp);
    const auto back = read_params_json(path);
    CHECK(back.family == Family::LD);
    CHECK(back.p == 37);
    CHECK(back.T == 19.5);
    CHECK(back.a == -1.25);
    CHECK(back.lambda.gamma == 3.75);
    CHECK(back.lambda.offset == -2.5);
    CHECK(back.lambda.a == 0.875);
    CHECK_FALSE(back.lambda.constant);
}

TEST_CASE("trial logs list every trial plus the outcome") {
    const auto dir = fresh_dir("trials");
    TuneResult result;
    for (int t = 0; t < 3; ++t) {
        TrialRecord rec;
        rec.trial = t;
        rec.params.family = Family::QUBO;
        rec.params.p = 5 + t;
        rec.median_tts = 1000.0 - t;
        rec.finite_fraction = 1.0;
        result.log.push_back(rec);
    }
    result.best = result.log[2].params;
    result.best_trial = 2;
    result.best_median_tts = 998.0;
    result.best_finite_fraction = 1.0;
    const auto path = (dir / "log.csv").string();
    write_trial_log_csv(path, result, {});
    const auto text = slurp(path);
    CHECK(text.find("0,qubo,5,") != std::string::npos);
    CHECK(text.find("2,qubo,7,") != std::string::npos);
    CHECK(text.find("# best: trial=2 median_tts_ns=998") != std::string::npos);
}

TEST_CASE("quadratic model exports are textual and deterministic") {
    const auto dir = fresh_dir("qubo");
    KnapsackInstance kp;
    kp.n = 2;
    kp.v = {1, 1};
    kp.w = {1, 1};
    kp.c = 1;
    const auto q = build_kp_qubo(kp, Rational(3));
    const auto path = (dir / "model.txt").string();
    write_qubo_text(path, q);
    const auto text = slurp(path);
    CHECK(text.find("2 problem bits + 1 slack bits") != std::string::npos);
    CHECK(text.find("# penalty weights: 3") != std::string::npos);
    CHECK(text.find("0 0 2\n") != std::string::npos);
    CHECK(text.find("2 2 3\n") != std::string::npos);
    CHECK(text.find("0 1 6\n") != std::string::npos);
    CHECK(text.find("1 2 -6\n") != std::string::npos);

    const auto path2 = (dir / "model2.txt").string();
    write_qubo_text(path2, q);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("reports group by family and cell and fit the layer trend") {
    std::vector<RunMetrics> rows;
    for (const long long cell : {4, 6, 8}) {
        for (int i = 0; i < 3; ++i) {
            auto ld = sample_row("ld-" + std::to_string(cell), Family::LD, 100.0 + i);
            ld.cell = cell;
            ld.p = 10;  // flat
            rows.push_back(ld);
            auto qb = sample_row("qb-" + std::to_string(cell), Family::QUBO, 200.0 + i);
            qb.cell = cell;
            qb.p = static_cast<int>(5 * cell);  // slope 5
            rows.push_back(qb);
        }
    }
    const auto report = build_report(rows);
    REQUIRE(report.rows.size() == 6);
    CHECK(report.rows[0].family == Family::LD);
    CHECK(report.rows[0].cell == 4);
    CHECK(report.rows[0].count == 3);
    CHECK(report.rows[0].median_tts_ns == 101.0);
    REQUIRE(report.trends.size() == 2);
    CHECK(report.trends[0].family == Family::LD);
    CHECK(report.trends[0].slope == doctest::Approx(0.0));
    CHECK(report.trends[1].family == Family::QUBO);
    CHECK(report.trends[1].slope == doctest::Approx(5.0));

    const auto dir = fresh_dir("report");
    const auto path = (dir / "report.csv").string();
    write_report_csv(path, report, {});
    const auto text = slurp(path);
    CHECK(text.find("ld,4,3,0,") != std::string::npos);
    CHECK(text.find("# trend: family=qubo cells=3 slope=5") != std::string::npos);

    CHECK_THROWS_AS(build_report({}), std::invalid_argument);
}

}  // TEST_SUITE

// End-to-end checks of the command-line tool, driven through the binary the
// build just produced (path injected via the DAQCBENCH environment variable).
TEST_SUITE("cli") {

namespace {

int run_cli(const std::string& args) {
    const char* bin = std::getenv("DAQCBENCH");
    REQUIRE(bin != nullptr);
    return std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
}

}  // namespace

TEST_CASE("generate, solve, bench, and report compose") {
    const auto dir = fresh_dir("cli").string();
    CHECK(run_cli("gen --superset 1 --n-lo 3 --n-hi 4 --count 2 --out-dir " + dir) == 0);
    const auto manifest = dir + "/dataset-s1/manifest.json";
    REQUIRE(std::filesystem::exists(manifest));
    CHECK(run_cli("solve --instances " + manifest) == 0);
    CHECK(run_cli("bench --instances " + manifest + " --family ld --p 8 --T 6 --lam-gamma 2 "
                  "--csv ld.csv --out-dir " + dir) == 0);
    CHECK(run_cli("bench --instances " + manifest + " --family qubo --p 8 --T 6 "
                  "--csv qubo.csv --out-dir " + dir) == 0);
    CHECK(run_cli("report --metrics " + dir + "/ld.csv " + dir + "/qubo.csv --out-dir " + dir) ==
          0);
    CHECK(std::filesystem::exists(dir + "/report.csv"));

    // rerunning the same bench reproduces the table byte for byte
    const auto before = slurp(dir + "/ld.csv");
    CHECK(run_cli("bench --instances " + manifest + " --family ld --p 8 --T 6 --lam-gamma 2 "
                  "--csv ld.csv --out-dir " + dir) == 0);
    CHECK(slurp(dir + "/ld.csv") == before);
}

TEST_CASE("compile emits circuit JSON and the penalty model export") {
    const auto dir = fresh_dir("cli-compile").string();
    CHECK(run_cli("gen --superset 1 --n-lo 3 --n-hi 3 --count 1 --out-dir " + dir) == 0);
    const auto cells = dir + "/dataset-s1/cell-s1-n3.json";
    CHECK(run_cli("compile --instances " + cells + " --family ld --p 3 --T 2 --out-dir " + dir) ==
          0);
    CHECK(run_cli("compile --instances " + cells + " --family qubo --p 3 --T 2 --out-dir " +
                  dir) == 0);
    CHECK(std::filesystem::exists(dir + "/s1-n3-i000-ld.json"));
    CHECK(std::filesystem::exists(dir + "/s1-n3-i000-qubo.json"));
    const auto qubo_json = slurp(dir + "/s1-n3-i000-qubo.json");
    CHECK(qubo_json.find("\"topology\": \"complete\"") != std::string::npos);
    bool has_export = false;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        has_export |= entry.path().string().find("-qubo.txt") != std::string::npos;
    CHECK(has_export);

    // closed-form timing mode writes the model time instead of a schedule
    CHECK(run_cli("compile --instances " + cells + " --family ld --p 3 --T 2 "
                  "--timing-mode closed-form --out-dir " + dir) == 0);
}

TEST_CASE("tune writes a log and winning parameters usable by bench") {
    const auto dir = fresh_dir("cli-tune").string();
    CHECK(run_cli("gen --superset 1 --n-lo 3 --n-hi 3 --count 2 --out-dir " + dir) == 0);
    const auto cells = dir + "/dataset-s1/cell-s1-n3.json";
    CHECK(run_cli("tune --instances " + cells + " --family ld --trials 5 --p-hi 15 --out-dir " +
                  dir) == 0);
    REQUIRE(std::filesystem::exists(dir + "/tune-ld-best.json"));
    REQUIRE(std::filesystem::exists(dir + "/tune-ld-log.csv"));
    CHECK(run_cli("bench --instances " + cells + " --family ld --params " + dir +
                  "/tune-ld-best.json --csv tuned.csv --out-dir " + dir) == 0);
    CHECK(std::filesystem::exists(dir + "/tuned.csv"));
}

TEST_CASE("invalid arguments fail loudly") {
    const auto dir = fresh_dir("cli-bad").string();
    CHECK(run_cli("gen --superset 3 --out-dir " + dir) != 0);
    CHECK(run_cli("solve --instances " + dir + "/nope.json") != 0);
    CHECK(run_cli("bogus-subcommand") != 0);
}

}  // TEST_SUITE
