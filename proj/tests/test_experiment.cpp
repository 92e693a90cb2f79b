#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qgraph/errors.hpp"
#include "qgraph/experiment.hpp"
#include "qgraph/numeric.hpp"

using namespace qgraph;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / "qgraph_experiment_tests";
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string file(const char* name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

json step_system() { return json{{"system", {{"step", {{"b", 0.3}, {"lambda", 0.5}}}}}}; }

json nonregular_trig_system() {
    return json::parse(R"({
        "system": {"trig": {"S0": 1.0, "gamma0": 0.5,
            "terms": [{"a": 0.6, "S": 0.8, "gamma": 0.0},
                      {"a": 0.5, "S": 0.3, "gamma": 0.25}]}}
    })");
}

} // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("config parsing accepts the documented shapes") {
    json j = step_system();
    j["task"] = "converge";
    j["n_list"] = {1, 10};
    j["q_list"] = {{"from", 1}, {"to", 5}};
    j["nu_max"] = 60;
    j["threads"] = 2;
    ExperimentConfig cfg = experiment_from_json(j);
    CHECK(cfg.task == "converge");
    CHECK(cfg.n_list == std::vector<long>{1, 10});
    CHECK(cfg.q_list == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(cfg.expansion.nu_max == 60);
    CHECK(cfg.threads == 2);

    json chain = {{"system", {{"regions", json::array({{{"length", 1.0}, {"lambda", 0.0}}})}}}};
    CHECK_NOTHROW(experiment_from_json(chain));
}

TEST_CASE("config parsing rejects junk") {
    json j = step_system();
    j["task"] = "solve";
    j["n"] = 1;

    json unknown = j;
    unknown["surprise"] = 1;
    CHECK_THROWS_AS(experiment_from_json(unknown), ConfigError);

    json bad_system = j;
    bad_system["system"] = {{"step", {{"b", 1.5}, {"lambda", 0.5}}}};
    CHECK_THROWS_AS(experiment_from_json(bad_system), ConfigError);

    json bad_key = j;
    bad_key["system"] = {{"step", {{"b", 0.3}, {"lambda", 0.5}, {"c", 1}}}};
    CHECK_THROWS_AS(experiment_from_json(bad_key), ConfigError);

    json bad_task = j;
    bad_task["task"] = "meditate";
    CHECK_THROWS_AS(experiment_from_json(bad_task), ConfigError);

    json bad_format = j;
    bad_format["format"] = "xml";
    CHECK_THROWS_AS(experiment_from_json(bad_format), ConfigError);

    json bad_trig = j;
    bad_trig["system"] = {{"trig", {{"S0", 1.0}, {"gamma0", 0.5},
                                    {"terms", json::array({{{"a", 0.1}, {"S", 2.0}}})}}}};
    CHECK_THROWS_AS(experiment_from_json(bad_trig), ConfigError); // S >= S0
}

TEST_CASE("regularity task reports and exits 0 either way") {
    Scratch scratch;
    std::ostringstream diag;

    json j = nonregular_trig_system();
    j["task"] = "regularity";
    j["out"] = scratch.file("reg.json");
    j["format"] = "json";
    ExperimentConfig cfg = experiment_from_json(j);
    CHECK(run(cfg, diag) == kExitOk);
    json report = json::parse(slurp(scratch.file("reg.json")));
    CHECK(report.at("regular") == false);
    CHECK(report.at("alpha").get<double>() == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(report.at("u").is_null());

    json j2 = step_system();
    j2["task"] = "regularity";
    j2["out"] = scratch.file("reg.csv");
    ExperimentConfig cfg2 = experiment_from_json(j2);
    CHECK(run(cfg2, diag) == kExitOk);
    std::string csv = slurp(scratch.file("reg.csv"));
    CHECK(csv.find("alpha,regular,u,gamma,mu,S0") == 0);
    CHECK(csv.find("true") != std::string::npos);
}

TEST_CASE("solve on a non-regular system exits 3") {
    Scratch scratch;
    std::ostringstream diag;
    json j = nonregular_trig_system();
    j["task"] = "solve";
    j["n"] = 1;
    j["out"] = scratch.file("solve.csv");
    ExperimentConfig cfg = experiment_from_json(j);
    CHECK(run(cfg, diag) == kExitNonRegular);
    CHECK_FALSE(fs::exists(scratch.file("solve.csv")));
    CHECK(diag.str().find("regular") != std::string::npos);
}

TEST_CASE("solve needs a step system even when regular") {
    std::ostringstream diag;
    json j = {{"system", {{"regions", json::array({{{"length", 1.0}, {"lambda", 0.0}},
                                                   {{"length", 0.5}, {"lambda", 0.5}}})}}},
              {"task", "solve"},
              {"n", 1}};
    ExperimentConfig cfg = experiment_from_json(j);
    CHECK(run(cfg, diag) == kExitConfig);
}

TEST_CASE("roots of the free chain are n*pi") {
    Scratch scratch;
    std::ostringstream diag;
    json j = {{"system", {{"regions", json::array({{{"length", 1.0}, {"lambda", 0.0}}})}}},
              {"task", "roots"},
              {"n_max", 10},
              {"out", scratch.file("roots.csv")}};
    ExperimentConfig cfg = experiment_from_json(j);
    REQUIRE(run(cfg, diag) == kExitOk);

    std::ifstream f(scratch.file("roots.csv"));
    std::string header;
    std::getline(f, header);
    CHECK(header == "n,sep_lo,sep_hi,k,zone_margin");
    std::string line;
    long n = 0;
    while (std::getline(f, line)) {
        ++n;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        CHECK(std::stol(cell) == n);
        std::getline(row, cell, ',');
        std::getline(row, cell, ',');
        std::getline(row, cell, ',');
        double k = std::stod(cell);
        CHECK(std::abs(k - n * kPi) / (n * kPi) < 1e-12);
    }
    CHECK(n == 10);
}

TEST_CASE("roots on a non-regular system exits 3") {
    std::ostringstream diag;
    json j = nonregular_trig_system();
    j["task"] = "roots";
    j["n_max"] = 3;
    ExperimentConfig cfg = experiment_from_json(j);
    cfg.out = "/nonexistent/never-written.csv"; // must not be reached
    CHECK(run(cfg, diag) == kExitNonRegular);
}

TEST_CASE("converge emits the stable table and is byte-reproducible") {
    Scratch scratch;
    std::ostringstream diag;
    json j = step_system();
    j["task"] = "converge";
    j["n_list"] = {1, 10};
    j["q_list"] = {{"from", 1}, {"to", 6}};
    j["out"] = scratch.file("a.csv");
    ExperimentConfig cfg = experiment_from_json(j);
    REQUIRE(run(cfg, diag) == kExitOk);
    cfg.out = scratch.file("b.csv");
    REQUIRE(run(cfg, diag) == kExitOk);

    std::string a = slurp(scratch.file("a.csv"));
    CHECK(a == slurp(scratch.file("b.csv")));

    std::istringstream is(a);
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,q,k_explicit,k_oracle,eps");
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    CHECK(rows == 2 * 6);
    CHECK(a.back() == '\n');
}

TEST_CASE("converge without q_list is a config error and writes nothing") {
    Scratch scratch;
    std::ostringstream diag;
    json j = step_system();
    j["task"] = "converge";
    j["n_list"] = {1};
    j["out"] = scratch.file("never.csv");
    ExperimentConfig cfg = experiment_from_json(j);
    CHECK(run(cfg, diag) == kExitConfig);
    CHECK_FALSE(fs::exists(scratch.file("never.csv")));

    json empty = j;
    empty["q_list"] = json::array();
    CHECK_THROWS_AS(experiment_from_json(empty), ConfigError);
}

TEST_CASE("unwritable output reports a runtime failure") {
    std::ostringstream diag;
    json j = step_system();
    j["task"] = "regularity";
    ExperimentConfig cfg = experiment_from_json(j);
    cfg.out = "/nonexistent_dir/qgraph_out.csv";
    CHECK(run(cfg, diag) == kExitNumerical);
}

TEST_CASE("orbits task emits words or classes") {
    Scratch scratch;
    std::ostringstream diag;
    json j = step_system();
    j["task"] = "orbits";
    j["q_max"] = 3;
    j["out"] = scratch.file("orbits.csv");
    ExperimentConfig cfg = experiment_from_json(j);
    REQUIRE(run(cfg, diag) == kExitOk);
    std::string csv = slurp(scratch.file("orbits.csv"));
    CHECK(csv.find("word,q,n1,n2,sigma,tau,chi,S_p,A_p") == 0);
    CHECK(csv.find("112,3,2,1") != std::string::npos);

    j["use_grouped"] = true;
    j["out"] = scratch.file("classes.csv");
    ExperimentConfig grouped = experiment_from_json(j);
    REQUIRE(run(grouped, diag) == kExitOk);
    std::string classes = slurp(scratch.file("classes.csv"));
    CHECK(classes.find("q,n1,n2,j,multiplicity") == 0);

    json trig = nonregular_trig_system();
    trig["task"] = "orbits";
    trig["q_max"] = 2;
    CHECK(run(experiment_from_json(trig), diag) == kExitConfig); // needs a step system
}

TEST_SUITE_END();
