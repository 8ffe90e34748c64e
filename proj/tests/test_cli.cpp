// End-to-end checks of the command-line interface: exit codes, file formats,
// embedded manifests, and byte-level determinism.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef CLI_BINARY_PATH
#error "CLI_BINARY_PATH must point at the built command-line binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() /
                         ("rbfode_cli_test_" + std::to_string(counter++) + ".out");
    const std::string cmd =
        std::string(CLI_BINARY_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
#ifdef _WIN32
    r.exit_code = raw;
#else
    r.exit_code = WEXITSTATUS(raw);
#endif
    r.output = slurp(out);
    fs::remove(out);
    return r;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream is(line);
    std::string field;
    while (std::getline(is, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

TEST_CASE("solve emits a converged json report", "[cli]") {
    const auto r = run_cli("solve --method irbf --lam 0 --n 10 --c 1.860");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["converged"].get<bool>());
    CHECK(std::abs(j["f_prime_at_0"].get<double>() - 0.94758) < 5e-4);
    CHECK(j["manifest"]["artifact_version"] == "1.0.0");
    CHECK(j["manifest"]["command"] == "solve");
    CHECK(j["manifest"]["parameters"]["lam"] == "0");
    CHECK(j["weights"].size() == 11);
    CHECK(j["d"].size() == 3);
    CHECK(j["method"] == "irbf");
}

TEST_CASE("solve rejects undersized problems without writing output", "[cli]") {
    const fs::path out = fs::temp_directory_path() / "rbfode_cli_reject.json";
    fs::remove(out);
    const auto r =
        run_cli("solve --method drbf --lam 1 --n 2 --c 5.89 --out " + out.string());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("solve reports non-convergence through exit code 3", "[cli]") {
    // The direct method at this published setting stalls before reaching the
    // residual tolerance; the report must still be written.
    const auto r = run_cli("solve --method drbf --lam 3/4 --n 12 --c 5.23");
    CHECK(r.exit_code == 3);
    const json j = json::parse(r.output);
    CHECK_FALSE(j["converged"].get<bool>());
}

TEST_CASE("solve validates flag values", "[cli]") {
    CHECK(run_cli("solve --method irbf --lam 1/4 --n 10 --c -1").exit_code == 2);
    CHECK(run_cli("solve --method irbf --lam abc --n 10 --c 2").exit_code == 2);
    CHECK(run_cli("solve --method nope --lam 0 --n 10 --c 2").exit_code == 2);
    CHECK(run_cli("solve").exit_code == 2);
}

TEST_CASE("oracle reproduces the benchmark wall slope", "[cli]") {
    const auto r = run_cli("oracle --lam 1/3");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(std::abs(j["f_prime_at_0"].get<double>() - 0.90030) < 1e-4);
    CHECK(std::abs(j["far_field_slope"].get<double>()) < 1e-10);
}

TEST_CASE("oracle profile contains the tabulated station values", "[cli]") {
    const auto r = run_cli("oracle --lam 1/4 --emit-profile");
    REQUIRE(r.exit_code == 0);
    const auto lines = data_lines(r.output);
    REQUIRE(lines.size() == 1 + 46);  // header + eta = 0.0 .. 4.5 by 0.1
    CHECK(lines[0] == "eta,f,fprime,fsecond");
    const auto row = split_csv(lines[3]);  // eta = 0.2
    REQUIRE(row.size() == 4);
    CHECK(std::abs(std::stod(row[0]) - 0.2) < 1e-12);
    CHECK(std::abs(std::stod(row[2]) - 0.721351) < 1e-4);
}

TEST_CASE("table row counts match the published layouts", "[cli]") {
    CHECK(data_lines(run_cli("table t3").output).size() == 1 + 6);
    CHECK(data_lines(run_cli("table t4").output).size() == 1 + 16);
    CHECK(data_lines(run_cli("table t5").output).size() == 1 + 6);
    CHECK(data_lines(run_cli("table t6").output).size() == 1 + 22);
    CHECK(data_lines(run_cli("table t7").output).size() == 1 + 6);
    CHECK(data_lines(run_cli("table fig4").output).size() == 1 + 6);
    CHECK(run_cli("table nope").exit_code == 2);
}

TEST_CASE("integrated-method table matches the published slopes", "[cli]") {
    const auto lines = data_lines(run_cli("table t5").output);
    REQUIRE(lines.size() == 7);
    const double published[6] = {0.94758, 0.91128, 0.90030, 0.87979, 0.85206, 0.82762};
    for (int i = 0; i < 6; ++i) {
        const auto row = split_csv(lines[static_cast<std::size_t>(i + 1)]);
        REQUIRE(row.size() == 8);
        CHECK(std::abs(std::stod(row[3]) - published[i]) < 5e-4);
        // The integrated column tracks the shooting column at the level of
        // the published error figures.
        CHECK(std::abs(std::stod(row[3]) - std::stod(row[4])) < 2e-4);
        CHECK(row[6] == "true");
    }
}

TEST_CASE("identical invocations produce byte-identical artifacts", "[cli]") {
    const fs::path a = fs::temp_directory_path() / "rbfode_det.csv";
    REQUIRE(run_cli("table t5 --out " + a.string()).exit_code == 0);
    const std::string first = slurp(a);
    REQUIRE(run_cli("table t5 --out " + a.string()).exit_code == 0);
    CHECK(first == slurp(a));
    CHECK_FALSE(first.empty());
    CHECK(first.find("# out: " + a.string()) != std::string::npos);
    fs::remove(a);
}

TEST_CASE("scan-c emits every grid point and marks the minimizer", "[cli]") {
    const auto r =
        run_cli("scan-c --method irbf --lam 0 --n 10 --c-min 1 --c-max 3 --steps 21 "
                "--format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = data_lines(r.output);
    REQUIRE(lines.size() == 1 + 21);
    int minimizers = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split_csv(lines[i]);
        REQUIRE(row.size() == 6);
        if (row[5] == "true") {
            ++minimizers;
            CHECK(std::abs(std::stod(row[1]) - 0.94758) < 5e-4);
        }
    }
    CHECK(minimizers == 1);
}

TEST_CASE("scan-c without any converged entry exits 3", "[cli]") {
    const auto r = run_cli(
        "scan-c --method irbf --lam 0 --n 15 --c-min 8 --c-max 20 --steps 4 --format csv");
    CHECK(r.exit_code == 3);
    const auto lines = data_lines(r.output);
    REQUIRE(lines.size() == 1 + 4);  // entries flagged, not dropped
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split_csv(lines[i]);
        CHECK(row[3] == "false");
    }
}

TEST_CASE("scan-c validates its grid", "[cli]") {
    CHECK(run_cli("scan-c --method irbf --lam 0 --n 10 --c-min 3 --c-max 1 --steps 5")
              .exit_code == 2);
    CHECK(run_cli("scan-c --method irbf --lam 0 --n 10 --c-min 1 --c-max 3 --steps 1")
              .exit_code == 2);
}

TEST_CASE("csv outputs embed the manifest as comments", "[cli]") {
    const auto r = run_cli("solve --method irbf --lam 1/2 --n 8 --c 2.15 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("# artifact_version: 1.0.0") != std::string::npos);
    CHECK(r.output.find("# command: solve") != std::string::npos);
    CHECK(r.output.find("# lam: 1/2") != std::string::npos);
    const auto lines = data_lines(r.output);
    REQUIRE(!lines.empty());
    CHECK(lines[0] == "eta,f,fprime,fsecond");
}
