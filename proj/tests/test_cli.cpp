#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Run the installed CLI binary, capturing stdout (stderr is left alone so
// timing diagnostics do not pollute comparisons).
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = "cli_out_" + std::to_string(counter++) + ".txt";
    std::string cmd = std::string(QUATSUB_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
    std::ifstream in(out_path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    std::remove(out_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("check passes on the default fixture") {
    RunResult r = run_cli("check");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"fixture\"") != std::string::npos);
}

TEST_CASE("list names the built-in corpus") {
    RunResult r = run_cli("list");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("example-3-1") != std::string::npos);
    CHECK(r.output.find("heisenberg") != std::string::npos);
    CHECK(r.output.find("gibbons-hawking-v1") != std::string::npos);
}

TEST_CASE("reports are byte-identical across repeated runs") {
    RunResult a = run_cli("report --fixture example-3-2 --samples 24 --seed 9");
    RunResult b = run_cli("report --fixture example-3-2 --samples 24 --seed 9");
    CHECK(a.exit_code == 0);
    REQUIRE(!a.output.empty());
    CHECK(a.output == b.output);
}

TEST_CASE("invalid input maps to exit code 2") {
    CHECK(run_cli("check --fixture no-such-fixture").exit_code == 2);
    CHECK(run_cli("theorem bogus-id --fixture example-3-2").exit_code == 2);
    CHECK(run_cli("check --manifest /nonexistent/path.toml").exit_code == 2);

    std::ofstream bad("bad_manifest.toml", std::ios::binary);
    bad << "name = \"bad\"\n[total]\ndim = 6\n"
        << "box_lo = [-1, -1, -1, -1, -1, -1]\nbox_hi = [1, 1, 1, 1, 1, 1]\n"
        << "[base]\ndim = 3\n"
        << "[map]\ncomponents = [\"x1\", \"x2\", \"x3\"]\n"
        << "[structure]\nkind = \"canonical\"\n";
    bad.close();
    CHECK(run_cli("check --manifest bad_manifest.toml").exit_code == 2);
    std::remove("bad_manifest.toml");
}

TEST_CASE("classify reports the published verdicts") {
    RunResult r = run_cli("classify --fixture example-3-1 --samples 16");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("h-anti-invariant") != std::string::npos);

    RunResult l = run_cli("classify --fixture example-3-2 --samples 16");
    CHECK(l.exit_code == 0);
    CHECK(l.output.find("h-Lagrangian") != std::string::npos);
}

TEST_CASE("single theorem runs succeed and gate correctly") {
    CHECK(run_cli("theorem harmonic --fixture example-3-2 --samples 12").exit_code == 0);
    CHECK(run_cli("theorem thm31 --fixture example-3-2 --samples 12").exit_code == 0);
    RunResult heis = run_cli("theorem integrability --fixture heisenberg --samples 8");
    CHECK(heis.exit_code == 0);  // a measurement, not a verdict
    CHECK(heis.output.find("not integrable") != std::string::npos);
    RunResult pol = run_cli("theorem harmonic --fixture polar --samples 8");
    CHECK(pol.exit_code == 1);  // the radius map has nonzero tension
}

TEST_CASE("tensors prints frame and tensor grids at a point") {
    RunResult r = run_cli("tensors --fixture heisenberg --point 0.3,0.2,0.1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"oneill_A_horizontal_frame\"") != std::string::npos);
    CHECK(r.output.find("\"oneill_T_vertical_frame\"") != std::string::npos);
}

TEST_CASE("--json writes the same bytes that go to stdout") {
    std::string path = "cli_report.json";
    RunResult r = run_cli("report --fixture polar --samples 12 --json " + path);
    CHECK(r.exit_code == 0);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(path.c_str());
    CHECK(ss.str() == r.output);
}
