// End-to-end checks of the command-line tool. The binary path arrives via
// the TSPKIT_BIN environment variable (set by CTest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string bin() {
    const char* b = std::getenv("TSPKIT_BIN");
    REQUIRE(b != nullptr);
    return b;
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/tspkit_cli_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

int run(const std::string& args, std::string* output = nullptr) {
    std::string out_path = tmp_path("stdout.txt");
    std::string cmd = bin() + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_path);
        std::stringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(status);
}

std::string strip_timings(const std::string& s) {
    std::istringstream in(s);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"timings\"") == std::string::npos) out << line << "\n";
    return out.str();
}

const char* kCycle5 =
    "c unit 5-cycle\n"
    "p edge 5 5\n"
    "e 0 1 1\n"
    "e 1 2 1\n"
    "e 2 3 1\n"
    "e 3 4 1\n"
    "e 4 0 1\n";

}  // namespace

TEST_CASE("solve writes a JSON report and exits 0") {
    std::string input = tmp_path("c5.edges");
    std::string report = tmp_path("c5.json");
    write_file(input, kCycle5);
    int code = run("solve --algorithm sparsified-christofides --epsilon 0.25 --seed 7"
                   " --input " + input + " --report " + report + " --emit-tour");
    CHECK(code == 0);
    std::ifstream in(report);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("\"shortcut_tour_cost\": 5") != std::string::npos);
    CHECK(ss.str().find("\"tour\"") != std::string::npos);
}

TEST_CASE("identical runs give byte-identical reports modulo timings") {
    std::string input = tmp_path("det.edges");
    write_file(input, kCycle5);
    std::string a, b;
    CHECK(run("solve --seed 9 --input " + input, &a) == 0);
    CHECK(run("solve --seed 9 --input " + input, &b) == 0);
    CHECK(strip_timings(a) == strip_timings(b));
}

TEST_CASE("disconnected input exits 1 and names both components") {
    std::string input = tmp_path("split.edges");
    write_file(input, "p edge 4 2\ne 0 1 1\ne 2 3 1\n");
    std::string out;
    CHECK(run("solve --input " + input, &out) == 1);
    CHECK(out.find("{0,1}") != std::string::npos);
    CHECK(out.find("{2,3}") != std::string::npos);
}

TEST_CASE("bad flags exit 64") {
    CHECK(run("solve --no-such-flag") == 64);
    CHECK(run("") == 64);
}

TEST_CASE("lp subcommand prints the three LP numbers") {
    std::string input = tmp_path("lp.edges");
    write_file(input, kCycle5);
    std::string out;
    CHECK(run("lp --epsilon 0.1 --input " + input, &out) == 0);
    CHECK(out.find("lp_objective") != std::string::npos);
    CHECK(out.find("lp_lower_bound") != std::string::npos);
    CHECK(out.find("lp_gap") != std::string::npos);
}

TEST_CASE("tjoin and sparsify subcommands run") {
    std::string input = tmp_path("sub.edges");
    write_file(input, kCycle5);
    std::string out;
    CHECK(run("tjoin --input " + input, &out) == 0);
    CHECK(out.find("join_cost 1") != std::string::npos);
    CHECK(run("sparsify --input " + input + " --seed 3", &out) == 0);
    CHECK(out.find("output_support") != std::string::npos);
}

TEST_CASE("matrix and euc2d formats parse") {
    std::string mat = tmp_path("m.matrix");
    write_file(mat, "p matrix 3\n0 1 2\n1 0 1\n2 1 0\n");
    std::string out;
    CHECK(run("solve --algorithm classic-christofides --input " + mat, &out) == 0);

    std::string pts = tmp_path("p.euc2d");
    write_file(pts, "p euc2d 4\n0 0\n0 1\n1 1\n1 0\n");
    CHECK(run("solve --algorithm double-tree --input " + pts, &out) == 0);
    CHECK(out.find("\"shortcut_tour_cost\": 4") != std::string::npos);

    // Declared format must match the file.
    CHECK(run("solve --format edge --input " + mat, &out) == 1);
}

TEST_CASE("malformed instances are ingestion errors naming the line") {
    std::string bad = tmp_path("bad.edges");
    write_file(bad, "p edge 3 2\ne 0 1 1\ne 2 2 1\n");
    std::string out;
    CHECK(run("solve --input " + bad, &out) == 1);
    CHECK(out.find("line 3") != std::string::npos);
}

TEST_CASE("TSPKIT_SEED environment variable sets the default seed") {
    std::string input = tmp_path("env.edges");
    write_file(input, kCycle5);
    std::string out_path = tmp_path("env_stdout.txt");
    std::string cmd = "TSPKIT_SEED=4242 " + bin() + " solve --input " + input + " > " +
                      out_path + " 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("\"seed\": 4242") != std::string::npos);
}

TEST_CASE("bench compares the three algorithms") {
    std::string input = tmp_path("bench.edges");
    write_file(input, kCycle5);
    std::string out;
    CHECK(run("bench --input " + input, &out) == 0);
    CHECK(out.find("double-tree") != std::string::npos);
    CHECK(out.find("classic-christofides") != std::string::npos);
    CHECK(out.find("sparsified-christofides") != std::string::npos);
}
