#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests against the installed command-line binary.
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "fieldred-cli-out.txt";
    std::string cmd = std::string(FIELDRED_BIN) + " " + args + " > " + tmp.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(tmp, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    r.out = os.str();
    return r;
}

std::string value_of(const std::string& report, const std::string& key) {
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return "";
}

struct TempDir {
    fs::path p;
    TempDir() : p(fs::temp_directory_path() / ("fieldred-test-" + std::to_string(std::rand()))) {
        fs::create_directories(p);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(p, ec); }
};

}  // namespace

TEST_CASE("field report contains resolved config and field data") {
    RunResult r = run_cli("field --q 9");
    CHECK(r.code == 0);
    CHECK(value_of(r.out, "command") == "field");
    CHECK(value_of(r.out, "version") == "0.1.0");
    CHECK(value_of(r.out, "q") == "9");
    CHECK(value_of(r.out, "order") == "9");
    CHECK(value_of(r.out, "characteristic") == "3");
    CHECK(r.out.find("---\n") != std::string::npos);
}

TEST_CASE("deterministic commands are byte-identical on rerun") {
    RunResult a = run_cli("spread check --q 2 --t 2 --r 2");
    RunResult b = run_cli("spread check --q 2 --t 2 --r 2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(value_of(a.out, "is-spread") == "true");
    CHECK(value_of(a.out, "is-desarguesian") == "yes");
}

TEST_CASE("cache: second run is served verbatim and corrupt entries are recomputed") {
    TempDir cache;
    std::string args = "linset witnesses --q 2 --t 3 --cache-dir " + cache.p.string();
    RunResult a = run_cli(args);
    CHECK(a.code == 0);
    CHECK(value_of(a.out, "X") == "14");

    // exactly one entry, with the magic header
    int entries = 0;
    fs::path entry;
    for (const auto& e : fs::directory_iterator(cache.p)) {
        ++entries;
        entry = e.path();
    }
    CHECK(entries == 1);
    {
        std::ifstream in(entry);
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("fieldred-cache", 0) == 0);
    }

    RunResult b = run_cli(args);
    CHECK(b.code == 0);
    CHECK(a.out == b.out);

    // corrupting the entry forces a recompute with identical bytes
    { std::ofstream out(entry, std::ios::binary); out << "garbage"; }
    RunResult c = run_cli(args);
    CHECK(c.code == 0);
    CHECK(a.out == c.out);
}

TEST_CASE("sampled runs are never cached") {
    TempDir cache;
    RunResult r = run_cli("subspread check --q 2 --t 4 --tprime 2 --r 1 --samples 25 --seed 7 --cache-dir " +
                          cache.p.string());
    CHECK(r.code == 0);
    CHECK(value_of(r.out, "mode") == "sampled");
    CHECK(value_of(r.out, "stabiliser-preserves-refinement") == "true");
    CHECK(fs::is_empty(cache.p));
}

TEST_CASE("exit code 2 on precondition failures") {
    CHECK(run_cli("field --q 6").code == 2);          // not a prime power
    CHECK(run_cli("nonsense-subcommand").code == 2);  // parse error
    CHECK(run_cli("spread build --q 2 --t 2 --r 2 --family hall").code == 2);
    CHECK(run_cli("linset build --q 2 --t 2 --family unknown-family").code == 2);
}

TEST_CASE("exit code 3 when the search budget is exhausted") {
    RunResult r = run_cli("spread equiv --q 3 --t 2 --r 2 --family hall --budget-nodes 2");
    CHECK(r.code == 3);
    CHECK(value_of(r.out, "equivalent") == "unknown");
    // with the default budget the answer is a definite no
    RunResult full = run_cli("spread equiv --q 3 --t 2 --r 2 --family hall");
    CHECK(full.code == 0);
    CHECK(value_of(full.out, "equivalent") == "no");
}

TEST_CASE("empty result lists still succeed") {
    RunResult r = run_cli("singer orbits --q 2 --n 4 --d 3");
    CHECK(r.code == 0);
    CHECK(value_of(r.out, "spread-orbits") == "0");
}

TEST_CASE("singer orbits report matches the line-spread census of PG(3,2)") {
    RunResult r = run_cli("singer orbits --q 2 --n 4 --d 2");
    CHECK(r.code == 0);
    CHECK(value_of(r.out, "spread-orbits") == "1");
    CHECK(value_of(r.out, "orbit-length") == "5");
    CHECK(value_of(r.out, "stabiliser-exponent") == "5");
}

TEST_CASE("--out writes the report to a file") {
    TempDir dir;
    fs::path out = dir.p / "report.txt";
    RunResult r = run_cli("field --q 4 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.empty());  // nothing on stdout
    std::ifstream in(out);
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(value_of(os.str(), "order") == "4");
}

TEST_CASE("embed check reports the kernel scalar when not applicable") {
    RunResult r = run_cli("embed check --q 3 --t 2 --r 2");
    CHECK(r.code == 0);
    CHECK(value_of(r.out, "applicable") == "false");
    CHECK(value_of(r.out, "gcd") == "2");
    CHECK(value_of(r.out, "kernel-scalar") == "2");
    CHECK(value_of(r.out, "image-order") == "360");
}
