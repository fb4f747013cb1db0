#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = hfrac::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        out.push_back(l);
    return out;
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

} // namespace

TEST_CASE("simulate: builtin example to stdout") {
    const auto r = run({"simulate", "--system", "ex5.1", "--steps", "40"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 42);
    CHECK(rows[0] == "t,x1,x2");
    CHECK(rows[1] == "0,0.10000000000000001,0.20000000000000001");
    CHECK(rows[2] == "1,0.050000000000000003,0.10000000000000001");
    CHECK(r.err.find("residual") != std::string::npos);
}

TEST_CASE("simulate: file output with sidecar and svg") {
    TempDir dir("hfrac_cli_sim");
    const auto r = run({"simulate", "--system", "ex5.3", "--steps", "12", "--out", dir.file("traj.csv"), "--svg",
                        dir.file("traj.svg")});
    REQUIRE(r.code == 0);
    CHECK(lines(slurp(dir.file("traj.csv"))).size() == 14);
    CHECK(lines(slurp(dir.file("traj.steps.csv"))).front() == "step,iters,residual");
    const auto svg = slurp(dir.file("traj.svg"));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg ") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(r.out.find("residual") != std::string::npos);
}

TEST_CASE("simulate: definition files and overrides") {
    TempDir dir("hfrac_cli_file");
    write_file(dir.file("zero.sys"), "kind = caputo\nnu = 0.5\nx0 = 0.3\nf1 = 0\n");
    const auto r = run({"simulate", "--file", dir.file("zero.sys"), "--steps", "5"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 7);
    for (std::size_t k = 1; k < rows.size(); ++k)
        CHECK(rows[k].substr(rows[k].find(',')) == ",0.29999999999999999");

    const auto h = run({"simulate", "--system", "ex5.1", "--steps", "2", "--h", "0.5", "--a", "1"});
    REQUIRE(h.code == 0);
    CHECK(lines(h.out)[3].rfind("2,", 0) == 0);
}

TEST_CASE("simulate: usage errors") {
    CHECK(run({"simulate", "--system", "ex5.1", "--steps", "0"}).code == 2);
    CHECK(run({"simulate", "--system", "ex9.9"}).code == 2);
    CHECK(run({"simulate"}).code == 2);
    CHECK(run({"simulate", "--system", "ex5.1", "--file", "x.sys"}).code == 2);
    CHECK(run({"simulate", "--file", "/nonexistent/zz.sys"}).code == 2);
    CHECK(run({"simulate", "--system", "ex5.1", "--nu", "1.5"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("simulate: solver failure exits 3") {
    TempDir dir("hfrac_cli_fail");
    write_file(dir.file("bad.sys"), "kind = caputo\nnu = 1\nx0 = 0\nf1 = -x1^2 - 1\n");
    const auto r = run({"simulate", "--file", dir.file("bad.sys"), "--steps", "3"});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
    write_file(dir.file("div.sys"), "kind = caputo\nnu = 0.5\nx0 = 0\nf1 = 1 / x1\n");
    CHECK(run({"simulate", "--file", dir.file("div.sys"), "--steps", "3"}).code == 3);
}

TEST_CASE("props: deterministic and passing") {
    CHECK(run({"props", "--trials", "0"}).code == 2);
    const auto a = run({"props", "--trials", "20", "--seed", "5"});
    const auto b = run({"props", "--trials", "20", "--seed", "5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() >= 20);
    TempDir dir("hfrac_cli_props");
    CHECK(run({"props", "--trials", "10", "--out", dir.file("p.csv")}).code == 0);
    CHECK(lines(slurp(dir.file("p.csv"))).size() == 21);
}

TEST_CASE("props: default run exits 0") {
    CHECK(run({"props"}).code == 0);
}

TEST_CASE("certify: verdicts and exit codes") {
    const auto ok = run({"certify", "--system", "ex5.1"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("verdict=stable-certified") != std::string::npos);
    CHECK(run({"certify", "--system", "ex5.2"}).code == 0);

    TempDir dir("hfrac_cli_cert");
    write_file(dir.file("grow.sys"), "kind = caputo\nnu = 0.5\nx0 = 0.1, 0.2\nf1 = x1\nf2 = x2\n");
    const auto bad = run({"certify", "--file", dir.file("grow.sys")});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("verdict=inconclusive") != std::string::npos);

    const auto seeded = run({"certify", "--system", "ex5.4", "--seed", "3", "--trials", "50", "--out",
                             dir.file("s.csv")});
    CHECK(seeded.code == 0);
    CHECK(lines(slurp(dir.file("s.csv"))).size() == 51);
    CHECK(run({"certify", "--system", "ex5.1", "--P", "1,2;2,1"}).code == 1);
    CHECK(run({"certify", "--system", "ex5.1", "--P", "1,0;0"}).code == 2);
    CHECK(run({"certify", "--system", "ex5.3", "--odd", "3", "--pow2", "1"}).code == 2);
    CHECK(run({"certify", "--system", "ex5.3", "--trials", "0"}).code == 2);
}

TEST_CASE("reproduce: writes every artifact, byte-stable") {
    TempDir a("hfrac_cli_repro_a");
    TempDir b("hfrac_cli_repro_b");
    const auto start = std::chrono::steady_clock::now();
    const auto ra = run({"reproduce", "--out", a.path.string()});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(ra.code == 0);
    CHECK(secs < 10.0);
    CHECK(ra.out.find("FAIL") == std::string::npos);
    REQUIRE(run({"reproduce", "--out", b.path.string()}).code == 0);
    for (int k = 1; k <= 4; ++k) {
        const std::string name = "ex5." + std::to_string(k) + ".csv";
        CHECK(fs::exists(a.path / name));
        CHECK(slurp(a.path / name) == slurp(b.path / name));
    }
    for (int k = 1; k <= 8; ++k) {
        const std::string name = "fig" + std::to_string(k) + ".svg";
        CHECK(fs::exists(a.path / name));
        CHECK(slurp(a.path / name) == slurp(b.path / name));
    }
}
