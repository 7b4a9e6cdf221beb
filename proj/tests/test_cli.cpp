#include "doctest.h"

#include "support/fixtures.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#ifndef TRACECALC_BIN
#error "TRACECALC_BIN must point at the command-line tool"
#endif

namespace fs = std::filesystem;
using namespace tcsupport;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::vector<std::string> lines() const {
        std::vector<std::string> v;
        std::istringstream in(out);
        for (std::string l; std::getline(in, l);)
            v.push_back(l);
        return v;
    }
};

std::string g_scratch;

fs::path scratch() {
    if (g_scratch.empty()) {
        fs::path d = fs::temp_directory_path() / ("tracecalc_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        g_scratch = d.string();
        std::atexit([] {
            std::error_code ec;
            fs::remove_all(g_scratch, ec);
        });
    }
    return g_scratch;
}

std::string write(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

Result tool(const std::string& args, bool with_stderr = false) {
    std::string cmd = std::string(TRACECALC_BIN) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    Result r;
    FILE* f = ::popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0)
        r.out.append(buf.data(), n);
    int st = ::pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

const char* kOpenLine = R"({"event":"func_post","name":"fs.open","res":42})";
const char* kCloseLine = R"({"event":"func_pre","name":"close","args":[42]})";
const char* kClose43 = R"({"event":"func_pre","name":"close","args":[43]})";

} // namespace

TEST_CASE("check") {
    CHECK(tool("check --spec " + write("fd.tc", fd_spec())).code == 0);
    auto bad = tool("check --spec " + write("loop.tc", ab_decls() + "T = T a();"), true);
    CHECK(bad.code == 2);
    CHECK(bad.out.find("T -> T") != std::string::npos);
    CHECK(tool("check --spec " + write("broken.tc", "Main = (empty;")).code == 3);
    CHECK(tool("check --spec " + (scratch() / "missing.tc").string()).code == 3);
}

TEST_CASE("monitor") {
    std::string spec = write("fd.tc", fd_spec());
    auto viol = tool("monitor --format json --spec " + spec + " --events " +
                     write("v.jsonl", std::string(kOpenLine) + "\n" + kClose43 + "\n"));
    CHECK(viol.code == 1);
    auto vl = viol.lines();
    REQUIRE(vl.size() == 3);
    for (const auto& l : vl)
        CHECK_NOTHROW((void)nlohmann::json::parse(l));
    CHECK(nlohmann::json::parse(vl[0]) == nlohmann::json::parse(R"({"index":0,"status":"ok","accepting":false})"));
    CHECK(nlohmann::json::parse(vl[1])["status"] == "violation");
    CHECK(nlohmann::json::parse(vl[2]) == nlohmann::json::parse(R"({"final":"violated","at":1})"));

    auto inc = tool("monitor --format json --spec " + spec + " --events " + write("i.jsonl", std::string(kOpenLine) + "\n"));
    CHECK(inc.code == 0);
    CHECK(nlohmann::json::parse(inc.lines().back()) == nlohmann::json::parse(R"({"final":"incomplete"})"));

    // open/close pair: accepted once the specification may stop
    std::string pair = std::string(kOpenLine) + "\n" + kCloseLine + "\n";
    auto acc = tool("monitor --format json --spec " + write("fdn.tc", fd_spec_nullable()) + " --events " +
                    write("p.jsonl", pair));
    CHECK(acc.code == 0);
    REQUIRE(acc.lines().size() == 3);
    CHECK(nlohmann::json::parse(acc.lines()[1])["accepting"] == true);
    CHECK(nlohmann::json::parse(acc.lines().back())["final"] == "accepted");
    auto rec = tool("monitor --format json --spec " + spec + " --events " + write("p2.jsonl", pair));
    CHECK(rec.code == 0);
    CHECK(nlohmann::json::parse(rec.lines().back())["final"] == "incomplete");

    // stdin
    auto in = tool("monitor --spec " + spec + " --events - < " + write("s.jsonl", std::string(kOpenLine) + "\n"));
    CHECK(in.code == 0);
}

TEST_CASE("malformed event lines") {
    std::string spec = write("fd.tc", fd_spec());
    std::string events = write("bad.jsonl", std::string(kOpenLine) + "\n[1,2]\n{oops\n" + kCloseLine + "\n");
    auto abort = tool("monitor --format json --spec " + spec + " --events " + events);
    CHECK(abort.code == 4);
    auto al = abort.lines();
    REQUIRE(al.size() == 2);
    CHECK(nlohmann::json::parse(al[1])["line"] == 2);

    auto skip = tool("monitor --format json --skip-bad-lines --spec " + spec + " --events " + events);
    CHECK(skip.code == 0);
    int records = 0;
    for (const auto& l : skip.lines()) {
        auto j = nlohmann::json::parse(l);
        records += j.contains("index");
    }
    CHECK(records == 2);
    CHECK(tool("monitor --spec " + spec + " --events " + (scratch() / "none.jsonl").string()).code == 4);
}

TEST_CASE("enumerate") {
    auto q = tool("enumerate --horizon 3 --spec " +
                  write("q.tc", ab_decls() + "Main = (a() \\/ empty) ((a() b()) \\/ empty);"));
    CHECK(q.code == 0);
    CHECK(q.lines() == std::vector<std::string>{"λ", "a", "a a b"});
    auto e = tool("enumerate --spec " + write("e.tc", "Main = empty;"));
    CHECK(e.lines() == std::vector<std::string>{"λ"});
    auto f = tool("enumerate --horizon 2 --pool 42,17 --spec " + write("fp.tc", fd_pair_spec()));
    CHECK(f.code == 0);
    CHECK(f.lines() == std::vector<std::string>{"open(17) close(17)", "open(42) close(42)"});
    // deterministic
    CHECK(tool("enumerate --horizon 2 --pool 42,17 --spec " + write("fp.tc", fd_pair_spec())).out == f.out);
}

TEST_CASE("equiv") {
    auto zero = tool("equiv --count 0");
    CHECK(zero.code == 0);
    auto op = tool("equiv --count 30 --reading operational --format json");
    CHECK(op.code == 0);
    auto j = nlohmann::json::parse(op.out);
    CHECK(j["inequalities"] == 0);
    CHECK(j["comparisons"] == 150);
    auto mut = tool("equiv --count 300 --reading operational --inject-mutant plain-union");
    CHECK(mut.code == 5);
    CHECK(mut.out.find("first counterexample") != std::string::npos);
}
