#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#ifndef MU4_CLI_PATH
#define MU4_CLI_PATH "mu4"
#endif

namespace {

struct Run {
    int code;
    std::string out;
    std::vector<std::string> lines() const {
        std::vector<std::string> v;
        std::istringstream is(out);
        for (std::string l; std::getline(is, l);) v.push_back(l);
        return v;
    }
    bool has_line(const std::string& l) const {
        for (const auto& x : lines())
            if (x == l) return true;
        return false;
    }
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "'" MU4_CLI_PATH "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

const char* kCorrupt = "--curve 'binary m=5 poly=5,2,0 b=3 a=1 gx=a gy=12'";

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("count reproduces the reference rows") {
        auto r = run("count --curve T-5");
        CHECK(r.code == 0);
        CHECK(r.has_line("add: 9M + 2S"));
        CHECK(r.has_line("dbl: 2M + 5S + 2m"));
        CHECK(r.has_line("dbl-split: 2M + 5S + 3m"));
        CHECK(r.has_line("step: 4M + 4S + 1mt + 2mc"));
        CHECK_FALSE(r.has_line("add-untwisted: 7M + 2S + 2m"));
        auto k = run("count --curve K-233");
        CHECK(k.code == 0);
        CHECK(k.has_line("add-untwisted: 7M + 2S + 2m"));
        auto j = run("count --curve B-233 --format jsonl");
        CHECK(j.code == 0);
        for (const auto& l : j.lines()) CHECK(nlohmann::json::parse(l)["ok"] == true);
        CHECK(run("count --curve 'prime p=13 c=2 a=1'").code == 2);
    }

    TEST_CASE("verify") {
        auto r = run("verify --curve T-5 --level exhaustive");
        CHECK(r.code == 0);
        CHECK(r.out.find("FAIL") == std::string::npos);
        CHECK(r.out.find("PASS addition_vs_oracle (484 checks)") != std::string::npos);
        auto q = run("verify --curve B-233 --level quick --format jsonl --seed 9");
        CHECK(q.code == 0);
        CHECK(q.lines().size() >= 7);
        for (const auto& l : q.lines()) CHECK(nlohmann::json::parse(l)["pass"] == true);
        CHECK(run("verify --curve B-233 --level exhaustive").code == 2);
        auto bad = run(std::string("verify ") + kCorrupt);
        CHECK(bad.code == 1);
        CHECK(bad.out.find("FAIL on_curve") != std::string::npos);
        CHECK(run("verify --curve T-5 --level thorough").code == 2);
    }

    TEST_CASE("mul") {
        CHECK(run("mul --curve T-5 --k 0").out == "(1:1:0:1)\n");
        CHECK(run("mul --curve T-5 --k 1 --weierstrass").out == "(1:2:6:1b) (a,12)\n");
        CHECK(run("mul --curve T-5 --k b").out == "(1:1:0:1)\n");  // n = 11
        CHECK(run("mul --curve T-5 --k c").out == run("mul --curve T-5 --k 1").out);
        CHECK(run("mul --curve T-5 --k 3 --point '(1:1:0:1)'").out == "(1:1:0:1)\n");
        CHECK(run("mul --curve T-5:split --k 0").out == run("mul --curve T-5:split --k b").out);
        CHECK(run("mul --curve T-5 --k 3 --point '(1:0:0:0)'").code == 2);
        CHECK(run("mul --curve T-5").code == 2);
        CHECK(run("mul --curve T-5 --k zz").code == 2);
        CHECK(run("mul --curve nope --k 1").code == 2);
        auto j = nlohmann::json::parse(run("mul --curve B-233 --k 2 --weierstrass --format jsonl").out);
        CHECK(j["k"] == "2");
        CHECK(j["weierstrass"].get<std::string>().front() == '(');
    }

    TEST_CASE("convert round trip") {
        auto mu = run("convert --curve T-5 --wpoint a,12");
        CHECK(mu.out == "(1:2:6:1b)\n");
        CHECK(run("convert --curve T-5 --point '(1:2:6:1b)'").out == "(a,12)\n");
        CHECK(run("convert --curve T-5 --point '(1:1:0:1)'").out == "inf\n");
        CHECK(run("convert --curve T-5").code == 2);
        CHECK(run("convert --curve T-5 --wpoint 1,1").code == 2);
    }

    TEST_CASE("kat is dual-path and reproducible") {
        CHECK(run("kat --curve T-5 --seed 1 --count 10 --out kat_a.txt").code == 0);
        CHECK(run("kat --curve T-5 --seed 1 --count 10 --out kat_b.txt").code == 0);
        CHECK(run("kat --curve T-5 --seed 2 --count 10 --out kat_c.txt").code == 0);
        auto a = slurp("kat_a.txt");
        CHECK(a == slurp("kat_b.txt"));
        CHECK(a != slurp("kat_c.txt"));
        CHECK(std::count(a.begin(), a.end(), '\n') == 10);
        auto big = run("kat --curve B-233 --seed 1 --count 100 --format jsonl");
        CHECK(big.code == 0);
        CHECK(big.lines().size() == 100);
        CHECK(nlohmann::json::parse(big.lines().front()).contains("kummer"));
        CHECK(run(std::string("kat ") + kCorrupt + " --count 1 --out kat_bad.txt").code != 0);
        CHECK(slurp("kat_bad.txt").empty());
    }

    TEST_CASE("registry override") {
        CHECK(run("mul --curve T-5 --k 1", "MU4_REGISTRY=/nonexistent").code == 2);
        {
            std::ofstream reg("tiny_registry.txt");
            reg << "name=Q field=binary:5:5,2,0 a=1 b=1 gx=a gy=12 n=b h=2\n";
        }
        CHECK(run("mul --curve Q --k 1", "MU4_REGISTRY=tiny_registry.txt").out == "(1:2:6:1b)\n");
        {
            std::ofstream reg("broken_registry.txt");
            reg << "# header\nname=Q field=binary:5 a=1\n";
        }
        CHECK(run("mul --curve Q --k 1", "MU4_REGISTRY=broken_registry.txt").code == 2);
    }
}
