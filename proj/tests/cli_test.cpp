#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("leapsim");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int rc =
        leapsim::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) {
        *out_text = out.str();
    }
    if (err_text) {
        *err_text = err.str();
    }
    return rc;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("gen writes a replayable trace") {
    TempFile f("gen.csv");
    CHECK(cli({"gen", "--gen", "seq:n=16,start=5", "--out", f.path}) == 0);
    std::ifstream in(f.path);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first == "# name=sequential");
}

TEST_CASE("run emits json by default and csv on request") {
    std::string out;
    CHECK(cli({"run", "--gen", "stride:n=512,k=10", "--prefetcher", "leap",
               "--resident-cap", "128"},
              &out) == 0);
    CHECK(out.find("\"reports\"") != std::string::npos);
    CHECK(out.find("\"prefetcher\": \"leap\"") != std::string::npos);

    CHECK(cli({"run", "--gen", "stride:n=512,k=10", "--prefetcher", "leap",
               "--resident-cap", "128", "--format", "csv"},
              &out) == 0);
    CHECK(out.find("prefetcher,total_requests") != std::string::npos);
    CHECK(out.find("\nleap,512,") != std::string::npos);
}

TEST_CASE("run output is byte-identical across invocations") {
    std::string a;
    std::string b;
    const std::vector<std::string> args = {"run",          "--gen",
                                           "mixed:seq:n=256+random:n=256,range=65536,seed=4",
                                           "--prefetcher", "leap",
                                           "--prefetcher", "nextn",
                                           "--format",     "csv"};
    CHECK(cli(args, &a) == 0);
    CHECK(cli(args, &b) == 0);
    CHECK(a == b);
}

TEST_CASE("classify prints the default windows") {
    std::string out;
    CHECK(cli({"classify", "--gen", "seq:n=64", "--format", "csv"}, &out) == 0);
    CHECK(out.find("2,1.000000") != std::string::npos);
    CHECK(out.find("4,1.000000") != std::string::npos);
    CHECK(out.find("8,1.000000") != std::string::npos);
}

TEST_CASE("compare prints an aligned table") {
    std::string out;
    CHECK(cli({"compare", "--gen", "stride:n=1024,k=10", "--prefetcher", "leap",
               "--prefetcher", "readahead", "--resident-cap", "256"},
              &out) == 0);
    CHECK(out.find("prefetcher") == 0);
    CHECK(out.find("leap") != std::string::npos);
    CHECK(out.find("readahead") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
    std::string err;
    CHECK(cli({"run", "--trace", "/definitely/not/a/file.csv"}, nullptr, &err) == 2);
    CHECK_FALSE(err.empty());
    CHECK(cli({"run", "--gen", "seq:n=16", "--prefetcher", "bogus"}, nullptr, &err) == 2);
    CHECK(cli({"run"}, nullptr, &err) == 2);  // no trace source
    CHECK(cli({"frobnicate"}, nullptr, &err) == 2);
    CHECK(cli({"run", "--gen", "seq:n=0"}, nullptr, &err) == 2);
    CHECK(cli({"classify", "--gen", "seq:n=4", "--window", "8"}, nullptr, &err) == 2);
}

TEST_CASE("malformed trace files report the line and exit 2") {
    TempFile f("bad.csv");
    {
        std::ofstream out(f.path);
        out << "0,1,5\nnot,numbers,here\n";
    }
    std::string err;
    CHECK(cli({"run", "--trace", f.path}, nullptr, &err) == 2);
    CHECK(err.find("line 2") != std::string::npos);
}

TEST_CASE("help exits zero") {
    std::string out;
    CHECK(cli({"--help"}, &out) == 0);
    CHECK(out.find("run") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override it") {
    TempFile f("conf.ini");
    {
        std::ofstream out(f.path);
        out << "[run]\n";
        out << "gen=\"stride:n=256,k=10\"\n";
        out << "prefetcher=\"leap\"\n";
        out << "resident-cap=64\n";
        out << "format=\"csv\"\n";
    }
    std::string out;
    CHECK(cli({"--config", f.path, "run"}, &out) == 0);
    CHECK(out.find("\nleap,256,") != std::string::npos);

    // The command line wins over the file.
    CHECK(cli({"--config", f.path, "run", "--prefetcher", "none"}, &out) == 0);
    CHECK(out.find("\nnone,256,") != std::string::npos);
}
