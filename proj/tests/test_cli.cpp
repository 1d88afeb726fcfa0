#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run
{
    int code;
    std::string out;
};

// Never touches the user's cache directory.
Run run(const std::string& args, std::string env = "")
{
    if (env.empty()) {
        env = "SHIMURA_GATE_CACHE=" + (std::filesystem::temp_directory_path() / "shimura-gate-cli-scratch").string();
    }
    std::string cmd = env + " " + SHIMURA_GATE_EXE + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) {
        out.append(buf.data(), n);
    }
    int status = pclose(f);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string cache_env()
{
    auto dir = std::filesystem::temp_directory_path() / "shimura-gate-cli-test";
    std::filesystem::remove_all(dir);
    return "SHIMURA_GATE_CACHE=" + dir.string();
}

} // namespace

TEST_CASE("documented command examples")
{
    auto env = cache_env();
    auto v = run("verdict --d 10 --field biquad:-5,7 --p 127 --assume-outside-exceptional --json", env);
    CHECK(v.code == 0);
    auto j = nlohmann::json::parse(v.out);
    CHECK(j["outcome"] == "empty");
    CHECK(j["conditional"] == true);
    CHECK(j["q"] == 29);

    auto hcf = run("verdict --d 10 --field quad:-1 --p 101 --json", env);
    CHECK(hcf.code == 0);
    auto reasons = nlohmann::json::parse(hcf.out)["reasons"];
    CHECK(std::find(reasons.begin(), reasons.end(), "HCF_CONTAINED") != reasons.end());

    CHECK(run("least-q --d 22 --field cyclo:13").out == "79\n");
    CHECK(run("genus --d 14").out == "1\n");
    CHECK(run("conic --d 6 --field biquad:-5,7").out.find("local obstruction at 3") != std::string::npos);

    auto s = run("sets --field quad:-5 --json", env);
    CHECK(s.code == 0);
    auto sj = nlohmann::json::parse(s.out);
    CHECK(sj["T"] == nlohmann::json::parse("[2,3,7]"));
    CHECK(sj["Ram"] == nlohmann::json::parse("[2,5]"));
    auto s7 = nlohmann::json::parse(run("sets --field quad:7 --json", env).out);
    CHECK(s7["T"] == nlohmann::json::parse("[2,3,19]"));
    CHECK(s7["Ram"] == nlohmann::json::parse("[2,7]"));

    CHECK(run("trace-filter --q 3 --p 11").out == "-3 0 3\n");
    CHECK(run("fr --q 2 --json").code == 0);
    CHECK(run("classgroup --disc -84 --json").code == 0);
    CHECK(run("irred --d 10 --field biquad:-5,7 --p 331 --assume-outside-exceptional").out.find("irreducible (conditional)")
          != std::string::npos);
    CHECK(run("hypotheses --d 10 --field cyclo:13 --json").code == 0);
    CHECK(run("--help").code == 0);
}

TEST_CASE("cached and fresh reports are byte-identical")
{
    auto env = cache_env();
    auto first = run("sets --field quad:-5 --json", env);
    auto second = run("sets --field quad:-5 --json", env);
    auto fresh = run("sets --field quad:-5 --json --no-cache", env);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out == fresh.out);
    // verdicts report where L came from
    auto v1 = nlohmann::json::parse(run("verdict --d 10 --field quad:-5 --p 53 --json --no-cache", env).out);
    auto v2 = nlohmann::json::parse(run("verdict --d 10 --field quad:-5 --p 53 --json", env).out);
    CHECK(v1["L_source"] == "computed");
    CHECK(v2["L_source"] == "cache");
    CHECK(v1["outcome"] == v2["outcome"]);
}

TEST_CASE("malformed input exits with 2")
{
    const char* bad[] = {
        "",
        "bogus",
        "verdict",
        "verdict --d 10",
        "verdict --d 30 --field quad:-5 --p 101",
        "verdict --d 10 --field quad:-5 --p 91",
        "verdict --d 10 --field quad:-5 --p-range 50:40",
        "verdict --d 10 --field quad:-5 --p-range 50",
        "verdict --d 10 --field quad:-5 --p-range a:b",
        "verdict --d 10 --field quad:-5 --p 11 --p-range 1:20",
        "verdict --d 10 --field quad:-5",
        "verdict --d 10 --field quad:1 --p 101",
        "verdict --d 10 --field poly:x^2+1 --p 101",
        "verdict --d 10 --field galois:S3 --p 101",
        "verdict --d ten --field quad:-5 --p 101",
        "verdict --d 10 --field quad:-5 --p -7",
        "sets",
        "sets --field quad:4",
        "sets --field quad:-5 --variant neither",
        "sets --field cyclo:5 --supplied /nonexistent/file.json",
        "least-q --d 12 --field quad:-5",
        "least-q --d 10 --field quad:-5 --bound 1",
        "genus --d 1",
        "genus --d 4",
        "conic --d 14",
        "conic --d 6 --c 3",
        "conic",
        "conic --c 0 --field quad:-5",
        "classgroup --disc -12",
        "classgroup --disc 5 --bogus",
        "fr --q 9",
        "trace-filter --q 29 --p 117",
        "trace-filter --q 3 --p 2",
        "irred --d 10 --field quad:-5",
        "hypotheses --d 12 --field quad:-5",
    };
    for (const char* a : bad) {
        std::string args = a;
        CAPTURE(args);
        CHECK(run(args).code == 2);
    }
}

TEST_CASE("unsupported degree exits with 3 unless assumed")
{
    auto env = cache_env();
    CHECK(run("sets --field cyclo:13", env).code == 3);
    CHECK(run("sets --field biquad:-5,7", env).code == 3);
    CHECK(run("verdict --d 10 --field cyclo:13 --p 331", env).code == 3);
    CHECK(run("verdict --d 10 --field cyclo:13 --p 331 --assume-outside-exceptional", env).code == 0);
    CHECK(run("irred --d 10 --field biquad:-5,7 --p 331", env).code == 3);
}
