#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(WHA_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

fs::path scratch_dir()
{
    const fs::path dir = fs::temp_directory_path() / "wha_cli_tests";
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("generated examples verify cleanly")
{
    const fs::path dir = scratch_dir();
    for (const std::string& args : {std::string("example group --group Z2 --normal all"),
                                    std::string("example group --group S3 --normal trivial --dual"),
                                    std::string("example twisted --group Klein --normal all --cocycle pauli"),
                                    std::string("example action --seed sign")}) {
        const Run gen = run(args);
        REQUIRE(gen.status == 0);
        const fs::path file = dir / "record.json";
        write(file, gen.out);
        const Run check = run("verify " + file.string());
        CHECK(check.status == 0);
        CHECK(nlohmann::json::parse(check.out)["report"]["ok"] == true);
    }
}

TEST_CASE("malformed input exits with status 2")
{
    const fs::path file = scratch_dir() / "broken.json";
    write(file, "{\"dim\": 2, \"mult\": [");
    CHECK(run("verify " + file.string()).status == 2);
    write(file, "{\"dim\": 2, \"mult\": [], \"unit\": [1, 0], \"star\": []}");
    CHECK(run("verify " + file.string()).status == 2);
    CHECK(run("verify " + (scratch_dir() / "missing.json").string()).status == 2);
}

TEST_CASE("a rescaled counit is reported by name")
{
    const fs::path file = scratch_dir() / "bad_counit.json";
    nlohmann::json j = nlohmann::json::parse(run("example group --group Z2 --normal all").out);
    for (auto& entry : j["counit"]) entry[0] = 2.0 * entry[0].get<double>();
    write(file, j.dump());
    const Run r = run("--format text verify " + file.string());
    CHECK(r.status == 1);
    CHECK(r.out.find("FAIL report.counit_weak_multiplicative ") != std::string::npos);
}

TEST_CASE("tower output is byte stable and carries metadata")
{
    const fs::path seed = scratch_dir() / "seed.json";
    write(seed, run("example action --seed dual --group Z2").out);
    const Run first = run("tower --seed " + seed.string() + " --depth 3");
    const Run second = run("tower --seed " + seed.string() + " --depth 3");
    REQUIRE(first.status == 0);
    CHECK(first.out == second.out);
    const nlohmann::json j = nlohmann::json::parse(first.out);
    CHECK(j["meta"]["command"] == "tower");
    CHECK(j["meta"]["input_sha256"].get<std::string>().size() == 64);
}

TEST_CASE("tower refuses depths beyond the budget")
{
    const fs::path seed = scratch_dir() / "seed_budget.json";
    write(seed, run("example action --seed sign").out);
    CHECK(run("--budget 40 tower --seed " + seed.string() + " --depth 3").status == 1);
}
