#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "gallai_lab/io.hpp"
#include "gallai_lab/kernels.hpp"

using namespace gallai_lab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    io::Json report() const { return io::parse(out.substr(0, out.find('\n'))); }
};

Run run(const std::string& args) {
    Run r;
    const std::string cmd = std::string(GALLAI_LAB_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (const auto got = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("gallai_lab_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("generate gallai then count rainbow triangles") {
    const auto dir = scratch("gallai");
    const auto g = (dir / "g.json").string();
    REQUIRE(run("--seed 7 generate gallai --n 100 -o " + g).code == 0);
    CHECK(count_rainbow_triangles(io::colored_graph_from_json(io::read_json(g))) == 0);
    const auto c = run("count " + g + " --rainbow");
    CHECK(c.code == 0);
    CHECK(c.report().at("payload").at("count") == 0);
    CHECK(c.report().at("command").get<std::string>().find("count") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("generate corrupt recolors exactly floor(noise * C(n,2)) pairs") {
    const auto dir = scratch("corrupt");
    const auto g = (dir / "g.json").string(), h = (dir / "h.json").string(), t = (dir / "t.jsonl").string();
    REQUIRE(run("--seed 7 generate gallai --n 100 -o " + g).code == 0);
    REQUIRE(run("--seed 7 generate corrupt -i " + g + " --noise 0.01 -o " + h + " --transcript " + t).code == 0);
    const auto a = io::colored_graph_from_json(io::read_json(g));
    const auto b = io::colored_graph_from_json(io::read_json(h));
    std::int64_t diff = 0;
    for (int u = 0; u < 100; ++u)
        for (int v = u + 1; v < 100; ++v) diff += a.color(u, v) != b.color(u, v);
    CHECK(diff == 49);
    CHECK(io::transcript_from_jsonl(io::read_text(t)).cost() == 49);
    fs::remove_all(dir);
}

TEST_CASE("repair a corrupted instance end to end") {
    const auto dir = scratch("repair");
    const auto g = (dir / "g.json").string(), h = (dir / "h.json").string(), out = (dir / "fixed.json").string();
    REQUIRE(run("--seed 7 generate gallai --n 150 -o " + g).code == 0);
    REQUIRE(run("--seed 7 generate corrupt -i " + g + " --noise 0.002 -o " + h).code == 0);
    const auto r = run("--seed 7 repair " + h + " --epsilon 0.1 -o " + out);
    CHECK(r.code == 0);
    const auto p = r.report().at("payload");
    CHECK(p.at("certified") == true);
    CHECK(p.at("post_count") == 0);
    CHECK(count_rainbow_triangles(io::colored_graph_from_json(io::read_json(out))) == 0);

    // Replay: same seed, same payload.
    auto again = run("--seed 7 repair " + h + " --epsilon 0.1 -o " + out).report();
    CHECK(again.at("payload") == p);
    fs::remove_all(dir);
}

TEST_CASE("tester and decomposer exit codes") {
    const auto dir = scratch("tester");
    const auto g = (dir / "g.json").string(), k3 = (dir / "k3.json").string();
    REQUIRE(run("--seed 3 generate gallai --n 40 -o " + g).code == 0);
    io::write_text(k3, R"({"n":3,"k":3,"colors":[1,2,3]})");
    CHECK(run("test " + g + " --epsilon 0.1 --samples 300").code == 0);
    const auto rej = run("test " + k3 + " --epsilon 0.1 --samples 5");
    CHECK(rej.code == 1);
    CHECK(rej.report().at("payload").at("witness") == io::Json::array({0, 1, 2}));
    CHECK(run("decompose " + g).code == 0);
    CHECK(run("--format dot decompose " + g).out.rfind("graph gallai", 0) == 0);
    CHECK(run("decompose " + k3).code == 1);
    fs::remove_all(dir);
}

TEST_CASE("hardness bundles through the command line") {
    const auto dir = scratch("d3");
    const auto b = (dir / "bundle").string();
    REQUIRE(run("generate d3-hardness --m 20 --factor 4 -o " + b).code == 0);
    const auto v = run("verify " + b);
    CHECK(v.code == 0);
    CHECK(v.report().at("payload").at("ok") == true);

    // Duplicate a tuple pair: the extra copy shares {t0, t1} with the first one.
    auto fam = io::read_json(fs::path(b) / "family.json");
    auto dup = fam.at("host_copies").at(0);
    dup.at(2) = fam.at("host_copies").at(1).at(2);
    fam.at("host_copies").push_back(dup);
    io::write_text(fs::path(b) / "family.json", io::dump(fam));
    const auto bad = run("verify " + b);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("witness") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("usage and parse errors exit with 2") {
    const auto dir = scratch("errors");
    const auto broken = (dir / "broken.json").string();
    io::write_text(broken, "{\n \"n\": 3,\n \"k\" 3\n}\n");
    CHECK(run("count " + broken + " --rainbow").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("generate gallai").code == 2);
    CHECK(run("--format svg count " + broken).code == 2);
    CHECK(run("--help").code == 0);
    const std::string cmd = std::string(GALLAI_LAB_CLI) + " count " + broken + " --rainbow 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string all;
    std::array<char, 4096> buf{};
    while (const auto got = std::fread(buf.data(), 1, buf.size(), pipe)) all.append(buf.data(), got);
    pclose(pipe);
    CHECK(all.find("broken.json:3:") != std::string::npos);
    fs::remove_all(dir);
}
