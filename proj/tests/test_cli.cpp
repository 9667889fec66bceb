#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bg/formula.hpp"
#include "bg/game.hpp"
#include "bg/rational.hpp"
#include "support.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace bg;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

const std::string data = BG_DATA;

Run bg_run(const std::string& args) {
    std::string cmd = std::string(BG_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json bg_json(const std::string& args, int want_code) {
    Run r = bg_run(args);
    CAPTURE(args);
    CAPTURE(r.out);
    REQUIRE(r.code == want_code);
    return json::parse(r.out);
}

} // namespace

TEST_CASE("value of matching pennies") {
    json j = bg_json("value --game " + data + "/mp.bg", 0);
    CHECK(j["value"] == "1/2");
    CHECK(j["maxmin"].size() == 2);
}

TEST_CASE("decision verbs agree with their exit code") {
    struct Case {
        std::string args;
        int code;
    };
    const std::vector<Case> cases{
        {"nash unique --game " + data + "/bos.nf", 1},
        {"nash unique --game " + data + "/mp.nf", 0},
        {"nash guarantee --game " + data + "/bos.nf --v 3,3", 1},
        {"nash guarantee --game " + data + "/bos.nf --v 2,1", 0},
        {"nash sat --game " + data + "/mp.bg --phi \"p & q\"", 1},
        {"nash irrational --game " + data + "/mp.nf --fast", 1},
        {"nash is --game " + data + "/mp.nf --weights \"1/2,1/2;1/2,1/2\"", 0},
        {"nash is --game " + data + "/mp.nf --weights \"1,0;1/2,1/2\"", 1},
        {"verify cover-matrix --m 3", 0},
    };
    for (const auto& c : cases) {
        json j = bg_json(c.args, c.code);
        CHECK(j["answer"] == (c.code == 0 ? "yes" : "no"));
    }
}

TEST_CASE("pure equilibria of battle of the sexes") {
    json j = bg_json("nash pure --game " + data + "/bos.nf", 0);
    CHECK(j["count"] == 2);
}

TEST_CASE("emitted games parse back") {
    json nf = bg_json("normal-form --game " + data + "/mp.bg", 0);
    NormalForm parsed = parse_normal_form(nf["normal_form"].get<std::string>());
    CHECK(parsed.extent(0) == 2);

    json g = bg_json("gadget build --value 1/3", 0);
    BooleanGame gadget = parse_game(g["game"].get<std::string>());
    CHECK_NOTHROW(validate_game(gadget));

    json e = bg_json("encode equal --width 2", 0);
    Formula f = parse_formula(e["formula"].get<std::string>());
    CHECK(free_vars(f).size() == 4);
    CHECK(e["formula"] == "(p1 <-> q1) & (p2 <-> q2)");
}

TEST_CASE("guarantee reduction with witness") {
    auto dir = std::filesystem::temp_directory_path() / "bg_cli_test";
    std::filesystem::remove_all(dir);
    json j = bg_json("reduce nexptm --machine " + data + "/acc.json --bound 2 --emit-witness --out-dir " + dir.string(), 0);
    CHECK(j["v2"] == "7/16");
    CHECK(j["witness_v2"] == "7/16");
    BooleanGame g = parse_game(j["game"].get<std::string>());
    CHECK(g.vars[0].size() == 16);
    CHECK(g.vars[1].size() == 34);

    BooleanGame from_file = parse_game(bgtest::slurp((dir / "game.bg").string()));
    CHECK(from_file.all_vars() == g.all_vars());
    MixedProfile p = parse_profile(g, bgtest::slurp((dir / "witness.json").string()));
    CHECK(expected_utility(g, p, 1) == make_rational(7, 16));
    CHECK_FALSE(json::parse(bgtest::slurp((dir / "var_index.json").string())).empty());
    std::filesystem::remove_all(dir);
}

TEST_CASE("errors and caps") {
    CHECK(bg_run("value --game " + data + "/mp.bg --bogus").code == 2);
    CHECK(bg_run("value --game " + data + "/missing.bg").code == 2);
    CHECK(bg_run("").code == 2);
    CHECK(bg_run("--cap-cells 2 normal-form --game " + data + "/mp.bg").code == 3);
}

TEST_CASE("text output") {
    Run r = bg_run("--format text value --game " + data + "/mp.bg");
    CHECK(r.code == 0);
    CHECK(r.out.find("value: 1/2") != std::string::npos);
}
