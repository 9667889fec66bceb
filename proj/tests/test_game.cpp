#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bg/error.hpp"
#include "bg/game.hpp"
#include "bg/solver.hpp"
#include "support.hpp"

using namespace bg;

namespace {

const char* mp_text = "players: 2\n"
                      "# matching pennies\n"
                      "vars 1: p\n"
                      "goal 1: ~(p <-> q)\n"
                      "\n"
                      "vars 2: q\n"
                      "goal 2: p <-> q\n";

MixedStrategy coin(const std::string& v) { return uniform_strategy({{{v, false}}, {{v, true}}}); }

MixedProfile random_profile(const BooleanGame& g, std::mt19937_64& rng) {
    MixedProfile p;
    for (std::size_t i = 0; i < g.players(); ++i) {
        auto vs = g.strategy_vars(i);
        std::uint64_t n = std::uint64_t{1} << vs.size();
        std::vector<std::uint64_t> chosen;
        for (std::uint64_t s = 0; s < n; ++s)
            if (rng() % 2) chosen.push_back(s);
        if (chosen.empty()) chosen.push_back(rng() % n);
        std::vector<Rational> w;
        Rational total = 0;
        for (std::size_t j = 0; j < chosen.size(); ++j) {
            w.emplace_back(static_cast<long>(1 + rng() % 5));
            total += w.back();
        }
        MixedStrategy ms;
        for (std::size_t j = 0; j < chosen.size(); ++j)
            ms.support.emplace_back(strategy_assignment(vs, chosen[j]), w[j] / total);
        p.players.push_back(ms);
    }
    return p;
}

} // namespace

TEST_CASE("parse and validate") {
    BooleanGame g = parse_game(mp_text);
    REQUIRE(g.players() == 2);
    CHECK(g.vars[0] == std::vector<std::string>{"p"});
    CHECK(same(g.goals[0], parse_formula("~(p <-> q)")));
    CHECK_NOTHROW(validate_game(g));

    BooleanGame back = parse_game(render_game(g));
    CHECK(back.vars == g.vars);
    CHECK(same(back.goals[0], g.goals[0]));
    CHECK(same(back.goals[1], g.goals[1]));

    CHECK_THROWS_AS(parse_game("players: 2\nvars 1: p\nvars 2: p\ngoal 1: p\ngoal 2: p\n"), input_error);
    CHECK_THROWS_AS(parse_game("players: 2\nvars 1: p\nvars 2: q\ngoal 1: r\ngoal 2: p\n"), input_error);
    CHECK_THROWS_AS(parse_game("players: 2\nvars 1: p\ngoal 1: p\n"), input_error);
    CHECK_THROWS_AS(parse_game("vars 1: p\n"), input_error);

    BooleanGame bad{{{"p"}, {"p"}}, {var("p"), var("p")}};
    CHECK_THROWS_AS(validate_game(bad), input_error);
    BooleanGame empty{{{"p"}, {}}, {var("p"), var("p")}};
    CHECK_THROWS_AS(validate_game(empty), input_error);
}

TEST_CASE("pure utilities") {
    BooleanGame g = bgtest::matching_pennies();
    CHECK(utility_pure(g, {{"p", true}, {"q", true}}, 0) == 0);
    CHECK(utility_pure(g, {{"p", true}, {"q", false}}, 0) == 1);
    CHECK(utility_pure(g, {{"p", true}, {"q", true}}, 1) == 1);
    CHECK_THROWS_AS(utility_pure(g, {{"p", true}}, 0), input_error);
}

TEST_CASE("expected utility") {
    BooleanGame g = bgtest::matching_pennies();
    MixedProfile u{{coin("p"), coin("q")}};
    CHECK(expected_utility(g, u, 0) == make_rational(1, 2));
    CHECK(expected_utility(g, u, 1) == make_rational(1, 2));

    MixedProfile pure{{pure_strategy({{"p", true}}), pure_strategy({{"q", false}})}};
    CHECK(expected_utility(g, pure, 0) == 1);
    CHECK(expected_utility(g, pure, 1) == 0);

    MixedProfile bad{{coin("p")}};
    CHECK_THROWS_AS(expected_utility(g, bad, 0), input_error);
    MixedProfile heavy{{MixedStrategy{{{{{"p", true}}, make_rational(2, 3)}}}, coin("q")}};
    CHECK_THROWS_AS(validate_profile(g, heavy), input_error);
}

TEST_CASE("uniform play counts satisfying assignments") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + round % 9;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
        Formula phi = bgtest::random_formula(rng, 5, names);
        BooleanGame g;
        MixedProfile p;
        for (int i = 0; i < n; ++i) {
            g.vars.push_back({names[i]});
            g.goals.push_back(phi);
            p.players.push_back(coin(names[i]));
        }
        std::uint64_t count = 0;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            Assignment a;
            for (int i = 0; i < n; ++i) a[names[i]] = (m >> i) & 1;
            count += eval_formula(phi, a);
        }
        Rational want(static_cast<long>(count), static_cast<long>(std::uint64_t{1} << n));
        want.canonicalize();
        CHECK(expected_utility(g, p, 0) == want);
    }
}

TEST_CASE("normal form expansion") {
    BooleanGame g = bgtest::matching_pennies();
    NormalForm nf = to_normal_form(g);
    REQUIRE(nf.extent(0) == 2);
    REQUIRE(nf.extent(1) == 2);
    // strategy 0 is p false, strategy 1 is p true
    CHECK(nf.payoff(0, {0, 0}) == 0);
    CHECK(nf.payoff(0, {0, 1}) == 1);
    CHECK(nf.payoff(0, {1, 0}) == 1);
    CHECK(nf.payoff(0, {1, 1}) == 0);
    for (std::size_t c = 0; c < 4; ++c) CHECK(nf.payoffs[0][c] + nf.payoffs[1][c] == 1);

    BooleanGame single{{{"p"}, {"q"}}, {var("p"), top()}};
    NormalForm s = to_normal_form(single);
    CHECK(s.payoff(0, {0, 0}) == 0);
    CHECK(s.payoff(0, {1, 1}) == 1);
    for (const auto& x : s.payoffs[1]) CHECK(x == 1);

    BooleanGame big;
    big.vars.resize(2);
    for (int i = 0; i < 11; ++i) big.vars[0].push_back("a" + std::to_string(i));
    for (int i = 0; i < 10; ++i) big.vars[1].push_back("b" + std::to_string(i));
    big.goals = {top(), top()};
    CHECK_THROWS_AS(to_normal_form(big, std::uint64_t{1} << 20), resource_error);
}

TEST_CASE("strategy numbering") {
    std::vector<std::string> vs{"a", "b", "c"};
    for (std::uint64_t s = 0; s < 8; ++s) CHECK(strategy_index(vs, strategy_assignment(vs, s)) == s);
    Assignment a = strategy_assignment(vs, 4);
    CHECK(a["a"]);
    CHECK_FALSE(a["c"]);
}

TEST_CASE("expected utility matches the tensor contraction") {
    std::mt19937_64 rng(4);
    const std::vector<std::string> names{"a", "b", "c", "d", "e", "f"};
    for (int round = 0; round < 40; ++round) {
        BooleanGame g{{{"a", "b", "c"}, {"d", "e", "f"}},
                      {bgtest::random_formula(rng, 5, names), bgtest::random_formula(rng, 5, names)}};
        MixedProfile p = random_profile(g, rng);
        NormalForm nf = to_normal_form(g);
        PayoffVector pv = expected_payoffs(nf, to_weights(nf, p));
        for (std::size_t i = 0; i < 2; ++i) {
            Rational u = expected_utility(g, p, i);
            CHECK(u == pv[i]);
            CHECK(u >= 0);
            CHECK(u <= 1);
        }
    }
}

TEST_CASE("marginals") {
    MixedProfile u{{coin("p"), coin("q")}};
    auto m = marginalize(u, {"p"});
    REQUIRE(m.size() == 2);
    CHECK(m[{{"p", true}}] == make_rational(1, 2));
    CHECK(m[{{"p", false}}] == make_rational(1, 2));

    MixedProfile pure{{pure_strategy({{"p", true}}), pure_strategy({{"q", false}})}};
    auto pm = marginalize(pure, {"p", "q"});
    REQUIRE(pm.size() == 1);
    CHECK(pm.begin()->second == 1);
    CHECK_THROWS_AS(marginalize(u, {"z"}), input_error);

    std::mt19937_64 rng(8);
    BooleanGame g{{{"a", "b"}, {"c", "d"}}, {top(), top()}};
    for (int round = 0; round < 20; ++round) {
        MixedProfile p = random_profile(g, rng);
        auto mine = marginalize(p, {"a", "b"});
        std::map<Assignment, Rational> want(p.players[0].support.begin(), p.players[0].support.end());
        CHECK(mine == want);
        Rational total = 0;
        for (const auto& [a, w] : marginalize(p, {"b", "c"})) total += w;
        CHECK(total == 1);
    }
}

TEST_CASE("characteristic formula") {
    CHECK(same(characteristic_formula({{"p", true}, {"q", false}}), conj(var("p"), neg(var("q")))));
    CHECK(same(characteristic_formula({{"p", true}}), var("p")));
    CHECK_THROWS_AS(characteristic_formula({}), input_error);

    Assignment a{{"x0", true}, {"x2", false}, {"x5", true}};
    Formula f = characteristic_formula(a);
    int hits = 0;
    for (unsigned m = 0; m < 256; ++m) {
        Assignment b;
        for (int i = 0; i < 8; ++i) b["x" + std::to_string(i)] = (m >> i) & 1;
        bool agrees = b["x0"] && !b["x2"] && b["x5"];
        REQUIRE(eval_formula(f, b) == agrees);
        hits += agrees;
    }
    CHECK(hits == 32);
}

TEST_CASE("disjoint composition") {
    BooleanGame mp = bgtest::matching_pennies();
    auto builder = [](const std::vector<std::vector<Formula>>& gs) {
        return std::vector<Formula>{conj(gs[0][0], gs[1][0]), disj(gs[0][1], var("extra"))};
    };
    BooleanGame c = compose_disjoint({{mp, "g1"}, {mp, "g2"}}, {{0, 1}, {0, 1}}, {{}, {"extra"}}, builder);
    CHECK_NOTHROW(validate_game(c));
    CHECK(c.vars[0] == std::vector<std::string>{"g1.p", "g2.p"});
    CHECK(c.vars[1] == std::vector<std::string>{"extra", "g1.q", "g2.q"});
    CHECK(same(c.goals[0], conj(parse_formula("~(g1.p <-> g1.q)"), parse_formula("~(g2.p <-> g2.q)"))));

    CHECK_THROWS_AS(compose_disjoint({{mp, "g"}, {mp, "g"}}, {{0, 1}, {0, 1}}, {{}, {"extra"}}, builder),
                    input_error);
    auto stray = [](const std::vector<std::vector<Formula>>& gs) {
        return std::vector<Formula>{gs[0][0], var("nowhere")};
    };
    CHECK_THROWS_AS(compose_disjoint({{mp, "g1"}}, {{0, 1}}, {{}, {}}, stray), input_error);
    CHECK(prefixed("ns", "x") == "ns.x");
}

TEST_CASE("fixing variables") {
    BooleanGame g = parse_game("players: 2\nvars 1: p r\nvars 2: q\ngoal 1: p & r\ngoal 2: q | r\n");
    BooleanGame f = fix_vars(g, {{"r", true}});
    CHECK(f.vars[0] == std::vector<std::string>{"p"});
    CHECK(eval_formula(f.goals[1], {{"p", false}, {"q", false}}));
}

TEST_CASE("affine transforms keep equilibria") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 60; ++round) {
        std::size_t n1 = 2 + rng() % 2, n2 = 2 + rng() % 2;
        std::vector<std::vector<long>> a(n1, std::vector<long>(n2)), b = a;
        for (auto& r : a)
            for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
        for (auto& r : b)
            for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
        NormalForm nf = bgtest::bimatrix(a, b);
        Rational s1 = make_rational(static_cast<long>(1 + rng() % 4), 3), s2 = make_rational(static_cast<long>(1 + rng() % 5), 2);
        Rational t1(static_cast<long>(rng() % 9) - 4), t2(static_cast<long>(rng() % 9) - 4);
        NormalForm moved = nf;
        for (auto& x : moved.payoffs[0]) x = s1 * x + t1;
        for (auto& x : moved.payoffs[1]) x = s2 * x + t2;

        std::vector<Weights> candidates;
        if (auto eq = find_nash(nf)) candidates.push_back(eq->weights);
        for (int j = 0; j < 3; ++j) {
            Weights w(2);
            for (std::size_t i = 0; i < 2; ++i) {
                std::size_t n = i == 0 ? n1 : n2;
                Rational total = 0;
                for (std::size_t s = 0; s < n; ++s) {
                    w[i].emplace_back(static_cast<long>(rng() % 3));
                    total += w[i].back();
                }
                if (total == 0) {
                    w[i][0] = 1;
                    total = 1;
                }
                for (auto& x : w[i]) x /= total;
            }
            candidates.push_back(w);
        }
        for (std::size_t r = 0; r < n1; ++r)
            for (std::size_t c = 0; c < n2; ++c) {
                Weights w{std::vector<Rational>(n1), std::vector<Rational>(n2)};
                w[0][r] = 1;
                w[1][c] = 1;
                candidates.push_back(w);
            }
        for (const auto& w : candidates) REQUIRE(is_nash(nf, w) == is_nash(moved, w));
    }
}

TEST_CASE("normal form text") {
    NormalForm bos = parse_normal_form(bgtest::slurp(std::string(BG_DATA) + "/bos.nf"));
    CHECK(bos.extent(0) == 2);
    CHECK(bos.labels[0][0] == "Ballet");
    NormalForm back = parse_normal_form(render_normal_form(bos));
    CHECK(back.labels == bos.labels);
    CHECK(back.payoffs == bos.payoffs);
    CHECK_THROWS_AS(parse_normal_form("players: 2\nstrategies 1: a\nstrategies 2: b\n"), input_error);
}

TEST_CASE("profile json") {
    BooleanGame g = bgtest::matching_pennies();
    MixedProfile p = parse_profile(g, bgtest::slurp(std::string(BG_DATA) + "/mp_profile.json"));
    CHECK(expected_utility(g, p, 0) == make_rational(1, 2));
    MixedProfile back = parse_profile(g, render_profile(p));
    CHECK(back.players[0].support == p.players[0].support);
    CHECK_THROWS_AS(parse_profile(g, R"({"players":[{"support":[{"assign":{},"weight":"1"}]},)"
                                     R"({"support":[{"assign":{"q":true},"weight":"1"}]}]})"),
                    input_error);
}
