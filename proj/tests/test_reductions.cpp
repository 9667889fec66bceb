#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bg/error.hpp"
#include "bg/reductions.hpp"
#include "bg/solver.hpp"
#include "support.hpp"

#include <set>

using namespace bg;

namespace {

TuringMachine load(const std::string& name) { return parse_machine(bgtest::slurp(std::string(BG_DATA) + "/" + name)); }

std::vector<Cell> all_cells(const TuringMachine& m) {
    std::vector<Cell> out;
    for (Symbol s : {Symbol::zero, Symbol::one, Symbol::blank}) {
        out.push_back({s, Cell::left, -1});
        out.push_back({s, Cell::right, -1});
        for (int q = 0; q < static_cast<int>(m.states.size()); ++q) out.push_back({s, Cell::here, q});
    }
    return out;
}

const PositionClass& class_of(const std::vector<PositionClass>& classes, std::uint64_t j, std::uint64_t W) {
    for (const auto& c : classes) {
        if (c.wrap != (j == W - 1)) continue;
        if (c.wrap) return c;
        if (c.dl == static_cast<int>(std::min<std::uint64_t>(j, 2)) &&
            c.dr == static_cast<int>(std::min<std::uint64_t>(W - 2 - j, 2)))
            return c;
    }
    throw std::logic_error("no class");
}

Assignment restrict_to(const Assignment& a, const std::set<std::string>& vs) {
    Assignment out;
    for (const auto& v : vs) out[v] = a.at(v);
    return out;
}

std::set<std::string> check_vars(const ReductionOutput& ro) { return free_vars(ro.check); }

Assignment square_vars_random(const ReductionOutput& ro, std::mt19937_64& rng) {
    Assignment a;
    for (const auto& v : ro.game.vars[1]) a[v] = rng() & 1;
    return a;
}

MixedStrategy coin(const std::string& v) { return uniform_strategy({{{v, false}}, {{v, true}}}); }

RunTable acc_table(const TuringMachine& m) {
    auto t = simulate_tm(m, {}, 2, 2, 1);
    REQUIRE(t);
    return *t;
}

} // namespace

TEST_CASE("machine parsing") {
    TuringMachine m = load("acc.json");
    CHECK(m.states == std::vector<std::string>{"q0", "qa"});
    CHECK(m.transitions.size() == 1);
    CHECK(machine_rules(m).size() == 4);
    TuringMachine back = parse_machine(render_machine(m));
    CHECK(back.states == m.states);
    CHECK(back.transitions.size() == 1);

    CHECK_THROWS_AS(parse_machine("{"), input_error);
    CHECK_THROWS_AS(parse_machine(R"({"states":["q0","qa"],"start":"q0","accept":"qa","transitions":[)"
                                  R"({"from":"qa","read":"_","write":"0","move":"L","to":"q0"}]})"),
                    input_error);
    CHECK_THROWS_AS(parse_machine(R"({"states":["q0","qa"],"start":"q0","accept":"qa","transitions":[)"
                                  R"({"from":"q0","read":"_","write":"0","move":"S","to":"qa"}]})"),
                    input_error);
    CHECK_THROWS_AS(parse_machine(R"({"states":["q0","qa"],"start":"q9","accept":"qa","transitions":[]})"),
                    input_error);
    CHECK(parse_word("0110").size() == 4);
    CHECK(parse_word("").empty());
    CHECK_THROWS_AS(parse_word("012"), input_error);
}

TEST_CASE("table sizes") {
    CHECK(table_spec(2).k == 1);
    CHECK(table_spec(2).W == 2);
    CHECK(table_spec(3).k == 2);
    CHECK(table_spec(4).k == 2);
    CHECK(table_spec(5).k == 3);
    CHECK_THROWS_AS(table_spec(std::uint64_t{1} << 40), resource_error);
}

TEST_CASE("simulation") {
    TuringMachine m = load("acc.json");
    RunTable t = acc_table(m);
    REQUIRE(t.size() == 2);
    REQUIRE(t[0].size() == 2);
    int q0 = m.state_index("q0"), qa = m.state_index("qa");
    CHECK(t[0][0] == Cell{Symbol::blank, Cell::here, q0});
    CHECK(t[0][1] == Cell{Symbol::blank, Cell::left, -1});
    CHECK(t[1][0] == Cell{Symbol::zero, Cell::here, qa});
    CHECK(t[1][1] == Cell{Symbol::blank, Cell::left, -1});

    auto longer = simulate_tm(m, {}, 4, 4, 1);
    REQUIRE(longer);
    CHECK((*longer)[2] == (*longer)[1]);
    CHECK((*longer)[3] == (*longer)[1]);

    TuringMachine stuck =
        parse_machine(R"({"states":["q0","q1","qa"],"start":"q0","accept":"qa","transitions":[)"
                      R"({"from":"q0","read":"_","write":"0","move":"R","to":"q1"}]})");
    CHECK_FALSE(simulate_tm(stuck, {}, 2, 2, 1));

    TuringMachine walker = load("walker.json");
    auto wt = simulate_tm(walker, {}, 4, 4, 3);
    REQUIRE(wt);
    CHECK((*wt)[3][0].state == walker.state_index("qa"));
    CHECK_FALSE(simulate_tm(walker, {}, 4, 4, 2));
}

TEST_CASE("square oracle examples") {
    TuringMachine m = load("acc.json");
    RunTable t = acc_table(m);
    for (std::uint64_t i = 0; i < 2; ++i)
        for (std::uint64_t j = 0; j < 2; ++j) CHECK(square_oracle(square_at(t, i, j), m, {}, 2));

    Square two_heads = square_at(t, 0, 0);
    two_heads.cells[1] = {Symbol::blank, Cell::here, m.state_index("q0")};
    CHECK_FALSE(square_oracle(two_heads, m, {}, 2));

    Square no_start = square_at(t, 0, 0);
    no_start.cells[0] = {Symbol::blank, Cell::right, -1};
    CHECK_FALSE(square_oracle(no_start, m, {}, 2));
    CHECK((square_requirements(no_start, m, {}, 2) & 1u) == 0);
}

TEST_CASE("accepting tables pass everywhere and corrupted ones do not") {
    TuringMachine walker = load("walker.json");
    RunTable t = *simulate_tm(walker, {}, 4, 4, 3);
    for (std::uint64_t i = 0; i < 4; ++i)
        for (std::uint64_t j = 0; j < 4; ++j) REQUIRE(square_oracle(square_at(t, i, j), walker, {}, 4));

    std::vector<Cell> cells = all_cells(walker);
    int corrupted = 0;
    for (std::uint64_t i = 0; i < 4; ++i)
        for (std::uint64_t j = 0; j < 4; ++j)
            for (const Cell& c : cells) {
                if (c == t[i][j]) continue;
                RunTable bad = t;
                bad[i][j] = c;
                bool some_fail = false;
                for (std::uint64_t a = 0; a < 4 && !some_fail; ++a)
                    for (std::uint64_t b = 0; b < 4 && !some_fail; ++b)
                        some_fail = !square_oracle(square_at(bad, a, b), walker, {}, 4);
                CHECK(some_fail);
                ++corrupted;
            }
    CHECK(corrupted == 16 * (static_cast<int>(cells.size()) - 1));
}

TEST_CASE("admissible squares match the oracle") {
    for (const char* name : {"acc.json", "walker.json"}) {
        CAPTURE(std::string(name));
        TuringMachine m = load(name);
        const std::uint64_t K = 8, W = 8;
        auto rules = admissible_squares(m, {}, K);
        CHECK(rules.size() == machine_rules(m).size());
        std::vector<PositionClass> classes = position_classes(W);
        std::vector<std::set<std::array<Cell, 4>>> by_class(classes.size());
        for (const auto& r : rules) {
            CHECK(r.size() <= 891);
            REQUIRE(r.classes.size() == classes.size());
            for (std::size_t c = 0; c < classes.size(); ++c) by_class[c].insert(r.classes[c].patterns.begin(), r.classes[c].patterns.end());
        }
        std::vector<Cell> cells = all_cells(m);
        for (std::uint64_t j = 0; j < W; ++j) {
            const PositionClass& pc = class_of(classes, j, W);
            std::size_t idx = static_cast<std::size_t>(&pc - classes.data());
            std::set<std::array<Cell, 4>> accepted;
            Square s;
            s.time = 1;
            s.tape = j;
            for (const Cell& a : cells)
                for (const Cell& b : cells)
                    for (const Cell& c : cells)
                        for (const Cell& d : cells) {
                            s.cells = {a, b, c, d};
                            if (square_oracle(s, m, {}, K)) accepted.insert(s.cells);
                        }
            CHECK(accepted == by_class[idx]);
        }
    }
}

TEST_CASE("do-nothing patterns copy the row") {
    TuringMachine m = load("acc.json");
    int qa = m.state_index("qa");
    for (const auto& r : admissible_squares(m, {}, 2)) {
        if (r.rule.move != Move::stay) continue;
        CHECK(r.rule.from == qa);
        for (const auto& c : r.classes)
            for (const auto& p : c.patterns) {
                CHECK(p[0] == p[2]);
                CHECK(p[1] == p[3]);
            }
    }
}

TEST_CASE("guarantee game layout") {
    TuringMachine m = load("acc.json");
    ReductionOutput ro = build_guarantee_game(m, {}, 2);
    CHECK(ro.spec.k == 1);
    CHECK(ro.payoff == PayoffVector{0, make_rational(7, 16)});
    CHECK(guarantee_payoff(1) == make_rational(7, 16));
    CHECK(ro.game.vars[0].size() == 4 + 2 * 1 + 2 + 4 * 2);
    CHECK(ro.game.vars[1].size() == 4 * (4 + 2 * 1 + 2) + 2);

    std::set<std::string> indexed;
    std::size_t total = 0;
    for (const auto& [key, vs] : ro.var_index) {
        for (const auto& v : vs) indexed.insert(v);
        total += vs.size();
    }
    std::vector<std::string> all = ro.game.all_vars();
    CHECK(total == all.size());
    CHECK(indexed == std::set<std::string>(all.begin(), all.end()));
    CHECK(ro.var_index.count("Time1"));
    CHECK(ro.var_index.count("nsState2"));
    CHECK(ro.var_index.count("side.r"));

    CHECK_THROWS_AS(build_guarantee_game(m, {Symbol::zero, Symbol::one, Symbol::zero}, 2), input_error);
    CHECK_THROWS_AS(build_forall_guarantee_game(m, {}, 2), input_error);
}

TEST_CASE("require agrees with the oracle on every framed square at k = 1") {
    TuringMachine m = load("acc.json");
    ReductionOutput ro = build_guarantee_game(m, {}, 2);
    std::set<std::string> vs = check_vars(ro);
    std::vector<Cell> cells = all_cells(m);
    std::map<std::string, int> index;
    int slot = 0;
    for (const auto& v : ro.game.vars[1]) index[v] = slot++;
    CompiledFormula check(ro.check, index);
    std::vector<std::uint8_t> values(index.size());
    std::size_t agree = 0, yes = 0, n = 0;
    Square s;
    for (std::uint64_t i = 0; i < 2; ++i)
        for (std::uint64_t j = 0; j < 2; ++j) {
            s.time = i;
            s.tape = j;
            for (const Cell& a : cells)
                for (const Cell& b : cells)
                    for (const Cell& c : cells)
                        for (const Cell& d : cells) {
                            s.cells = {a, b, c, d};
                            Assignment as = square_assignment(ro, s);
                            for (const auto& [v, x] : as) values[index.at(v)] = x;
                            bool formula = check(values.data());
                            bool oracle = check_oracle(ro, as);
                            agree += formula == oracle;
                            yes += oracle;
                            ++n;
                        }
        }
    CHECK(n == 4 * 12 * 12 * 12 * 12);
    CHECK(agree == n);
    CHECK(yes > 0);
    CHECK(yes < n);

    // unstructured and mutated assignments
    std::mt19937_64 rng(99);
    RunTable t = acc_table(m);
    std::vector<std::string> sv(vs.begin(), vs.end());
    int raw_agree = 0;
    for (int round = 0; round < 10000; ++round) {
        Assignment as = round % 2 ? square_vars_random(ro, rng)
                                  : square_assignment(ro, square_at(t, rng() % 2, rng() % 2));
        if (round % 2 == 0) {
            int flips = 1 + static_cast<int>(rng() % 3);
            for (int f = 0; f < flips; ++f) {
                auto& x = as[sv[rng() % sv.size()]];
                x = !x;
            }
        }
        raw_agree += eval_formula(ro.check, restrict_to(as, vs)) == check_oracle(ro, as);
    }
    CHECK(raw_agree == 10000);
}

TEST_CASE("illegal agrees with the oracle at k = 2") {
    TuringMachine m = load("acc.json");
    ReductionOutput ro = build_forall_guarantee_game(m, {}, 4);
    CHECK(ro.spec.k == 2);
    CHECK(forall_delta(2) == make_rational(1, 64) - make_rational(1, 1024));
    CHECK(forall_delta(2) == make_rational(15, 1024));
    Rational d = forall_delta(2);
    CHECK(ro.payoff[1] == make_rational(1, 16) + d / 12 + make_rational(2, 64) + 2 * d / 48);
    CHECK(ro.payoff[1] == make_rational(783, 8192));

    std::set<std::string> vs = check_vars(ro);
    std::vector<Cell> cells = all_cells(m);
    auto t = simulate_tm(m, {}, 4, 4, 3);
    REQUIRE(t);
    std::mt19937_64 rng(5);
    int agree = 0, yes = 0;
    for (int round = 0; round < 12000; ++round) {
        Assignment as;
        if (round % 3 == 0) {
            as = square_vars_random(ro, rng);
        } else {
            Square s = square_at(*t, rng() % 4, rng() % 4);
            if (round % 3 == 1) s.cells[rng() % 4] = cells[rng() % cells.size()];
            as = square_assignment(ro, s);
        }
        bool oracle = check_oracle(ro, as);
        agree += eval_formula(ro.check, restrict_to(as, vs)) == oracle;
        yes += oracle;
    }
    CHECK(agree == 12000);
    CHECK(yes > 0);
}

TEST_CASE("witness profile at k = 1") {
    TuringMachine m = load("acc.json");
    ReductionOutput ro = build_guarantee_game(m, {}, 2);
    MixedProfile p = witness_profile(ro, acc_table(m));
    CHECK(p.players[0].support.size() == 16);
    CHECK(p.players[1].support.size() == 16);
    CHECK(expected_utility(ro.game, p, 1) == make_rational(7, 16));
    CHECK(expected_utility(ro.game, p, 0) == make_rational(9, 16));

    auto x = square_position_weights(ro, p);
    for (const auto& row : x)
        for (const auto& w : row) CHECK(w == make_rational(1, 4));
    for (const auto& row : cover_weights(x))
        for (const auto& c : row) CHECK(c == ro.payoff[1]);

    SolverOptions opt;
    opt.sample = 2000;
    NashCheck one = check_deviations(ro.game, p, 0, opt);
    CHECK(one.holds);
    CHECK_FALSE(one.sampled);
    CHECK(one.checked[0] == 65536);
    NashCheck two = check_deviations(ro.game, p, 1, opt);
    CHECK(two.holds);
    CHECK(two.sampled);

    CHECK_THROWS_AS(witness_profile(ro, *simulate_tm(m, {}, 4, 4, 1)), input_error);
}

TEST_CASE("cover matrices") {
    for (int m = 2; m <= 4; ++m) {
        auto a = cover_matrix(m);
        REQUIRE(a.size() == static_cast<std::size_t>(m * m));
        for (std::size_t r = 0; r < a.size(); ++r) {
            CHECK(a[r][r] == 4);
            int ones = 0;
            for (std::size_t c = 0; c < a.size(); ++c)
                if (c != r) {
                    CHECK((a[r][c] == 0 || a[r][c] == 1));
                    ones += a[r][c] == 1;
                }
            CHECK(ones == 3);
        }
        CHECK(cover_matrix_check(m));
    }
    CHECK(determinant(cover_matrix(3)) == 283024);
    CHECK(determinant({{2, 1}, {4, 2}}) == 0);
    CHECK(determinant({{0, 1}, {1, 0}}) == -1);

    std::vector<std::vector<Rational>> x(3, std::vector<Rational>(3, make_rational(1, 9)));
    for (const auto& row : cover_weights(x))
        for (const auto& c : row) CHECK(c == make_rational(7, 36));
}

TEST_CASE("unique-nash transform") {
    BooleanGame mp = bgtest::matching_pennies();
    Transformed t = transform_game(TransformKind::unique_nash, mp, {make_rational(1, 2), make_rational(1, 2)}, "x");
    CHECK_FALSE(t.phi);
    REQUIRE(t.gadgets.size() == 2);
    CHECK(t.game.vars[0].size() == 11);
    const GadgetBundle &gu = t.gadgets[0], &gw = t.gadgets[1];
    for (bool dummy : {false, true}) {
        MixedProfile p;
        p.players.push_back(product(product(coin("p"), product(gu.equilibrium->players[0], gw.equilibrium->players[0])),
                                    pure_strategy({{"x.Play1", false}, {"x.Dummy1", dummy}})));
        p.players.push_back(product(product(coin("q"), product(gu.equilibrium->players[1], gw.equilibrium->players[1])),
                                    pure_strategy({{"x.Play2", false}, {"x.Dummy2", false}})));
        NashCheck c = check_nash(t.game, p);
        CHECK(c.holds);
        CHECK_FALSE(c.sampled);
        CHECK(expected_utility(t.game, p, 0) == make_rational(1, 2) * make_rational(1, 2));
    }
    CHECK_THROWS_AS(transform_game(TransformKind::unique_nash, mp, {make_rational(3, 2), 0}, "x"), input_error);
    CHECK_THROWS_AS(transform_game(TransformKind::unique_nash, mp, {make_rational(1, 2)}, "x"), input_error);
}

TEST_CASE("forall-nash-sat transform") {
    BooleanGame mp = bgtest::matching_pennies();
    Transformed t = transform_game(TransformKind::forall_nash_sat, mp, {make_rational(1, 2), make_rational(1, 2)}, "y");
    REQUIRE(t.phi);
    CHECK(same(*t.phi, disj(var("y.Play1"), var("y.Play2"))));
    CHECK_NOTHROW(validate_game(t.game));
}

TEST_CASE("irrational transform") {
    BooleanGame mp = bgtest::matching_pennies();
    Transformed t = transform_game(TransformKind::irrational, mp, {make_rational(3, 4)}, "z");
    REQUIRE(t.gadgets.size() == 1);
    CHECK(t.game.vars[0].size() == 11);
    const GadgetBundle& gv = t.gadgets[0];
    MixedProfile p;
    p.players.push_back(
        product(pure_strategy({{"p", false}, {"z.Dummy", false}, {"z.Choice1", false}}), gv.equilibrium->players[0]));
    p.players.push_back(product(pure_strategy({{"q", false}, {"z.Choice2", false}}), gv.equilibrium->players[1]));
    NashCheck c = check_nash(t.game, p);
    CHECK(c.holds);
    CHECK(expected_utility(t.game, p, 0) == make_rational(3, 4));
    CHECK_THROWS_AS(transform_game(TransformKind::irrational, mp, {make_rational(1, 2), make_rational(1, 2)}, "z"),
                    input_error);
}

TEST_CASE("exists-nash-sat wrapper") {
    TuringMachine m = load("acc.json");
    WrappedGuarantee w = transform_exists_nash_sat(m, {}, 2);
    std::set<std::string> base(w.base.game.vars[1].begin(), w.base.game.vars[1].end());
    CHECK(w.game.vars[0].size() == w.base.game.vars[0].size() + w.half.game.vars[0].size());
    CHECK(w.game.vars[1].size() == w.base.game.vars[1].size() + w.half.game.vars[1].size());
    CHECK(same(w.game.goals[1], disj(w.base.game.goals[1], conj(neg(w.base.game.goals[0]), w.half.game.goals[1]))));
    CHECK(same(w.phi, disj(w.base.game.goals[0], w.base.game.goals[1])));

    MixedProfile base_p = witness_profile(w.base, acc_table(m));
    MixedProfile p;
    for (std::size_t i = 0; i < 2; ++i) p.players.push_back(product(base_p.players[i], w.half.equilibrium->players[i]));
    BooleanGame probe{w.game.vars, {w.phi, w.phi}};
    CHECK(expected_utility(probe, p, 0) == 1);
}

TEST_CASE("duplication construction") {
    NormalForm mp = bgtest::pennies_nf();
    NormalForm d = duplicate_construction(mp, make_rational(1, 4));
    CHECK(d.extent(0) == 5);
    CHECK(d.extent(1) == 3);
    CHECK(d.labels[0][2] == "Heads'");
    CHECK(d.labels[0][4] == "a");
    CHECK(d.labels[1][2] == "b");
    CHECK(irrational_nash(d, false));
    CHECK_FALSE(irrational_nash(mp, false));
    // v above what G can guarantee leaves only the safe pair
    NormalForm high = duplicate_construction(mp, make_rational(3, 4));
    CHECK(high.payoff(0, {4, 2}) == make_rational(3, 4));
    CHECK(high.payoff(1, {4, 2}) == 1);
}
