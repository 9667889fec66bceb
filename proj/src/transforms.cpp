#include "bg/reductions.hpp"

#include "bg/error.hpp"

#include <algorithm>

namespace bg {

namespace {

Formula none_of(const std::vector<std::string>& vs) {
    std::vector<Formula> lits;
    for (const auto& v : vs) lits.push_back(neg(var(v)));
    return conj(std::move(lits));
}

void check_value(const Rational& v) {
    if (v < 0 || v > 1) throw input_error("transform values must lie in [0,1]");
}

std::vector<std::string> joined(std::initializer_list<const std::vector<std::string>*> parts) {
    std::vector<std::string> out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

} // namespace

Transformed transform_game(TransformKind kind, const BooleanGame& g, const std::vector<Rational>& v,
                           const std::string& ns) {
    validate_game(g);
    if (g.players() != 2) throw input_error("transforms need a two-player game");
    for (const auto& x : v) check_value(x);
    auto fresh = [&](const std::string& name) { return prefixed(ns, name); };
    Transformed out;

    if (kind == TransformKind::irrational) {
        if (v.size() != 1) throw input_error("the irrational transform takes one value");
        GadgetBundle gv = fixed_value_game(v[0], fresh("gv"));
        std::string dummy = fresh("Dummy"), c1 = fresh("Choice1"), c2 = fresh("Choice2");
        std::vector<std::string> x1{dummy, c1}, x2{c2};
        out.game.vars = {joined({&g.vars[0], &x1, &gv.game.vars[0]}), joined({&g.vars[1], &x2, &gv.game.vars[1]})};
        Formula both = conj(var(c1), var(c2));
        out.game.goals = {
            disj(conj(g.goals[0], both), conj({gv.game.goals[0], neg(var(c1)), neg(var(dummy)), none_of(g.vars[0])})),
            disj(conj(g.goals[1], both),
                 conj({gv.game.goals[1], neg(var(c1)), neg(var(c2)), none_of(g.vars[1])}))};
        out.gadgets.push_back(std::move(gv));
        validate_game(out.game);
        return out;
    }

    if (v.size() != 2) throw input_error("this transform takes a payoff pair");
    GadgetBundle gu = fixed_value_game(v[0], fresh("gu"));
    GadgetBundle gw = fixed_value_game(1 - v[1], fresh("gw"));
    std::string play1 = fresh("Play1"), play2 = fresh("Play2");
    Formula stay = conj({neg(var(play1)), neg(var(play2))});

    if (kind == TransformKind::unique_nash) {
        std::string dummy1 = fresh("Dummy1"), dummy2 = fresh("Dummy2");
        std::vector<std::string> x1{play1, dummy1}, x2{play2, dummy2};
        out.game.vars = {joined({&g.vars[0], &gu.game.vars[0], &gw.game.vars[0], &x1}),
                         joined({&g.vars[1], &gu.game.vars[1], &gw.game.vars[1], &x2})};
        out.game.goals = {
            conj(gw.game.goals[0],
                 disj(conj(stay, g.goals[0]),
                      conj({var(play1), neg(var(dummy1)), none_of(g.vars[0]), gu.game.goals[0]}))),
            conj(gu.game.goals[1],
                 disj(conj(stay, g.goals[1]),
                      conj({var(play2), neg(var(dummy2)), none_of(g.vars[1]), gw.game.goals[1]})))};
    } else {
        std::vector<std::string> x1{play1}, x2{play2};
        out.game.vars = {joined({&g.vars[0], &gu.game.vars[0], &gw.game.vars[0], &x1}),
                         joined({&g.vars[1], &gu.game.vars[1], &gw.game.vars[1], &x2})};
        for (std::size_t i = 0; i < 2; ++i)
            out.game.goals.push_back(disj({conj(stay, g.goals[i]), conj(var(play1), gu.game.goals[i]),
                                           conj(var(play2), gw.game.goals[i])}));
        out.phi = disj(var(play1), var(play2));
    }
    out.gadgets.push_back(std::move(gu));
    out.gadgets.push_back(std::move(gw));
    validate_game(out.game);
    return out;
}

WrappedGuarantee transform_exists_nash_sat(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K) {
    WrappedGuarantee out;
    out.base = build_guarantee_game(m, w, K);
    out.half = fixed_value_game(make_rational(1, 2), "half");
    const BooleanGame& g = out.base.game;
    out.game.vars = {joined({&g.vars[0], &out.half.game.vars[0]}), joined({&g.vars[1], &out.half.game.vars[1]})};
    out.game.goals = {conj(g.goals[0], out.half.game.goals[0]),
                      disj(g.goals[1], conj(neg(g.goals[0]), out.half.game.goals[1]))};
    out.phi = disj(g.goals[0], g.goals[1]);
    validate_game(out.game);
    return out;
}

NormalForm duplicate_construction(const NormalForm& g, const Rational& v) {
    if (g.players() != 2) throw input_error("the duplication construction needs a two-player game");
    std::size_t n1 = g.extent(0), n2 = g.extent(1);
    auto fresh_label = [](const std::vector<std::string>& taken, std::string base) {
        while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
        return base;
    };
    std::vector<std::string> rows = g.labels[0];
    for (std::size_t i = 0; i < n1; ++i) rows.push_back(fresh_label(rows, g.labels[0][i] + "'"));
    rows.push_back(fresh_label(rows, "a"));
    std::vector<std::string> cols = g.labels[1];
    cols.push_back(fresh_label(cols, "b"));

    std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols.size()));
    std::vector<std::vector<Rational>> b = a;
    for (std::size_t r = 0; r < 2 * n1; ++r) {
        for (std::size_t c = 0; c < n2; ++c) {
            a[r][c] = g.payoff(0, {r % n1, c});
            b[r][c] = g.payoff(1, {r % n1, c});
        }
        a[r][n2] = 0;
        b[r][n2] = -1;
    }
    for (std::size_t c = 0; c < n2; ++c) {
        a[2 * n1][c] = v;
        b[2 * n1][c] = -1;
    }
    a[2 * n1][n2] = v;
    b[2 * n1][n2] = 1;
    return make_bimatrix(rows, cols, a, b);
}

} // namespace bg
