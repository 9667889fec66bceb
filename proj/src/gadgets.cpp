#include "bg/gadgets.hpp"

#include "bg/encodings.hpp"
#include "bg/error.hpp"

#include <json.hpp>

namespace bg {

namespace {

BitSeq padded(const BitSeq& s) {
    BitSeq out{BitTerm{}};
    out.insert(out.end(), s.begin(), s.end());
    return out;
}

void put(Assignment& a, const BitSeq& s, std::uint64_t value) {
    std::size_t w = s.size();
    for (std::size_t i = 0; i < w; ++i) a[s[i].name] = (value >> (w - 1 - i)) & 1;
}

std::vector<std::string> names(const BitSeq& s) { return var_names(s); }

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
    std::vector<std::string> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

void require_zero_sum(const BooleanGame& g) {
    if (g.players() != 2) throw input_error("game algebra needs two-player games");
    const Formula& a = g.goals[0];
    const Formula& b = g.goals[1];
    bool ok = (b->op == Op::neg && same(b->kids[0], a)) || (a->op == Op::neg && same(a->kids[0], b));
    if (!ok) throw input_error("game algebra needs zero-sum games (one goal the negation of the other)");
}

MixedStrategy renamed(const MixedStrategy& m, const std::string& ns) {
    MixedStrategy out;
    for (const auto& [a, w] : m.support) {
        Assignment r;
        for (const auto& [k, v] : a) r[prefixed(ns, k)] = v;
        out.support.emplace_back(std::move(r), w);
    }
    return out;
}

struct Interval {
    std::uint64_t p, q, s, t;
};

} // namespace

int gadget_width(const Rational& v) {
    if (v < 0 || v > 1) throw input_error("gadget value must lie in [0,1]");
    Integer b = v.get_den();
    if (!b.fits_ulong_p() || b > (Integer(1) << 62)) throw input_error("gadget denominator too large");
    return std::max(1, bit_length(b.get_ui() - 1));
}

GadgetBundle fixed_value_game(const Rational& v_in, const std::string& ns) {
    Rational v = v_in;
    v.canonicalize();
    int m = gadget_width(v);
    BitSeq p = bits(prefixed(ns, "p"), m), q = bits(prefixed(ns, "q"), m), s = bits(prefixed(ns, "s"), m),
           t = bits(prefixed(ns, "t"), m), r = bits(prefixed(ns, "r"), m);
    GadgetBundle out;
    out.value = v;
    out.role_vars = {{"p", names(p)}, {"q", names(q)}, {"s", names(s)}, {"t", names(t)}, {"r", names(r)}};
    out.game.vars = {concat({names(p), names(q), names(s), names(t)}), names(r)};

    if (v == 0 || v == 1) {
        // no interval of length 0; the value-1 game is its role switch
        Formula g1 = conj(bottom(), less_eq(p, r));
        out.game.goals = {g1, neg(g1)};
        Assignment none1, none2;
        for (const auto& x : out.game.vars[0]) none1[x] = false;
        for (const auto& x : out.game.vars[1]) none2[x] = false;
        out.equilibrium = MixedProfile{{pure_strategy(none1), pure_strategy(none2)}};
        out.unique = false;
        if (v == 1) {
            GadgetBundle flipped = combine_games(Combine::complement, out, nullptr, ns);
            flipped.unique = false;
            return flipped;
        }
        return out;
    }

    std::uint64_t a = v.get_num().get_ui(), b = v.get_den().get_ui();
    std::vector<Formula> cases;
    cases.push_back(conj({sub(q, p, constant_bits(a - 1, m)), less_eq(q, constant_bits(b - 1, m)), less_eq(r, q),
                          less_eq(p, r), equal(s, constant_bits(0, m)), equal(t, constant_bits(0, m))}));
    if (a >= 2)
        cases.push_back(conj({add(s, t, constant_bits(a - 2, m)), sub(q, constant_bits(0, m), s),
                              sub(constant_bits(b - 1, m), p, t), disj(less_eq(r, q), less_eq(p, r))}));
    cases.push_back(less(constant_bits(b - 1, m), r));
    Formula g1 = disj(std::move(cases));
    out.game.goals = {g1, neg(g1)};

    std::vector<Assignment> intervals, picks;
    for (std::uint64_t c = 0; c < b; ++c) {
        Interval iv{c, (c + a - 1) % b, 0, 0};
        if (c + a - 1 > b - 1) {
            iv.s = iv.q;
            iv.t = b - 1 - iv.p;
        }
        Assignment x;
        put(x, p, iv.p);
        put(x, q, iv.q);
        put(x, s, iv.s);
        put(x, t, iv.t);
        intervals.push_back(std::move(x));
        Assignment y;
        put(y, r, c);
        picks.push_back(std::move(y));
    }
    out.equilibrium = MixedProfile{{uniform_strategy(intervals), uniform_strategy(picks)}};
    out.unique = true;
    return out;
}

namespace {

struct Parametric {
    BitSeq p, q, r, s, t, u;
    Formula goal;
};

Parametric parametric_parts(const std::string& ns, int n) {
    if (n < 1 || n > 30) throw input_error("parametric gadget width must be in 1..30");
    Parametric g;
    g.p = bits(prefixed(ns, "p"), n);
    g.q = bits(prefixed(ns, "q"), n);
    g.r = bits(prefixed(ns, "r"), n);
    g.s = bits(prefixed(ns, "s"), n + 1);
    g.t = bits(prefixed(ns, "t"), n + 1);
    g.u = bits(prefixed(ns, "u"), n + 1);
    std::uint64_t full = std::uint64_t{1} << n;
    BitSeq zero = constant_bits(0, n + 1);
    // intervals are half-open: [p, q) or, looping, [p, 2^n) and [0, q)
    Formula straight = conj({add(padded(g.p), g.u, padded(g.q)), less_eq(g.p, g.r), less(g.r, g.q),
                             equal(g.s, zero), equal(g.t, zero)});
    Formula looping = conj({add(g.s, g.t, g.u), equal(g.s, padded(g.q)), sub(constant_bits(full, n + 1), padded(g.p), g.t),
                            disj(less_eq(g.p, g.r), less(g.r, g.q))});
    g.goal = disj({straight, looping, less(constant_bits(full - 1, n), g.r)});
    return g;
}

GadgetBundle parametric_bundle(const Parametric& g, bool split) {
    GadgetBundle out;
    out.role_vars = {{"p", names(g.p)}, {"q", names(g.q)}, {"s", names(g.s)},
                     {"t", names(g.t)}, {"u", names(g.u)}, {"r", names(g.r)}};
    out.game.vars.push_back(concat({names(g.p), names(g.q), names(g.s), names(g.t), names(g.u)}));
    out.game.goals.push_back(g.goal);
    if (split) {
        for (const auto& bit : names(g.r)) {
            out.game.vars.push_back({bit});
            out.game.goals.push_back(neg(g.goal));
        }
    } else {
        out.game.vars.push_back(names(g.r));
        out.game.goals.push_back(neg(g.goal));
    }
    return out;
}

} // namespace

GadgetBundle parametric_value_game(const std::string& ns, int n) {
    return parametric_bundle(parametric_parts(ns, n), false);
}

GadgetBundle split_opponent_game(const std::string& ns, int n) {
    return parametric_bundle(parametric_parts(ns, n), true);
}

Assignment fix_parameter(const GadgetBundle& b, std::uint64_t u) {
    BitSeq us = bits(b.role_vars.at("u"));
    std::uint64_t full = std::uint64_t{1} << (us.size() - 1);
    if (u > full) throw input_error("parameter exceeds 2^n");
    Assignment a;
    put(a, us, u);
    return a;
}

MixedProfile parametric_equilibrium(const GadgetBundle& b, std::uint64_t u) {
    BitSeq p = bits(b.role_vars.at("p")), q = bits(b.role_vars.at("q")), s = bits(b.role_vars.at("s")),
           t = bits(b.role_vars.at("t")), us = bits(b.role_vars.at("u")), r = bits(b.role_vars.at("r"));
    std::uint64_t full = std::uint64_t{1} << p.size();
    if (u > full) throw input_error("parameter exceeds 2^n");
    std::vector<Assignment> intervals;
    for (std::uint64_t c = 0; c < full; ++c) {
        Assignment x;
        put(x, p, c);
        put(x, us, u);
        if (c + u < full) {
            put(x, q, c + u);
            put(x, s, 0);
            put(x, t, 0);
        } else {
            std::uint64_t end = c + u - full;
            put(x, q, end);
            put(x, s, end);
            put(x, t, full - c);
        }
        intervals.push_back(std::move(x));
    }
    MixedProfile prof;
    prof.players.push_back(uniform_strategy(intervals));
    if (b.game.players() == 2) {
        std::vector<Assignment> picks;
        for (std::uint64_t c = 0; c < full; ++c) {
            Assignment y;
            put(y, r, c);
            picks.push_back(std::move(y));
        }
        prof.players.push_back(uniform_strategy(picks));
    } else {
        for (const auto& bit : b.role_vars.at("r"))
            prof.players.push_back(uniform_strategy({{{bit, false}}, {{bit, true}}}));
    }
    return prof;
}

GadgetBundle combine_games(Combine kind, const GadgetBundle& g1, const GadgetBundle* g2, const std::string& ns) {
    require_zero_sum(g1.game);
    if (kind == Combine::complement) {
        GadgetBundle out = g1;
        std::swap(out.game.vars[0], out.game.vars[1]);
        std::swap(out.game.goals[0], out.game.goals[1]);
        if (out.equilibrium) std::swap(out.equilibrium->players[0], out.equilibrium->players[1]);
        out.value = 1 - g1.value;
        return out;
    }
    if (!g2) throw input_error("sum and product need two games");
    require_zero_sum(g2->game);
    std::string na = prefixed(ns, "a"), nb = prefixed(ns, "b");
    bool is_sum = kind == Combine::sum;
    GadgetBundle out;
    out.game = compose_disjoint({{g1.game, na}, {g2->game, nb}}, {{0, 1}, {0, 1}}, {{}, {}},
                                [&](const std::vector<std::vector<Formula>>& g) {
                                    Formula one = is_sum ? disj(g[0][0], g[1][0]) : conj(g[0][0], g[1][0]);
                                    return std::vector<Formula>{one, neg(one)};
                                });
    out.value = g1.value * g2->value;
    if (is_sum) out.value = g1.value + g2->value - out.value;
    for (const auto& [role, vs] : g1.role_vars)
        for (const auto& v : vs) out.role_vars["a." + role].push_back(prefixed(na, v));
    for (const auto& [role, vs] : g2->role_vars)
        for (const auto& v : vs) out.role_vars["b." + role].push_back(prefixed(nb, v));
    if (g1.equilibrium && g2->equilibrium) {
        MixedProfile eq;
        for (std::size_t i = 0; i < 2; ++i)
            eq.players.push_back(product(renamed(g1.equilibrium->players[i], na), renamed(g2->equilibrium->players[i], nb)));
        out.equilibrium = std::move(eq);
    }
    return out;
}

Rational g_payoff(std::uint64_t r, bool a_sat, bool b_sat, int k) {
    if (k < 0 || k > 30) throw input_error("g: width out of range");
    Integer full = Integer(1) << k;
    Integer R = static_cast<unsigned long>(r);
    if (R > full) throw input_error("g: R exceeds 2^k");
    Integer top = Integer(1) << (2 * k + 1);
    Integer num;
    if (a_sat && b_sat)
        num = top - (R * R - 2 * full * R + full * full);
    else if (a_sat != b_sat)
        num = top - (R * R - full * R);
    else
        num = top - R * R;
    Rational out(num, Integer(1) << (2 * k + 2));
    out.canonicalize();
    return out;
}

std::string role_vars_json(const GadgetBundle& b) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [role, vs] : b.role_vars) j[role] = vs;
    return j.dump();
}

} // namespace bg
