#include "bg/solver.hpp"

#include "bg/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace bg {

namespace {

void need_two(const NormalForm& nf) {
    if (nf.players() != 2) throw input_error("this procedure needs a two-player game");
}

const Rational& pay(const NormalForm& nf, std::size_t player, std::size_t i, std::size_t j) {
    return nf.payoffs[player][i * nf.extent(1) + j];
}

void check_support(const std::vector<std::size_t>& s, std::size_t n) {
    if (s.empty()) throw input_error("support must be non-empty");
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= n) throw input_error("support index out of range");
        if (k > 0 && s[k] <= s[k - 1]) throw input_error("support must be strictly increasing");
    }
}

struct System {
    LinearProgram lp;
    std::vector<int> x, y;
    int alpha = -1, beta = -1;
};

// Indifference on the support, no profitable pure deviation off it.
System support_system(const NormalForm& nf, const SupportPair& sp, const std::optional<PayoffVector>& bounds) {
    need_two(nf);
    std::size_t n1 = nf.extent(0), n2 = nf.extent(1);
    check_support(sp.x, n1);
    check_support(sp.y, n2);
    System s;
    s.x.assign(n1, -1);
    s.y.assign(n2, -1);
    LinearTerms sx, sy;
    for (auto i : sp.x) {
        s.x[i] = s.lp.add_var("x" + std::to_string(i));
        sx.emplace_back(s.x[i], 1);
    }
    for (auto j : sp.y) {
        s.y[j] = s.lp.add_var("y" + std::to_string(j));
        sy.emplace_back(s.y[j], 1);
    }
    s.alpha = s.lp.add_var("alpha", true);
    s.beta = s.lp.add_var("beta", true);
    s.lp.add_row(sx, Relation::eq, 1);
    s.lp.add_row(sy, Relation::eq, 1);
    for (std::size_t i = 0; i < n1; ++i) {
        LinearTerms t;
        for (auto j : sp.y)
            if (sgn(pay(nf, 0, i, j)) != 0) t.emplace_back(s.y[j], pay(nf, 0, i, j));
        t.emplace_back(s.alpha, -1);
        s.lp.add_row(std::move(t), s.x[i] >= 0 ? Relation::eq : Relation::le, 0);
    }
    for (std::size_t j = 0; j < n2; ++j) {
        LinearTerms t;
        for (auto i : sp.x)
            if (sgn(pay(nf, 1, i, j)) != 0) t.emplace_back(s.x[i], pay(nf, 1, i, j));
        t.emplace_back(s.beta, -1);
        s.lp.add_row(std::move(t), s.y[j] >= 0 ? Relation::eq : Relation::le, 0);
    }
    if (bounds) {
        if (bounds->size() != 2) throw input_error("payoff bounds need one entry per player");
        s.lp.add_row({{s.alpha, 1}}, Relation::ge, (*bounds)[0]);
        s.lp.add_row({{s.beta, 1}}, Relation::ge, (*bounds)[1]);
    }
    return s;
}

EquilibriumWitness read_witness(const System& s, const std::vector<Rational>& sol) {
    EquilibriumWitness w;
    w.weights.resize(2);
    for (int v : s.x) w.weights[0].push_back(v >= 0 ? sol[v] : Rational(0));
    for (int v : s.y) w.weights[1].push_back(v >= 0 ? sol[v] : Rational(0));
    w.payoffs = {sol[s.alpha], sol[s.beta]};
    return w;
}

long double support_pairs(std::size_t n1, std::size_t n2) {
    return (std::pow(2.0L, n1) - 1) * (std::pow(2.0L, n2) - 1);
}

// Prunes (if asked) and checks the enumeration cap.
Pruned prepare(const NormalForm& nf, const SolverOptions& opt) {
    need_two(nf);
    Pruned p;
    if (opt.prune) {
        p = prune_dominated(nf);
    } else {
        p.nf = nf;
        p.kept.resize(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t s = 0; s < nf.extent(i); ++s) p.kept[i].push_back(s);
    }
    long double pairs = support_pairs(p.nf.extent(0), p.nf.extent(1));
    if (pairs > static_cast<long double>(opt.cap_supports))
        throw resource_error("support enumeration needs " + std::to_string(static_cast<double>(pairs)) +
                             " pairs, cap is " + std::to_string(opt.cap_supports));
    return p;
}

EquilibriumWitness lift(const Pruned& p, const EquilibriumWitness& w, const NormalForm& original) {
    return {lift_weights(p, w.weights, original), w.payoffs};
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    return c;
}

std::optional<Rational> optimize(System& s, int var, Sense sense) {
    s.lp.set_objective({{var, 1}}, sense);
    LpOutcome o = solve_lp(s.lp);
    if (!o.optimal()) return std::nullopt;
    return o.value;
}

void check_weights(const NormalForm& nf, const Weights& w) {
    if (w.size() != nf.players()) throw input_error("weights/game player count mismatch");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].size() != nf.extent(i)) throw input_error("weight vector length mismatch");
        Rational total = 0;
        for (const auto& x : w[i]) {
            if (sgn(x) < 0) throw input_error("negative weight");
            total += x;
        }
        if (total != 1) throw input_error("weights must sum to 1");
    }
}

// Deviation payoffs dev[i][s] = u_i(s, w_{-i}).
std::vector<std::vector<Rational>> deviation_payoffs(const NormalForm& nf, const Weights& w) {
    std::size_t n = nf.players();
    std::vector<std::vector<Rational>> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i].assign(nf.extent(i), Rational(0));
    std::vector<std::size_t> at(n, 0);
    for (std::size_t c = 0; c < nf.cells(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            Rational p = 1;
            for (std::size_t k = 0; k < n && sgn(p) != 0; ++k)
                if (k != i) p *= w[k][at[k]];
            if (sgn(p) != 0) dev[i][at[i]] += p * nf.payoffs[i][c];
        }
        for (std::size_t i = n; i-- > 0;) {
            if (++at[i] < nf.extent(i)) break;
            at[i] = 0;
        }
    }
    return dev;
}

// Rows and columns of a player-1 payoff matrix after removing duplicates
// and weakly dominated strategies; the value is unchanged.
struct Reduced {
    std::vector<std::size_t> rows, cols;
};

Reduced reduce_zero_sum(const std::vector<std::vector<Rational>>& a, std::size_t n2) {
    Reduced r;
    for (std::size_t i = 0; i < a.size(); ++i) r.rows.push_back(i);
    for (std::size_t j = 0; j < n2; ++j) r.cols.push_back(j);
    auto row_covers = [&](std::size_t k, std::size_t i) {  // row k weakly dominates row i
        for (auto j : r.cols)
            if (a[k][j] < a[i][j]) return false;
        return true;
    };
    auto col_covers = [&](std::size_t l, std::size_t j) {  // column l weakly dominates column j for player 2
        for (auto i : r.rows)
            if (a[i][l] > a[i][j]) return false;
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t x = 0; x < r.rows.size();) {
            std::size_t i = r.rows[x];
            bool gone = false;
            for (auto k : r.rows)
                if (k != i && row_covers(k, i) && (k < i || !row_covers(i, k))) {
                    gone = true;
                    break;
                }
            if (gone) {
                r.rows.erase(r.rows.begin() + static_cast<long>(x));
                changed = true;
            } else {
                ++x;
            }
        }
        for (std::size_t x = 0; x < r.cols.size();) {
            std::size_t j = r.cols[x];
            bool gone = false;
            for (auto l : r.cols)
                if (l != j && col_covers(l, j) && (l < j || !col_covers(j, l))) {
                    gone = true;
                    break;
                }
            if (gone) {
                r.cols.erase(r.cols.begin() + static_cast<long>(x));
                changed = true;
            } else {
                ++x;
            }
        }
    }
    return r;
}

struct ValueLp {
    LinearProgram lp;
    std::vector<int> w;
    int v = -1;
};

// Player 1 (maxmin) or player 2 (minmax) value LP over the given rows/columns.
ValueLp value_lp(const std::vector<std::vector<Rational>>& a, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols, bool row_player) {
    ValueLp out;
    const auto& own = row_player ? rows : cols;
    const auto& other = row_player ? cols : rows;
    LinearTerms total;
    for (auto s : own) {
        out.w.push_back(out.lp.add_var((row_player ? "x" : "y") + std::to_string(s)));
        total.emplace_back(out.w.back(), 1);
    }
    out.v = out.lp.add_var("v", true);
    out.lp.add_row(total, Relation::eq, 1);
    for (auto o : other) {
        LinearTerms t;
        for (std::size_t k = 0; k < own.size(); ++k) {
            const Rational& c = row_player ? a[own[k]][o] : a[o][own[k]];
            if (sgn(c) != 0) t.emplace_back(out.w[k], c);
        }
        t.emplace_back(out.v, -1);
        out.lp.add_row(std::move(t), row_player ? Relation::ge : Relation::le, 0);
    }
    out.lp.set_objective({{out.v, 1}}, row_player ? Sense::maximize : Sense::minimize);
    return out;
}

ZeroSumResult zero_sum_core(const std::vector<std::vector<Rational>>& a, std::size_t n2) {
    Reduced r = reduce_zero_sum(a, n2);
    ValueLp p1 = value_lp(a, r.rows, r.cols, true);
    ValueLp p2 = value_lp(a, r.rows, r.cols, false);
    LpOutcome o1 = solve_lp(p1.lp), o2 = solve_lp(p2.lp);
    if (!o1.optimal() || !o2.optimal() || o1.value != o2.value)
        throw std::logic_error("zero-sum value LPs disagree");
    ZeroSumResult z;
    z.value = o1.value;
    z.maxmin.assign(a.size(), Rational(0));
    z.minmax.assign(n2, Rational(0));
    for (std::size_t k = 0; k < r.rows.size(); ++k) z.maxmin[r.rows[k]] = o1.x[p1.w[k]];
    for (std::size_t k = 0; k < r.cols.size(); ++k) z.minmax[r.cols[k]] = o2.x[p2.w[k]];
    return z;
}

std::vector<std::vector<Rational>> player_matrix(const NormalForm& nf, std::size_t player) {
    std::size_t n1 = nf.extent(0), n2 = nf.extent(1);
    std::vector<std::vector<Rational>> a(n1, std::vector<Rational>(n2));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) a[i][j] = pay(nf, player, i, j);
    return a;
}

} // namespace

void require_constant_sum(const NormalForm& nf) {
    need_two(nf);
    for (std::size_t c = 1; c < nf.cells(); ++c)
        if (nf.payoffs[0][c] + nf.payoffs[1][c] != nf.payoffs[0][0] + nf.payoffs[1][0])
            throw input_error("game is not constant-sum");
}

ZeroSumResult zero_sum_value(const NormalForm& nf) {
    require_constant_sum(nf);
    return zero_sum_core(player_matrix(nf, 0), nf.extent(1));
}

ZeroSumResult zero_sum_value(const BooleanGame& g, std::uint64_t cap) {
    auto w1 = win_matrix(g, 0, cap);
    auto w2 = win_matrix(g, 1, cap);
    std::size_t n1 = std::size_t{1} << g.vars[0].size(), n2 = std::size_t{1} << g.vars[1].size();
    for (std::size_t c = 0; c < w1.size(); ++c)
        if (w1[c] + w2[c] != w1[0] + w2[0]) throw input_error("game is not constant-sum");
    std::map<std::string, std::size_t> distinct;
    std::vector<std::size_t> rep;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < n1; ++i) {
        std::string key(w1.begin() + static_cast<long>(i * n2), w1.begin() + static_cast<long>((i + 1) * n2));
        if (distinct.emplace(key, rows.size()).second) {
            rep.push_back(i);
            std::vector<Rational> row(n2);
            for (std::size_t j = 0; j < n2; ++j) row[j] = key[j];
            rows.push_back(std::move(row));
        }
    }
    ZeroSumResult small = zero_sum_core(rows, n2);
    ZeroSumResult z{small.value, std::vector<Rational>(n1, Rational(0)), small.minmax};
    for (std::size_t k = 0; k < rep.size(); ++k) z.maxmin[rep[k]] = small.maxmin[k];
    return z;
}

bool dvalue(const BooleanGame& g, const Rational& threshold, std::uint64_t cap) {
    return zero_sum_value(g, cap).value >= threshold;
}

std::optional<EquilibriumWitness> equilibrium_for_support(const NormalForm& nf, const SupportPair& sp,
                                                          const std::optional<PayoffVector>& bounds) {
    System s = support_system(nf, sp, bounds);
    LpOutcome o = solve_lp(s.lp);
    if (!o.optimal()) return std::nullopt;
    return read_witness(s, o.x);
}

SupportClass classify_support(const NormalForm& nf, const SupportPair& sp) {
    System s = support_system(nf, sp, std::nullopt);
    LpOutcome o = solve_lp(s.lp);
    if (!o.optimal()) return SupportClass::none;
    return solution_unique(s.lp, o.x) ? SupportClass::unique : SupportClass::continuum;
}

void for_each_support(std::size_t n1, std::size_t n2, const std::function<bool(const SupportPair&)>& f) {
    for (std::size_t total = 2; total <= n1 + n2; ++total) {
        std::size_t lo = total > n2 ? total - n2 : 1;
        std::size_t hi = std::min(n1, total - 1);
        for (std::size_t kx = lo; kx <= hi; ++kx) {
            SupportPair sp;
            sp.x = first_combination(kx);
            do {
                sp.y = first_combination(total - kx);
                do {
                    if (f(sp)) return;
                } while (next_combination(sp.y, n2));
            } while (next_combination(sp.x, n1));
        }
    }
}

std::optional<EquilibriumWitness> exists_guarantee_nash(const NormalForm& nf, const PayoffVector& v,
                                                        const SolverOptions& opt) {
    Pruned p = prepare(nf, opt);
    std::optional<EquilibriumWitness> found;
    for_each_support(p.nf.extent(0), p.nf.extent(1), [&](const SupportPair& sp) {
        found = equilibrium_for_support(p.nf, sp, v);
        return found.has_value();
    });
    if (found) found = lift(p, *found, nf);
    return found;
}

std::optional<EquilibriumWitness> find_nash(const NormalForm& nf, const SolverOptions& opt) {
    Pruned p = prepare(nf, opt);
    std::optional<EquilibriumWitness> found;
    for_each_support(p.nf.extent(0), p.nf.extent(1), [&](const SupportPair& sp) {
        found = equilibrium_for_support(p.nf, sp);
        return found.has_value();
    });
    if (found) found = lift(p, *found, nf);
    return found;
}

bool forall_guarantee_nash(const NormalForm& nf, const PayoffVector& v, const SolverOptions& opt) {
    if (v.size() != 2) throw input_error("payoff bounds need one entry per player");
    Pruned p = prepare(nf, opt);
    bool ok = true;
    for_each_support(p.nf.extent(0), p.nf.extent(1), [&](const SupportPair& sp) {
        System s = support_system(p.nf, sp, std::nullopt);
        for (int player = 0; player < 2 && ok; ++player) {
            auto low = optimize(s, player == 0 ? s.alpha : s.beta, Sense::minimize);
            if (!low) return false;  // support infeasible
            if (*low < v[player]) ok = false;
        }
        return !ok;
    });
    return ok;
}

bool unique_nash(const NormalForm& nf, const SolverOptions& opt) {
    Pruned p = prepare(nf, opt);
    std::optional<EquilibriumWitness> first;
    for_each_support(p.nf.extent(0), p.nf.extent(1), [&](const SupportPair& sp) {
        first = equilibrium_for_support(p.nf, sp);
        return first.has_value();
    });
    if (!first) throw std::logic_error("support enumeration found no equilibrium");
    const Weights& w0 = first->weights;
    bool unique = true;
    for_each_support(p.nf.extent(0), p.nf.extent(1), [&](const SupportPair& sp) {
        System s = support_system(p.nf, sp, std::nullopt);
        LpOutcome o = solve_lp(s.lp);
        if (!o.optimal()) return false;
        if (read_witness(s, o.x).weights != w0) {
            unique = false;
            return true;
        }
        for (int side = 0; side < 2 && unique; ++side) {
            const auto& vars = side == 0 ? s.x : s.y;
            for (std::size_t k = 0; k < vars.size() && unique; ++k) {
                if (vars[k] < 0) continue;
                for (Sense sense : {Sense::maximize, Sense::minimize})
                    if (optimize(s, vars[k], sense) != w0[side][k]) unique = false;
            }
        }
        return !unique;
    });
    return unique;
}

bool nash_sat(const BooleanGame& g, const Formula& phi, SatMode mode, const SolverOptions& opt) {
    validate_game(g);
    if (g.players() != 2) throw input_error("nash_sat needs a two-player game");
    auto all = g.all_vars();
    std::set<std::string> known(all.begin(), all.end());
    for (const auto& v : free_vars(phi))
        if (!known.count(v)) throw input_error("formula mentions foreign variable '" + v + "'");
    NormalForm nf = to_normal_form(g, opt.cap_cells);
    GameEvaluator ev(g);
    CompiledFormula f(phi, ev.index());
    std::size_t n1 = nf.extent(0), n2 = nf.extent(1);
    std::vector<std::uint8_t> sat(n1 * n2), values(ev.slots());
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            ev.load(strategy_assignment(nf.var_order[0], i), values);
            ev.load(strategy_assignment(nf.var_order[1], j), values);
            sat[i * n2 + j] = f(values.data());
        }
    Pruned p = prepare(nf, opt);
    auto ok = [&](std::size_t a, std::size_t b) { return sat[p.kept[0][a] * n2 + p.kept[1][b]] != 0; };
    bool answer = mode == SatMode::forall;
    for_each_support(p.nf.extent(0), p.nf.extent(1), [&](const SupportPair& sp) {
        bool clean = true;
        for (auto a : sp.x)
            for (auto b : sp.y) clean = clean && ok(a, b);
        if (mode == SatMode::exists) {
            if (!clean || !equilibrium_for_support(p.nf, sp)) return false;
            answer = true;
            return true;
        }
        if (clean) return false;
        System s = support_system(p.nf, sp, std::nullopt);
        if (!solve_lp(s.lp).optimal()) return false;
        // the feasible region splits into an x part and a y part, so the
        // largest weights can be reached at the same time
        std::map<std::size_t, bool> xpos, ypos;
        for (auto a : sp.x) xpos[a] = sgn(*optimize(s, s.x[a], Sense::maximize)) > 0;
        for (auto b : sp.y) ypos[b] = sgn(*optimize(s, s.y[b], Sense::maximize)) > 0;
        for (auto a : sp.x)
            for (auto b : sp.y)
                if (!ok(a, b) && xpos[a] && ypos[b]) {
                    answer = false;
                    return true;
                }
        return false;
    });
    return answer;
}

PayoffVector expected_payoffs(const NormalForm& nf, const Weights& w) {
    check_weights(nf, w);
    PayoffVector out(nf.players(), Rational(0));
    std::size_t n = nf.players();
    std::vector<std::size_t> at(n, 0);
    for (std::size_t c = 0; c < nf.cells(); ++c) {
        Rational p = 1;
        for (std::size_t k = 0; k < n && sgn(p) != 0; ++k) p *= w[k][at[k]];
        if (sgn(p) != 0)
            for (std::size_t i = 0; i < n; ++i) out[i] += p * nf.payoffs[i][c];
        for (std::size_t i = n; i-- > 0;) {
            if (++at[i] < nf.extent(i)) break;
            at[i] = 0;
        }
    }
    return out;
}

bool is_nash(const NormalForm& nf, const Weights& w) {
    PayoffVector now = expected_payoffs(nf, w);
    auto dev = deviation_payoffs(nf, w);
    for (std::size_t i = 0; i < nf.players(); ++i)
        for (const auto& d : dev[i])
            if (d > now[i]) return false;
    return true;
}

NashCheck check_deviations(const BooleanGame& g, const MixedProfile& p, std::size_t player,
                           const SolverOptions& opt) {
    validate_profile(g, p);
    if (player >= g.players()) throw input_error("no such player");
    GameEvaluator ev(g);
    std::size_t n = g.players();
    // joint support of the other players
    struct Entry {
        std::vector<std::pair<int, std::uint8_t>> load;
        Rational weight;
    };
    std::vector<Entry> others{{{}, Rational(1)}};
    for (std::size_t k = 0; k < n; ++k) {
        if (k == player) continue;
        std::vector<Entry> next;
        for (const auto& e : others)
            for (const auto& [a, w] : p.players[k].support) {
                Entry x = e;
                for (const auto& [name, v] : a) x.load.emplace_back(ev.slot(name), v ? 1 : 0);
                x.weight *= w;
                next.push_back(std::move(x));
            }
        others = std::move(next);
    }
    Rational now = expected_utility(g, p, player);
    std::vector<std::string> own = g.strategy_vars(player);
    std::vector<int> own_slots;
    for (const auto& v : own) own_slots.push_back(ev.slot(v));
    std::vector<std::uint8_t> values(ev.slots());

    auto payoff = [&](std::uint64_t s) {
        std::size_t w = own_slots.size();
        for (std::size_t b = 0; b < w; ++b) values[own_slots[b]] = (s >> (w - 1 - b)) & 1;
        Rational u = 0;
        for (const auto& e : others) {
            for (auto [slot, v] : e.load) values[slot] = v;
            if (ev.wins(player, values.data())) u += e.weight;
        }
        return u;
    };

    NashCheck out;
    out.checked.assign(n, 0);
    long double count = std::pow(2.0L, own.size());
    auto consider = [&](std::uint64_t s) {
        ++out.checked[player];
        if (payoff(s) > now) {
            out.holds = false;
            out.improvement = std::make_pair(player, strategy_assignment(own, s));
        }
        return out.holds;
    };
    if (count <= static_cast<long double>(opt.cap_deviations)) {
        for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(count); ++s)
            if (!consider(s)) break;
    } else if (opt.sample) {
        out.sampled = true;
        std::mt19937_64 rng(opt.seed + player);
        std::size_t w = own.size();
        if (w >= 64) throw resource_error("player controls too many variables to sample");
        for (std::uint64_t t = 0; t < *opt.sample; ++t)
            if (!consider(rng() & ((std::uint64_t{1} << w) - 1))) break;
    } else {
        throw resource_error("player " + std::to_string(player + 1) + " has " +
                             std::to_string(static_cast<double>(count)) + " pure deviations, cap is " +
                             std::to_string(opt.cap_deviations) + " (pass a sample size)");
    }
    return out;
}

NashCheck check_nash(const BooleanGame& g, const MixedProfile& p, const SolverOptions& opt) {
    NashCheck out;
    out.checked.assign(g.players(), 0);
    for (std::size_t i = 0; i < g.players(); ++i) {
        NashCheck c = check_deviations(g, p, i, opt);
        out.checked[i] = c.checked[i];
        out.sampled = out.sampled || c.sampled;
        if (!c.holds) {
            out.holds = false;
            out.improvement = c.improvement;
            break;
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>> pure_equilibria(const NormalForm& nf) {
    std::size_t n = nf.players();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> at(n, 0);
    for (std::size_t c = 0; c < nf.cells(); ++c) {
        bool stable = true;
        for (std::size_t i = 0; i < n && stable; ++i) {
            std::vector<std::size_t> dev = at;
            for (std::size_t s = 0; s < nf.extent(i) && stable; ++s) {
                dev[i] = s;
                if (nf.payoff(i, dev) > nf.payoffs[i][c]) stable = false;
            }
        }
        if (stable) out.push_back(at);
        for (std::size_t i = n; i-- > 0;) {
            if (++at[i] < nf.extent(i)) break;
            at[i] = 0;
        }
    }
    return out;
}

std::vector<Assignment> pure_equilibria(const BooleanGame& g, std::uint64_t cap) {
    NormalForm nf = to_normal_form(g, cap);
    std::vector<Assignment> out;
    for (const auto& idx : pure_equilibria(nf)) {
        Assignment a;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            auto part = strategy_assignment(nf.var_order[i], idx[i]);
            a.insert(part.begin(), part.end());
        }
        out.push_back(std::move(a));
    }
    return out;
}

bool irrational_nash(const NormalForm& nf, bool zero_sum_fast_path, const SolverOptions& opt) {
    need_two(nf);
    if (zero_sum_fast_path) {
        require_constant_sum(nf);
        auto a = player_matrix(nf, 0);
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < nf.extent(0); ++i) rows.push_back(i);
        for (std::size_t j = 0; j < nf.extent(1); ++j) cols.push_back(j);
        for (bool row_player : {true, false}) {
            ValueLp v = value_lp(a, rows, cols, row_player);
            LpOutcome o = solve_lp(v.lp);
            if (!solution_unique(v.lp, o.x)) return true;
        }
        return false;
    }
    Pruned p = prepare(nf, opt);
    bool found = false;
    for_each_support(p.nf.extent(0), p.nf.extent(1), [&](const SupportPair& sp) {
        found = classify_support(p.nf, sp) == SupportClass::continuum;
        return found;
    });
    return found;
}

MixedProfile to_profile(const NormalForm& nf, const Weights& w) {
    if (nf.var_order.size() != nf.players()) throw input_error("normal form was not expanded from a Boolean game");
    check_weights(nf, w);
    MixedProfile p;
    for (std::size_t i = 0; i < nf.players(); ++i) {
        MixedStrategy m;
        for (std::size_t s = 0; s < w[i].size(); ++s)
            if (sgn(w[i][s]) > 0) m.support.emplace_back(strategy_assignment(nf.var_order[i], s), w[i][s]);
        p.players.push_back(std::move(m));
    }
    return p;
}

Weights to_weights(const NormalForm& nf, const MixedProfile& p) {
    if (nf.var_order.size() != nf.players()) throw input_error("normal form was not expanded from a Boolean game");
    if (p.players.size() != nf.players()) throw input_error("profile/game player count mismatch");
    Weights w(nf.players());
    for (std::size_t i = 0; i < nf.players(); ++i) {
        w[i].assign(nf.extent(i), Rational(0));
        for (const auto& [a, x] : p.players[i].support) w[i][strategy_index(nf.var_order[i], a)] += x;
    }
    return w;
}

Pruned prune_dominated(const NormalForm& nf, bool mixed) {
    need_two(nf);
    std::vector<std::vector<std::size_t>> alive(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t s = 0; s < nf.extent(i); ++s) alive[i].push_back(s);
    // u(player, own strategy, other strategy)
    auto u = [&](std::size_t player, std::size_t own, std::size_t other) -> const Rational& {
        return player == 0 ? pay(nf, 0, own, other) : pay(nf, 1, other, own);
    };
    auto pure_pass = [&](std::size_t pl) {
        bool changed = false;
        auto& mine = alive[pl];
        const auto& theirs = alive[1 - pl];
        for (std::size_t x = 0; x < mine.size();) {
            std::size_t s = mine[x];
            bool dominated = false;
            for (auto t : mine) {
                if (t == s) continue;
                bool strict = true;
                for (auto o : theirs)
                    if (!(u(pl, t, o) > u(pl, s, o))) {
                        strict = false;
                        break;
                    }
                if (strict) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) {
                mine.erase(mine.begin() + static_cast<long>(x));
                changed = true;
            } else {
                ++x;
            }
        }
        return changed;
    };
    auto mixed_dominated = [&](std::size_t pl, std::size_t s) {
        LinearProgram lp;
        LinearTerms total;
        std::vector<std::pair<std::size_t, int>> mix;
        for (auto t : alive[pl])
            if (t != s) {
                mix.emplace_back(t, lp.add_var("w" + std::to_string(t)));
                total.emplace_back(mix.back().second, 1);
            }
        int eps = lp.add_var("eps", true);
        lp.add_row(total, Relation::eq, 1);
        for (auto o : alive[1 - pl]) {
            LinearTerms t;
            for (auto [k, v] : mix)
                if (sgn(u(pl, k, o)) != 0) t.emplace_back(v, u(pl, k, o));
            t.emplace_back(eps, -1);
            lp.add_row(std::move(t), Relation::ge, u(pl, s, o));
        }
        lp.set_objective({{eps, 1}}, Sense::maximize);
        LpOutcome r = solve_lp(lp);
        return r.optimal() && sgn(r.value) > 0;
    };
    for (;;) {
        while (pure_pass(0) | pure_pass(1)) {
        }
        if (!mixed || alive[0].size() + alive[1].size() > 512) break;
        bool removed = false;
        for (std::size_t pl = 0; pl < 2 && !removed; ++pl) {
            if (alive[pl].size() < 3) continue;
            for (std::size_t x = 0; x < alive[pl].size(); ++x)
                if (mixed_dominated(pl, alive[pl][x])) {
                    alive[pl].erase(alive[pl].begin() + static_cast<long>(x));
                    removed = true;
                    break;
                }
        }
        if (!removed) break;
    }
    Pruned out;
    out.kept = alive;
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<std::string> labels;
        for (auto s : alive[i]) labels.push_back(nf.labels[i][s]);
        out.nf.labels.push_back(std::move(labels));
    }
    out.nf.payoffs.assign(2, std::vector<Rational>(alive[0].size() * alive[1].size()));
    for (std::size_t a = 0; a < alive[0].size(); ++a)
        for (std::size_t b = 0; b < alive[1].size(); ++b)
            for (std::size_t pl = 0; pl < 2; ++pl)
                out.nf.payoffs[pl][a * alive[1].size() + b] = pay(nf, pl, alive[0][a], alive[1][b]);
    return out;
}

Weights lift_weights(const Pruned& p, const Weights& w, const NormalForm& original) {
    Weights out(original.players());
    for (std::size_t i = 0; i < original.players(); ++i) {
        out[i].assign(original.extent(i), Rational(0));
        for (std::size_t k = 0; k < p.kept[i].size(); ++k) out[i][p.kept[i][k]] = w[i][k];
    }
    return out;
}

} // namespace bg
