#include "bg/game.hpp"

#include "bg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace bg {

std::vector<std::string> BooleanGame::all_vars() const {
    std::vector<std::string> out;
    for (const auto& vs : vars) out.insert(out.end(), vs.begin(), vs.end());
    return out;
}

std::vector<std::string> BooleanGame::strategy_vars(std::size_t player) const {
    std::vector<std::string> v = vars.at(player);
    std::sort(v.begin(), v.end());
    return v;
}

void validate_game(const BooleanGame& g) {
    if (g.players() < 2) throw input_error("a game needs at least two players");
    if (g.goals.size() != g.players()) throw input_error("one goal per player required");
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < g.players(); ++i) {
        if (g.vars[i].empty()) throw input_error("player " + std::to_string(i + 1) + " controls no variables");
        for (const auto& v : g.vars[i]) {
            if (!valid_identifier(v) || v == "T" || v == "F") throw input_error("invalid variable name '" + v + "'");
            auto [it, fresh] = owner.emplace(v, i);
            if (!fresh) {
                throw input_error("variable '" + v + "' controlled by players " + std::to_string(it->second + 1) +
                                  " and " + std::to_string(i + 1));
            }
        }
    }
    for (std::size_t i = 0; i < g.players(); ++i) {
        if (!g.goals[i]) throw input_error("missing goal for player " + std::to_string(i + 1));
        for (const auto& v : free_vars(g.goals[i]))
            if (!owner.count(v))
                throw input_error("goal " + std::to_string(i + 1) + " mentions unowned variable '" + v + "'");
    }
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

struct Line {
    int number;
    std::string key;   // text before ':'
    std::string body;  // text after ':'
};

std::vector<Line> header_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string l = trim(raw);
        if (l.empty()) continue;
        auto colon = l.find(':');
        if (colon == std::string::npos) throw input_error("line " + std::to_string(n) + ": expected 'key: value'");
        out.push_back({n, trim(l.substr(0, colon)), trim(l.substr(colon + 1))});
    }
    return out;
}

std::size_t parse_count(const std::string& s, int line) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw input_error("line " + std::to_string(line) + ": expected a positive integer, got '" + s + "'");
    return std::stoul(s);
}

// "vars 2" -> 2, 1-based player index checked against n.
std::size_t player_key(const std::vector<std::string>& key, std::size_t n, int line) {
    if (key.size() != 2) throw input_error("line " + std::to_string(line) + ": expected '" + key[0] + " I:'");
    std::size_t i = parse_count(key[1], line);
    if (i < 1 || i > n) throw input_error("line " + std::to_string(line) + ": player index out of range");
    return i - 1;
}

} // namespace

BooleanGame parse_game(const std::string& text) {
    auto lines = header_lines(text);
    if (lines.empty() || lines[0].key != "players")
        throw input_error("line " + std::to_string(lines.empty() ? 1 : lines[0].number) + ": expected 'players: N'");
    std::size_t n = parse_count(lines[0].body, lines[0].number);
    BooleanGame g;
    g.vars.resize(n);
    g.goals.resize(n);
    std::vector<bool> have_vars(n), have_goal(n);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& l = lines[li];
        auto key = words(l.key);
        if (key.empty()) throw input_error("line " + std::to_string(l.number) + ": empty key");
        if (key[0] == "vars") {
            std::size_t i = player_key(key, n, l.number);
            if (have_vars[i]) throw input_error("line " + std::to_string(l.number) + ": variables declared twice");
            have_vars[i] = true;
            g.vars[i] = words(l.body);
        } else if (key[0] == "goal") {
            std::size_t i = player_key(key, n, l.number);
            if (have_goal[i]) throw input_error("line " + std::to_string(l.number) + ": goal declared twice");
            have_goal[i] = true;
            try {
                g.goals[i] = parse_formula(l.body);
            } catch (const input_error& e) {
                throw input_error("line " + std::to_string(l.number) + ": " + e.what());
            }
        } else {
            throw input_error("line " + std::to_string(l.number) + ": unknown key '" + key[0] + "'");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!have_vars[i] || !have_goal[i])
            throw input_error("player " + std::to_string(i + 1) + " lacks a vars or goal line");
    validate_game(g);
    return g;
}

std::string render_game(const BooleanGame& g) {
    std::ostringstream out;
    out << "players: " << g.players() << "\n";
    for (std::size_t i = 0; i < g.players(); ++i) {
        out << "vars " << i + 1 << ":";
        for (const auto& v : g.vars[i]) out << " " << v;
        out << "\ngoal " << i + 1 << ": " << render_formula(g.goals[i]) << "\n";
    }
    return out.str();
}

Rational utility_pure(const BooleanGame& g, const Assignment& full, std::size_t player) {
    auto all = g.all_vars();
    for (const auto& v : all)
        if (!full.count(v)) throw input_error("assignment misses variable '" + v + "'");
    if (full.size() != all.size()) throw input_error("assignment binds variables outside the game");
    if (player >= g.players()) throw input_error("no such player");
    return eval_formula(g.goals[player], full) ? 1 : 0;
}

Assignment strategy_assignment(const std::vector<std::string>& sorted_vars, std::uint64_t s) {
    Assignment a;
    std::size_t n = sorted_vars.size();
    for (std::size_t i = 0; i < n; ++i) a[sorted_vars[i]] = (s >> (n - 1 - i)) & 1;
    return a;
}

std::uint64_t strategy_index(const std::vector<std::string>& sorted_vars, const Assignment& a) {
    std::uint64_t s = 0;
    for (const auto& v : sorted_vars) s = (s << 1) | (a.at(v) ? 1 : 0);
    return s;
}

MixedStrategy pure_strategy(Assignment a) { return MixedStrategy{{{std::move(a), Rational(1)}}}; }

MixedStrategy uniform_strategy(std::vector<Assignment> support) {
    MixedStrategy m;
    Rational w(1, static_cast<unsigned long>(support.size()));
    w.canonicalize();
    for (auto& a : support) m.support.emplace_back(std::move(a), w);
    return m;
}

MixedStrategy product(const MixedStrategy& a, const MixedStrategy& b) {
    MixedStrategy out;
    for (const auto& [x, wx] : a.support)
        for (const auto& [y, wy] : b.support) {
            Assignment z = x;
            for (const auto& [k, v] : y) {
                if (z.count(k)) throw input_error("product of strategies over shared variable '" + k + "'");
                z[k] = v;
            }
            out.support.emplace_back(std::move(z), wx * wy);
        }
    return out;
}

void validate_profile(const BooleanGame& g, const MixedProfile& p) {
    if (p.players.size() != g.players()) throw input_error("profile/game player count mismatch");
    for (std::size_t i = 0; i < g.players(); ++i) {
        const auto& sup = p.players[i].support;
        if (sup.empty()) throw input_error("player " + std::to_string(i + 1) + " has an empty support");
        std::set<Assignment> seen;
        Rational total = 0;
        for (const auto& [a, w] : sup) {
            if (w <= 0) throw input_error("support weights must be positive");
            if (a.size() != g.vars[i].size()) throw input_error("support assignments must bind exactly Φ_i");
            for (const auto& v : g.vars[i])
                if (!a.count(v)) throw input_error("support assignment misses '" + v + "'");
            if (!seen.insert(a).second) throw input_error("repeated support assignment");
            total += w;
        }
        if (total != 1) throw input_error("weights of player " + std::to_string(i + 1) + " sum to " + to_string(total));
    }
}

Rational expected_utility(const BooleanGame& g, const MixedProfile& p, std::size_t player) {
    validate_profile(g, p);
    GameEvaluator ev(g);
    std::size_t n = g.players();
    // per player, per support entry: (slot, value) list and weight
    std::vector<std::vector<std::vector<std::pair<int, std::uint8_t>>>> loads(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [a, w] : p.players[i].support) {
            std::vector<std::pair<int, std::uint8_t>> l;
            for (const auto& [k, v] : a) l.emplace_back(ev.slot(k), v ? 1 : 0);
            loads[i].push_back(std::move(l));
        }
    std::vector<std::uint8_t> values(ev.slots());
    std::vector<std::size_t> at(n, 0);
    Rational total = 0;
    for (;;) {
        Rational w = 1;
        for (std::size_t i = 0; i < n; ++i) {
            for (auto [s, v] : loads[i][at[i]]) values[s] = v;
            w *= p.players[i].support[at[i]].second;
        }
        if (ev.wins(player, values.data())) total += w;
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++at[i] < loads[i].size()) break;
            at[i] = 0;
            if (i == 0) return total;
        }
    }
}

std::map<Assignment, Rational> marginalize(const MixedProfile& p, const std::vector<std::string>& vars) {
    std::set<std::string> want(vars.begin(), vars.end()), found;
    std::map<Assignment, Rational> joint{{Assignment{}, Rational(1)}};
    for (const auto& ms : p.players) {
        std::map<Assignment, Rational> mine;
        for (const auto& [a, w] : ms.support) {
            Assignment r;
            for (const auto& [k, v] : a)
                if (want.count(k)) {
                    r[k] = v;
                    found.insert(k);
                }
            mine[r] += w;
        }
        std::map<Assignment, Rational> next;
        for (const auto& [x, wx] : joint)
            for (const auto& [y, wy] : mine) {
                Assignment z = x;
                z.insert(y.begin(), y.end());
                next[z] += wx * wy;
            }
        joint = std::move(next);
    }
    for (const auto& v : want)
        if (!found.count(v)) throw input_error("unknown variable '" + v + "'");
    return joint;
}

MixedProfile parse_profile(const BooleanGame& g, const std::string& json_text) {
    MixedProfile p;
    try {
        auto j = nlohmann::json::parse(json_text);
        for (const auto& pl : j.at("players")) {
            MixedStrategy ms;
            for (const auto& e : pl.at("support")) {
                Assignment a;
                for (const auto& [k, v] : e.at("assign").items()) a[k] = v.get<bool>();
                const auto& w = e.at("weight");
                Rational r = w.is_string() ? parse_rational(w.get<std::string>()) : Rational(w.get<long>());
                ms.support.emplace_back(std::move(a), r);
            }
            p.players.push_back(std::move(ms));
        }
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("profile: ") + e.what());
    }
    validate_profile(g, p);
    return p;
}

std::string render_profile(const MixedProfile& p) {
    nlohmann::json players = nlohmann::json::array();
    for (const auto& ms : p.players) {
        nlohmann::json sup = nlohmann::json::array();
        for (const auto& [a, w] : ms.support) {
            nlohmann::json as = nlohmann::json::object();
            for (const auto& [k, v] : a) as[k] = v;
            sup.push_back({{"assign", as}, {"weight", to_string(w)}});
        }
        players.push_back({{"support", sup}});
    }
    return nlohmann::json{{"players", players}}.dump();
}

Formula characteristic_formula(const Assignment& a) {
    if (a.empty()) throw input_error("characteristic formula of an empty assignment");
    std::vector<Formula> lits;
    for (const auto& [k, v] : a) lits.push_back(v ? var(k) : neg(var(k)));
    return conj(std::move(lits));
}

BooleanGame fix_vars(const BooleanGame& g, const Assignment& fixed) {
    BooleanGame out;
    for (const auto& vs : g.vars) {
        std::vector<std::string> keep;
        for (const auto& v : vs)
            if (!fixed.count(v)) keep.push_back(v);
        out.vars.push_back(std::move(keep));
    }
    for (const auto& f : g.goals) out.goals.push_back(substitute(f, fixed));
    return out;
}

// ---------------------------------------------------------------- normal form

std::size_t NormalForm::cells() const {
    std::size_t c = 1;
    for (const auto& l : labels) c *= l.size();
    return c;
}

std::size_t NormalForm::flat(const std::vector<std::size_t>& idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) f = f * labels[i].size() + idx[i];
    return f;
}

namespace {

std::uint64_t cell_count(const BooleanGame& g, std::uint64_t cap) {
    std::size_t n = 0;
    for (const auto& vs : g.vars) n += vs.size();
    if (n >= 64 || (std::uint64_t{1} << n) > cap)
        throw resource_error("normal form needs 2^" + std::to_string(n) + " cells, cap is " + std::to_string(cap));
    return std::uint64_t{1} << n;
}

std::string bit_label(std::uint64_t s, std::size_t width) {
    std::string l(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if ((s >> (width - 1 - i)) & 1) l[i] = '1';
    return width ? l : "-";
}

} // namespace

NormalForm to_normal_form(const BooleanGame& g, std::uint64_t cap) {
    validate_game(g);
    std::uint64_t cells = cell_count(g, cap);
    GameEvaluator ev(g);
    std::size_t n = g.players();
    NormalForm nf;
    std::vector<std::vector<int>> slots(n);
    for (std::size_t i = 0; i < n; ++i) {
        nf.var_order.push_back(g.strategy_vars(i));
        for (const auto& v : nf.var_order[i]) slots[i].push_back(ev.slot(v));
        std::uint64_t count = std::uint64_t{1} << nf.var_order[i].size();
        std::vector<std::string> labels;
        for (std::uint64_t s = 0; s < count; ++s) labels.push_back(bit_label(s, nf.var_order[i].size()));
        nf.labels.push_back(std::move(labels));
    }
    nf.payoffs.assign(n, std::vector<Rational>(cells));
    std::vector<std::uint8_t> values(ev.slots());
    std::vector<std::size_t> at(n, 0);
    auto load = [&](std::size_t i) {
        std::size_t w = slots[i].size();
        for (std::size_t b = 0; b < w; ++b) values[slots[i][b]] = (at[i] >> (w - 1 - b)) & 1;
    };
    for (std::size_t i = 0; i < n; ++i) load(i);
    for (std::uint64_t c = 0; c < cells; ++c) {
        for (std::size_t i = 0; i < n; ++i) nf.payoffs[i][c] = ev.wins(i, values.data()) ? 1 : 0;
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++at[i] < nf.labels[i].size()) {
                load(i);
                break;
            }
            at[i] = 0;
            load(i);
        }
    }
    return nf;
}

std::vector<std::uint8_t> win_matrix(const BooleanGame& g, std::size_t player, std::uint64_t cap) {
    validate_game(g);
    if (g.players() != 2) throw input_error("win matrix needs a two-player game");
    std::uint64_t cells = cell_count(g, cap);
    GameEvaluator ev(g);
    std::vector<int> s1, s2;
    for (const auto& v : g.strategy_vars(0)) s1.push_back(ev.slot(v));
    for (const auto& v : g.strategy_vars(1)) s2.push_back(ev.slot(v));
    std::uint64_t n1 = std::uint64_t{1} << s1.size(), n2 = std::uint64_t{1} << s2.size();
    std::vector<std::uint8_t> out(cells);
    std::vector<std::uint8_t> values(ev.slots());
    for (std::uint64_t i = 0; i < n1; ++i) {
        for (std::size_t b = 0; b < s1.size(); ++b) values[s1[b]] = (i >> (s1.size() - 1 - b)) & 1;
        for (std::uint64_t j = 0; j < n2; ++j) {
            for (std::size_t b = 0; b < s2.size(); ++b) values[s2[b]] = (j >> (s2.size() - 1 - b)) & 1;
            out[i * n2 + j] = ev.wins(player, values.data());
        }
    }
    return out;
}

NormalForm make_bimatrix(std::vector<std::string> rows, std::vector<std::string> cols,
                         const std::vector<std::vector<Rational>>& a,
                         const std::vector<std::vector<Rational>>& b) {
    NormalForm nf;
    std::size_t n1 = rows.size(), n2 = cols.size();
    nf.labels = {std::move(rows), std::move(cols)};
    nf.payoffs.assign(2, std::vector<Rational>(n1 * n2));
    if (a.size() != n1 || b.size() != n1) throw input_error("bimatrix shape mismatch");
    for (std::size_t i = 0; i < n1; ++i) {
        if (a[i].size() != n2 || b[i].size() != n2) throw input_error("bimatrix shape mismatch");
        for (std::size_t j = 0; j < n2; ++j) {
            nf.payoffs[0][i * n2 + j] = a[i][j];
            nf.payoffs[1][i * n2 + j] = b[i][j];
        }
    }
    return nf;
}

NormalForm parse_normal_form(const std::string& text) {
    auto lines = header_lines(text);
    if (lines.empty() || lines[0].key != "players")
        throw input_error("line " + std::to_string(lines.empty() ? 1 : lines[0].number) + ": expected 'players: N'");
    std::size_t n = parse_count(lines[0].body, lines[0].number);
    if (n < 2) throw input_error("a game needs at least two players");
    NormalForm nf;
    nf.labels.resize(n);
    std::vector<std::map<std::string, std::size_t>> index(n);
    std::vector<bool> filled;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& l = lines[li];
        auto key = words(l.key);
        auto where = "line " + std::to_string(l.number) + ": ";
        if (key.empty()) throw input_error(where + "empty key");
        if (key[0] == "strategies") {
            std::size_t i = player_key(key, n, l.number);
            if (!nf.labels[i].empty()) throw input_error(where + "strategies declared twice");
            nf.labels[i] = words(l.body);
            if (nf.labels[i].empty()) throw input_error(where + "no strategies");
            for (std::size_t s = 0; s < nf.labels[i].size(); ++s)
                if (!index[i].emplace(nf.labels[i][s], s).second) throw input_error(where + "repeated strategy name");
        } else if (key[0] == "payoff") {
            if (filled.empty()) {
                for (const auto& lab : nf.labels)
                    if (lab.empty()) throw input_error(where + "payoff before all strategies are declared");
                nf.payoffs.assign(n, std::vector<Rational>(nf.cells()));
                filled.assign(nf.cells(), false);
            }
            if (key.size() != n + 1) throw input_error(where + "payoff needs one strategy per player");
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i) {
                auto it = index[i].find(key[i + 1]);
                if (it == index[i].end()) throw input_error(where + "unknown strategy '" + key[i + 1] + "'");
                idx.push_back(it->second);
            }
            auto vals = words(l.body);
            if (vals.size() != n) throw input_error(where + "expected one payoff per player");
            std::size_t f = nf.flat(idx);
            if (filled[f]) throw input_error(where + "payoff cell given twice");
            filled[f] = true;
            for (std::size_t i = 0; i < n; ++i) nf.payoffs[i][f] = parse_rational(vals[i]);
        } else {
            throw input_error(where + "unknown key '" + key[0] + "'");
        }
    }
    if (filled.empty() || std::count(filled.begin(), filled.end(), false))
        throw input_error("normal form leaves payoff cells undefined");
    return nf;
}

std::string render_normal_form(const NormalForm& nf) {
    std::ostringstream out;
    std::size_t n = nf.players();
    out << "players: " << n << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        if (!nf.var_order.empty()) {
            out << "# strategy bits of player " << i + 1 << ":";
            for (const auto& v : nf.var_order[i]) out << " " << v;
            out << "\n";
        }
        out << "strategies " << i + 1 << ":";
        for (const auto& l : nf.labels[i]) out << " " << l;
        out << "\n";
    }
    std::vector<std::size_t> at(n, 0);
    for (std::size_t c = 0; c < nf.cells(); ++c) {
        out << "payoff";
        for (std::size_t i = 0; i < n; ++i) out << " " << nf.labels[i][at[i]];
        out << ":";
        for (std::size_t i = 0; i < n; ++i) out << " " << to_string(nf.payoffs[i][c]);
        out << "\n";
        for (std::size_t i = n; i-- > 0;) {
            if (++at[i] < nf.extent(i)) break;
            at[i] = 0;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------- composition

std::string prefixed(const std::string& ns, const std::string& name) {
    return ns.empty() ? name : ns + "." + name;
}

BooleanGame compose_disjoint(
    const std::vector<Constituent>& parts, const std::vector<std::vector<std::size_t>>& player_map,
    const std::vector<std::vector<std::string>>& fresh,
    const std::function<std::vector<Formula>(const std::vector<std::vector<Formula>>&)>& goal_builder) {
    if (player_map.size() != parts.size()) throw input_error("one player map per constituent required");
    std::set<std::string> spaces;
    for (const auto& c : parts) {
        if (!valid_identifier(c.ns)) throw input_error("invalid namespace '" + c.ns + "'");
        if (!spaces.insert(c.ns).second) throw input_error("namespace '" + c.ns + "' used twice");
    }
    BooleanGame out;
    out.vars = fresh;
    std::vector<std::vector<Formula>> goals;
    for (std::size_t c = 0; c < parts.size(); ++c) {
        const BooleanGame& g = parts[c].game;
        if (player_map[c].size() != g.players()) throw input_error("player map does not cover every role");
        std::map<std::string, std::string> rename;
        for (std::size_t r = 0; r < g.players(); ++r) {
            std::size_t to = player_map[c][r];
            if (to >= out.vars.size()) throw input_error("player map targets a missing outer player");
            for (const auto& v : g.vars[r]) {
                rename[v] = prefixed(parts[c].ns, v);
                out.vars[to].push_back(rename[v]);
            }
        }
        std::vector<Formula> renamed;
        for (const auto& f : g.goals) renamed.push_back(rename_vars(f, rename));
        goals.push_back(std::move(renamed));
    }
    out.goals = goal_builder(goals);
    validate_game(out);
    return out;
}

// ---------------------------------------------------------------- evaluator

GameEvaluator::GameEvaluator(const BooleanGame& g) {
    int next = 0;
    for (const auto& vs : g.vars)
        for (const auto& v : vs) index_.emplace(v, next++);
    for (const auto& f : g.goals) goals_.emplace_back(f, index_);
}

int GameEvaluator::slot(const std::string& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw input_error("unknown variable '" + v + "'");
    return it->second;
}

void GameEvaluator::load(const Assignment& a, std::vector<std::uint8_t>& values) const {
    for (const auto& [k, v] : a) values[slot(k)] = v ? 1 : 0;
}

} // namespace bg
