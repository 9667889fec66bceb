#include "bg/reductions.hpp"

#include "bg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>

namespace bg {

using json = nlohmann::json;

char symbol_char(Symbol s) {
    switch (s) {
    case Symbol::zero: return '0';
    case Symbol::one: return '1';
    case Symbol::blank: return '_';
    }
    return '_';
}

Symbol symbol_from(char c) {
    switch (c) {
    case '0': return Symbol::zero;
    case '1': return Symbol::one;
    case '_': return Symbol::blank;
    }
    throw input_error(std::string("unknown tape symbol '") + c + "'");
}

int TuringMachine::state_index(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

namespace {

bool state_name_ok(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Symbol symbol_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().size() != 1)
        throw input_error(std::string("transition field '") + key + "' must be one of \"0\", \"1\", \"_\"");
    return symbol_from(j[key].get<std::string>()[0]);
}

std::string string_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw input_error(std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

} // namespace

void validate_machine(const TuringMachine& m) {
    if (m.states.empty()) throw input_error("machine has no states");
    std::set<std::string> seen;
    for (const auto& s : m.states) {
        if (!state_name_ok(s)) throw input_error("bad state name '" + s + "'");
        if (!seen.insert(s).second) throw input_error("duplicate state '" + s + "'");
    }
    if (m.state_index(m.start) < 0) throw input_error("start state '" + m.start + "' is not declared");
    if (m.state_index(m.accept) < 0) throw input_error("accept state '" + m.accept + "' is not declared");
    for (const auto& t : m.transitions) {
        if (m.state_index(t.from) < 0 || m.state_index(t.to) < 0)
            throw input_error("transition uses an undeclared state");
        if (t.from == m.accept)
            throw input_error("the accepting state only does nothing; remove its transitions");
        if (t.move == Move::stay) throw input_error("moves must be L or R");
    }
}

TuringMachine parse_machine(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("machine JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("machine JSON must be an object");
    TuringMachine m;
    if (!j.contains("states") || !j["states"].is_array()) throw input_error("missing 'states' array");
    for (const auto& s : j["states"]) {
        if (!s.is_string()) throw input_error("state names must be strings");
        m.states.push_back(s.get<std::string>());
    }
    m.start = string_field(j, "start");
    m.accept = string_field(j, "accept");
    if (j.contains("transitions")) {
        if (!j["transitions"].is_array()) throw input_error("'transitions' must be an array");
        for (const auto& t : j["transitions"]) {
            if (!t.is_object()) throw input_error("transitions must be objects");
            Transition tr;
            tr.from = string_field(t, "from");
            tr.to = string_field(t, "to");
            tr.read = symbol_field(t, "read");
            tr.write = symbol_field(t, "write");
            std::string mv = string_field(t, "move");
            if (mv == "L")
                tr.move = Move::left;
            else if (mv == "R")
                tr.move = Move::right;
            else
                throw input_error("move must be \"L\" or \"R\"");
            m.transitions.push_back(tr);
        }
    }
    validate_machine(m);
    return m;
}

std::string render_machine(const TuringMachine& m) {
    json j;
    j["states"] = m.states;
    j["start"] = m.start;
    j["accept"] = m.accept;
    j["transitions"] = json::array();
    for (const auto& t : m.transitions)
        j["transitions"].push_back({{"from", t.from},
                                    {"read", std::string(1, symbol_char(t.read))},
                                    {"write", std::string(1, symbol_char(t.write))},
                                    {"move", t.move == Move::left ? "L" : "R"},
                                    {"to", t.to}});
    return j.dump(2);
}

std::vector<Symbol> parse_word(const std::string& w) {
    std::vector<Symbol> out;
    for (char c : w) {
        if (c != '0' && c != '1') throw input_error("input words are over {0,1}");
        out.push_back(symbol_from(c));
    }
    return out;
}

std::vector<Rule> machine_rules(const TuringMachine& m) {
    std::vector<Rule> out;
    for (const auto& t : m.transitions)
        out.push_back({m.state_index(t.from), t.read, t.write, t.move, m.state_index(t.to)});
    int qa = m.state_index(m.accept);
    for (Symbol a : {Symbol::zero, Symbol::one, Symbol::blank}) out.push_back({qa, a, a, Move::stay, qa});
    return out;
}

std::string describe_rule(const TuringMachine& m, const Rule& r) {
    std::string mv = r.move == Move::left ? "L" : r.move == Move::right ? "R" : "-";
    return "(" + std::string(1, symbol_char(r.read)) + "," + m.states[r.from] + ")->(" +
           std::string(1, symbol_char(r.write)) + "," + mv + "," + m.states[r.to] + ")";
}

TableSpec table_spec(std::uint64_t K) {
    if (K < 1) throw input_error("step bound K must be at least 1");
    TableSpec s;
    s.K = K;
    s.k = std::max(1, bit_length(K - 1));
    if (s.k > max_table_bits) throw resource_error("step bound needs more than " + std::to_string(max_table_bits) + " bits");
    s.W = std::uint64_t{1} << s.k;
    return s;
}

// ---------------------------------------------------------------- simulation

namespace {

struct Config {
    std::vector<Symbol> tape;
    std::uint64_t head = 0;
    int state = 0;
};

std::vector<Cell> row_of(const Config& c) {
    std::vector<Cell> row(c.tape.size());
    for (std::uint64_t i = 0; i < row.size(); ++i) {
        row[i].content = c.tape[i];
        if (i == c.head) {
            row[i].head = Cell::here;
            row[i].state = c.state;
        } else {
            row[i].head = i < c.head ? Cell::right : Cell::left;
        }
    }
    return row;
}

std::optional<std::uint64_t> moved(std::uint64_t h, Move mv, std::uint64_t width) {
    switch (mv) {
    case Move::left: return h == 0 ? 0 : h - 1;
    case Move::right:
        if (h + 1 >= width) return std::nullopt;
        return h + 1;
    case Move::stay: return h;
    }
    return std::nullopt;
}

} // namespace

std::optional<RunTable> simulate_tm(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t steps,
                                    std::uint64_t width, std::uint64_t accept_row, std::uint64_t cap_nodes) {
    validate_machine(m);
    if (steps == 0 || width == 0) throw input_error("table needs at least one row and column");
    if (accept_row >= steps) throw input_error("accepting row lies outside the table");
    if (w.size() > width) throw input_error("input word is wider than the table");
    if (steps > (std::uint64_t{1} << 24) / width) throw resource_error("table exceeds 2^24 cells");

    std::vector<Rule> rules = machine_rules(m);
    int qa = m.state_index(m.accept);
    Config init;
    init.tape.assign(width, Symbol::blank);
    std::copy(w.begin(), w.end(), init.tape.begin());
    init.state = m.state_index(m.start);

    struct Frame {
        Config c;
        std::size_t next = 0;
    };
    std::vector<Frame> stack{{init, 0}};
    std::uint64_t nodes = 0;
    while (!stack.empty()) {
        Frame& f = stack.back();
        std::uint64_t depth = stack.size() - 1;
        if (depth == accept_row) {
            if (f.c.state == qa && f.c.head == 0) {
                RunTable t;
                for (const auto& fr : stack) t.push_back(row_of(fr.c));
                while (t.size() < steps) t.push_back(t.back());
                return t;
            }
            stack.pop_back();
            continue;
        }
        bool pushed = false;
        while (f.next < rules.size()) {
            const Rule& r = rules[f.next++];
            if (r.from != f.c.state || r.read != f.c.tape[f.c.head]) continue;
            auto h = moved(f.c.head, r.move, width);
            if (!h) continue;
            if (++nodes > cap_nodes) throw resource_error("simulation explored more than the node cap");
            Config n = f.c;
            n.tape[n.head] = r.write;
            n.head = *h;
            n.state = r.to;
            stack.push_back({std::move(n), 0});
            pushed = true;
            break;
        }
        if (!pushed) stack.pop_back();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- squares

Square square_at(const RunTable& t, std::uint64_t time, std::uint64_t tape) {
    if (t.empty() || t[0].empty()) throw input_error("empty table");
    std::uint64_t rows = t.size(), cols = t[0].size();
    if (time >= rows || tape >= cols) throw input_error("square position outside the table");
    std::uint64_t t1 = (time + 1) % rows, s1 = (tape + 1) % cols;
    Square s;
    s.time = time;
    s.tape = tape;
    s.cells = {t[time][tape], t[time][s1], t[t1][tape], t[t1][s1]};
    return s;
}

namespace {

bool marking_is(const Cell& c, Cell::Head head, int state) {
    if (c.head != head) return false;
    return head != Cell::here || c.state == state;
}

Cell::Head expected_head(std::uint64_t c, std::uint64_t h) {
    if (c == h) return Cell::here;
    return c < h ? Cell::right : Cell::left;
}

bool column_fits(const Rule& r, std::uint64_t c, std::uint64_t h, std::uint64_t h2, const Cell& top, const Cell& bottom) {
    if (!marking_is(top, expected_head(c, h), r.from)) return false;
    if (!marking_is(bottom, expected_head(c, h2), r.to)) return false;
    if (c == h) return top.content == r.read && bottom.content == r.write;
    return bottom.content == top.content;
}

bool fits_rule(const Square& s, const Rule& r, std::uint64_t h, std::uint64_t W) {
    auto h2 = moved(h, r.move, W);
    if (!h2) return false;
    std::uint64_t c0 = s.tape, c1 = (s.tape + 1) % W;
    return column_fits(r, c0, h, *h2, s.cells[0], s.cells[2]) && column_fits(r, c1, h, *h2, s.cells[1], s.cells[3]);
}

} // namespace

bool rule_consistent(const Square& s, const TuringMachine& m, std::uint64_t W) {
    for (const Rule& r : machine_rules(m))
        for (std::uint64_t h = 0; h < W; ++h)
            if (fits_rule(s, r, h, W)) return true;
    return false;
}

unsigned square_requirements(const Square& s, const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K) {
    TableSpec spec = table_spec(K);
    std::uint64_t W = spec.W;
    int q0 = m.state_index(m.start), qa = m.state_index(m.accept);
    std::array<std::pair<std::uint64_t, std::uint64_t>, 4> pos{{{s.time, s.tape},
                                                                  {s.time, (s.tape + 1) % W},
                                                                  {(s.time + 1) % W, s.tape},
                                                                  {(s.time + 1) % W, (s.tape + 1) % W}}};
    bool r1 = true, r2 = true, r3 = true, r4 = true;
    for (int e = 0; e < 4; ++e) {
        auto [i, j] = pos[e];
        const Cell& c = s.cells[e];
        if (i == 0 && j == 0 && !marking_is(c, Cell::here, q0)) r1 = false;
        if (i == 0 && j < w.size() && (c.content != w[j] || (j >= 1 && c.head != Cell::left))) r2 = false;
        if (i == 0 && j >= w.size() && (c.content != Symbol::blank || (j >= 1 && c.head != Cell::left))) r3 = false;
        if (i == K - 1 && j == 0 && !marking_is(c, Cell::here, qa)) r4 = false;
    }
    bool r5 = s.time == W - 1 || rule_consistent(s, m, W);
    return unsigned(r1) | unsigned(r2) << 1 | unsigned(r3) << 2 | unsigned(r4) << 3 | unsigned(r5) << 4;
}

bool square_oracle(const Square& s, const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K) {
    return square_requirements(s, m, w, K) == 31u;
}

std::size_t RuleSquares::size() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.patterns.size();
    return n;
}

std::vector<PositionClass> position_classes(std::uint64_t W) {
    std::vector<PositionClass> out;
    std::set<std::pair<int, int>> seen;
    std::vector<std::uint64_t> probe;
    for (std::uint64_t j = 0; j < std::min<std::uint64_t>(W - 1, 3); ++j) probe.push_back(j);
    for (std::uint64_t d = 4; d >= 2; --d)
        if (W >= d) probe.push_back(W - d);
    for (std::uint64_t j : probe) {
        int dl = static_cast<int>(std::min<std::uint64_t>(j, 2));
        int dr = static_cast<int>(std::min<std::uint64_t>(W - 2 - j, 2));
        if (!seen.insert({dl, dr}).second) continue;
        PositionClass c;
        c.dl = dl;
        c.dr = dr;
        c.representative = dl < 2 ? dl : dr < 2 ? W - 2 - dr : 2;
        out.push_back(c);
    }
    PositionClass wrap;
    wrap.wrap = true;
    wrap.representative = W - 1;
    out.push_back(wrap);
    return out;
}

std::vector<RuleSquares> admissible_squares(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K) {
    validate_machine(m);
    TableSpec spec = table_spec(K);
    if (w.size() > spec.W) throw input_error("input word is wider than the table");
    std::uint64_t W = spec.W;
    std::vector<RuleSquares> out;
    for (const Rule& r : machine_rules(m)) {
        RuleSquares rs;
        rs.rule = r;
        for (PositionClass c : position_classes(W)) {
            std::uint64_t j = c.representative;
            std::uint64_t cols[2] = {j, (j + 1) % W};
            // heads near either column, plus one head far away on each side
            std::set<std::uint64_t> heads{0, W - 1};
            for (std::uint64_t col : cols)
                for (int d = -3; d <= 3; ++d) {
                    auto h = static_cast<std::int64_t>(col) + d;
                    if (h >= 0 && static_cast<std::uint64_t>(h) < W) heads.insert(static_cast<std::uint64_t>(h));
                }
            std::set<std::array<Cell, 4>> found;
            for (std::uint64_t h : heads) {
                auto h2 = moved(h, r.move, W);
                if (!h2) continue;
                std::array<std::vector<std::pair<Cell, Cell>>, 2> options;
                for (int x = 0; x < 2; ++x) {
                    std::uint64_t col = cols[x];
                    Cell top, bottom;
                    top.head = expected_head(col, h);
                    top.state = top.head == Cell::here ? r.from : -1;
                    bottom.head = expected_head(col, *h2);
                    bottom.state = bottom.head == Cell::here ? r.to : -1;
                    if (col == h) {
                        top.content = r.read;
                        bottom.content = r.write;
                        options[x].push_back({top, bottom});
                    } else {
                        for (Symbol a : {Symbol::zero, Symbol::one, Symbol::blank}) {
                            top.content = bottom.content = a;
                            options[x].push_back({top, bottom});
                        }
                    }
                }
                for (const auto& [tl, bl] : options[0])
                    for (const auto& [tr, br] : options[1]) found.insert({tl, tr, bl, br});
            }
            c.patterns.assign(found.begin(), found.end());
            rs.classes.push_back(std::move(c));
        }
        out.push_back(std::move(rs));
    }
    return out;
}

} // namespace bg
