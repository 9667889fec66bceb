#include "bg/reductions.hpp"

#include "bg/encodings.hpp"
#include "bg/error.hpp"

namespace bg {

namespace {

struct EntryVars {
    std::string zero, one, left, right;
    BitSeq time, tape;
    std::vector<std::string> states;

    std::vector<std::string> cell() const { return {zero, one, left, right}; }
};

EntryVars entry_vars(const std::string& prefix, int player, int k, const TuringMachine& m) {
    std::string p = std::to_string(player);
    EntryVars e;
    e.zero = prefix + "Zero" + p;
    e.one = prefix + "One" + p;
    e.left = prefix + "Left" + p;
    e.right = prefix + "Right" + p;
    e.time = bits(prefix + "Time" + p + ".", k);
    e.tape = bits(prefix + "Tape" + p + ".", k);
    for (const auto& q : m.states) e.states.push_back(prefix + "State" + p + "." + q);
    return e;
}

Formula content_is(const EntryVars& e, Symbol a) {
    switch (a) {
    case Symbol::zero: return var(e.zero);
    case Symbol::one: return var(e.one);
    case Symbol::blank: return conj(neg(var(e.zero)), neg(var(e.one)));
    }
    return bottom();
}

// Markings are exclusive under well-formedness, so one literal suffices.
Formula marking_is(const EntryVars& e, const Cell& c) {
    switch (c.head) {
    case Cell::left: return var(e.left);
    case Cell::right: return var(e.right);
    case Cell::here: return var(e.states[c.state]);
    }
    return bottom();
}

Formula cell_is(const EntryVars& e, const Cell& c) { return conj(content_is(e, c.content), marking_is(e, c)); }

Formula at(const BitSeq& s, std::uint64_t v, int k) { return equal(s, constant_bits(v, k)); }

Formula succ_mod(const BitSeq& p, const BitSeq& q, int k) {
    std::uint64_t top_value = (std::uint64_t{1} << k) - 1;
    return disj(succ(p, q), conj(at(p, top_value, k), at(q, 0, k)));
}

Formula matches(const EntryVars& one, const EntryVars& two) {
    return conj(equal(one.tape, two.tape), equal(one.time, two.time));
}

Formula agree_on(const EntryVars& one, const EntryVars& two) {
    std::vector<Formula> parts{iff(var(one.zero), var(two.zero)), iff(var(one.one), var(two.one)),
                               iff(var(one.left), var(two.left)), iff(var(one.right), var(two.right))};
    for (std::size_t i = 0; i < one.states.size(); ++i) parts.push_back(iff(var(one.states[i]), var(two.states[i])));
    return conj(std::move(parts));
}

Formula shape(const std::array<EntryVars, 4>& e, int k) {
    return conj({succ_mod(e[0].tape, e[1].tape, k), succ_mod(e[0].time, e[2].time, k), equal(e[0].tape, e[2].tape),
                 equal(e[0].time, e[1].time), equal(e[1].tape, e[3].tape), equal(e[2].time, e[3].time)});
}

Formula well_formed(const std::array<EntryVars, 4>& e) {
    std::vector<Formula> parts;
    for (const auto& x : e) {
        std::vector<std::string> marks{x.left, x.right};
        marks.insert(marks.end(), x.states.begin(), x.states.end());
        parts.push_back(build_cardinality(Cardinality::one_of, marks));
        parts.push_back(neg(conj(var(x.one), var(x.zero))));
    }
    return conj(std::move(parts));
}

// Requirements 1 to 4 for one entry of the square.
Formula entry_requirements(const EntryVars& e, const TuringMachine& m, const std::vector<Symbol>& w,
                           const TableSpec& spec) {
    int k = spec.k;
    Formula row0 = at(e.time, 0, k);
    Formula col0 = at(e.tape, 0, k);
    std::vector<Formula> parts;
    parts.push_back(implies(conj(row0, col0), var(e.states[m.state_index(m.start)])));
    for (std::uint64_t j = 0; j < w.size(); ++j)
        parts.push_back(implies(conj(row0, at(e.tape, j, k)), content_is(e, w[j])));
    if (w.size() < spec.W) {
        Formula beyond = w.empty() ? top() : neg(less(e.tape, constant_bits(w.size(), k)));
        parts.push_back(implies(conj(row0, beyond), content_is(e, Symbol::blank)));
    }
    parts.push_back(implies(conj(row0, neg(col0)), var(e.left)));
    parts.push_back(implies(conj(at(e.time, spec.K - 1, k), col0), var(e.states[m.state_index(m.accept)])));
    return conj(std::move(parts));
}

Formula class_condition(const PositionClass& c, const BitSeq& tape, const TableSpec& spec) {
    int k = spec.k;
    if (c.wrap) return at(tape, spec.W - 1, k);
    Formula lo = c.dl < 2 ? at(tape, c.dl, k) : less_eq(constant_bits(2, k), tape);
    Formula hi = c.dr < 2 ? at(tape, spec.W - 2 - c.dr, k) : less_eq(tape, constant_bits(spec.W - 4, k));
    return conj(lo, hi);
}

Formula rule_disjunction(const std::array<EntryVars, 4>& e, const std::vector<RuleSquares>& rules,
                         const TableSpec& spec) {
    std::vector<Formula> options{at(e[0].time, spec.W - 1, spec.k)};
    for (const auto& rs : rules) {
        for (const auto& c : rs.classes) {
            std::vector<Formula> pats;
            for (const auto& p : c.patterns)
                pats.push_back(conj({cell_is(e[0], p[0]), cell_is(e[1], p[1]), cell_is(e[2], p[2]), cell_is(e[3], p[3])}));
            if (pats.empty()) continue;
            options.push_back(conj(class_condition(c, e[0].tape, spec), disj(std::move(pats))));
        }
    }
    return disj(std::move(options));
}

ReductionOutput build(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K, bool forall) {
    validate_machine(m);
    ReductionOutput ro;
    ro.spec = table_spec(K);
    ro.machine = m;
    ro.input = w;
    ro.forall = forall;
    int k = ro.spec.k;
    if (forall && k < 2) throw input_error("the universal variant needs k >= 2 (K >= 3)");
    if (w.size() > ro.spec.W) throw input_error("input word is wider than the table");

    EntryVars one = entry_vars("", 1, k, m);
    std::array<EntryVars, 4> two;
    for (int i = 0; i < 4; ++i) two[i] = entry_vars(square_prefixes[i], 2, k, m);
    ro.side = fixed_value_game(make_rational(3, 4), "side");

    Formula avoid_c = neg(matches(one, two[0]));
    Formula avoid = conj({neg(matches(one, two[1])), neg(matches(one, two[2])), neg(matches(one, two[3]))});
    std::vector<Formula> agree;
    for (const auto& t : two) agree.push_back(implies(matches(one, t), agree_on(one, t)));

    std::vector<Formula> req{entry_requirements(two[0], m, w, ro.spec), entry_requirements(two[1], m, w, ro.spec),
                             entry_requirements(two[2], m, w, ro.spec), entry_requirements(two[3], m, w, ro.spec),
                             rule_disjunction(two, admissible_squares(m, w, K), ro.spec)};
    Formula frame = conj(shape(two, k), well_formed(two));
    ro.check = forall ? conj(frame, neg(conj(std::move(req)))) : conj(frame, conj(std::move(req)));

    Formula g1 = conj(avoid_c, disj(avoid, ro.side.game.goals[0]));
    Formula g2 = conj({disj(neg(avoid_c), conj(neg(avoid), ro.side.game.goals[1])), conj(std::move(agree)), ro.check});

    auto add_entry = [&](const EntryVars& e, const std::string& suffix, std::vector<std::string>& owned) {
        std::string p = e.zero.substr(0, e.zero.size() - 5);
        ro.var_index[p + "Cell" + suffix] = e.cell();
        ro.var_index[p + "Time" + suffix] = var_names(e.time);
        ro.var_index[p + "Tape" + suffix] = var_names(e.tape);
        ro.var_index[p + "State" + suffix] = e.states;
        for (const auto& key : {"Cell", "Time", "Tape", "State"}) {
            const auto& vs = ro.var_index[p + key + suffix];
            owned.insert(owned.end(), vs.begin(), vs.end());
        }
    };
    std::vector<std::string> v1, v2;
    add_entry(one, "1", v1);
    for (const auto& t : two) add_entry(t, "2", v2);
    for (const auto& [role, vs] : ro.side.role_vars) ro.var_index["side." + role] = vs;
    v1.insert(v1.end(), ro.side.game.vars[0].begin(), ro.side.game.vars[0].end());
    v2.insert(v2.end(), ro.side.game.vars[1].begin(), ro.side.game.vars[1].end());

    ro.game.vars = {v1, v2};
    ro.game.goals = {g1, g2};
    validate_game(ro.game);
    ro.payoff = {Rational(0), forall ? forall_guarantee_payoff(k) : guarantee_payoff(k)};
    return ro;
}

Rational pow2_inv(int e) {
    Rational r(1, Integer(1) << e);
    r.canonicalize();
    return r;
}

} // namespace

ReductionOutput build_guarantee_game(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K) {
    return build(m, w, K, false);
}

ReductionOutput build_forall_guarantee_game(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K) {
    return build(m, w, K, true);
}

Rational guarantee_payoff(int k) {
    Rational cell = pow2_inv(2 * k);
    return cell + 3 * cell / 4;
}

Rational forall_delta(int k) { return pow2_inv(2 * k + 2) - pow2_inv(2 * k + 2) * pow2_inv(2 * k); }

Rational forall_guarantee_payoff(int k) {
    if (k < 2) throw input_error("the universal payoff needs k >= 2");
    Rational d = forall_delta(k);
    Rational cells(Integer(1) << (2 * k)), quarter(Integer(1) << (2 * k + 2));
    return 1 / cells + d / (cells - 4) + 2 / quarter + 2 * d / (quarter - 16);
}

namespace {

Cell decode_cell(const EntryVars& e, const Assignment& a, bool& ok) {
    auto val = [&](const std::string& v) {
        auto it = a.find(v);
        if (it == a.end()) throw input_error("assignment misses variable " + v);
        return it->second;
    };
    Cell c;
    bool z = val(e.zero), o = val(e.one);
    if (z && o) ok = false;
    c.content = z ? Symbol::zero : o ? Symbol::one : Symbol::blank;
    int marks = 0;
    if (val(e.left)) {
        ++marks;
        c.head = Cell::left;
    }
    if (val(e.right)) {
        ++marks;
        c.head = Cell::right;
    }
    for (std::size_t q = 0; q < e.states.size(); ++q)
        if (val(e.states[q])) {
            ++marks;
            c.head = Cell::here;
            c.state = static_cast<int>(q);
        }
    if (marks != 1) ok = false;
    if (c.head != Cell::here) c.state = -1;
    return c;
}

void put_cell(Assignment& a, const EntryVars& e, const Cell& c) {
    a[e.zero] = c.content == Symbol::zero;
    a[e.one] = c.content == Symbol::one;
    a[e.left] = c.head == Cell::left;
    a[e.right] = c.head == Cell::right;
    for (std::size_t q = 0; q < e.states.size(); ++q)
        a[e.states[q]] = c.head == Cell::here && c.state == static_cast<int>(q);
}

void put_bits(Assignment& a, const BitSeq& s, std::uint64_t v) {
    for (std::size_t i = 0; i < s.size(); ++i) a[s[i].name] = (v >> (s.size() - 1 - i)) & 1;
}

} // namespace

DecodedSquare decode_square(const ReductionOutput& ro, const Assignment& a) {
    int k = ro.spec.k;
    std::uint64_t W = ro.spec.W;
    DecodedSquare d;
    d.well_formed = true;
    std::array<std::uint64_t, 4> time{}, tape{};
    for (int i = 0; i < 4; ++i) {
        EntryVars e = entry_vars(square_prefixes[i], 2, k, ro.machine);
        d.square.cells[i] = decode_cell(e, a, d.well_formed);
        time[i] = decode_bits(e.time, a);
        tape[i] = decode_bits(e.tape, a);
    }
    d.square.time = time[0];
    d.square.tape = tape[0];
    d.shape = tape[1] == (tape[0] + 1) % W && time[2] == (time[0] + 1) % W && tape[2] == tape[0] &&
              time[1] == time[0] && tape[3] == tape[1] && time[3] == time[2];
    return d;
}

bool check_oracle(const ReductionOutput& ro, const Assignment& a) {
    DecodedSquare d = decode_square(ro, a);
    if (!d.shape || !d.well_formed) return false;
    bool ok = square_oracle(d.square, ro.machine, ro.input, ro.spec.K);
    return ro.forall ? !ok : ok;
}

Assignment square_assignment(const ReductionOutput& ro, const Square& s) {
    std::uint64_t W = ro.spec.W;
    std::array<std::pair<std::uint64_t, std::uint64_t>, 4> pos{
        {{s.time, s.tape}, {s.time, (s.tape + 1) % W}, {(s.time + 1) % W, s.tape}, {(s.time + 1) % W, (s.tape + 1) % W}}};
    Assignment a;
    for (int i = 0; i < 4; ++i) {
        EntryVars e = entry_vars(square_prefixes[i], 2, ro.spec.k, ro.machine);
        put_cell(a, e, s.cells[i]);
        put_bits(a, e.time, pos[i].first);
        put_bits(a, e.tape, pos[i].second);
    }
    return a;
}

Assignment entry_assignment(const ReductionOutput& ro, const Cell& c, std::uint64_t time, std::uint64_t tape) {
    EntryVars e = entry_vars("", 1, ro.spec.k, ro.machine);
    Assignment a;
    put_cell(a, e, c);
    put_bits(a, e.time, time);
    put_bits(a, e.tape, tape);
    return a;
}

MixedProfile witness_profile(const ReductionOutput& ro, const RunTable& t) {
    std::uint64_t W = ro.spec.W;
    if (t.size() != W) throw input_error("run table must have 2^k rows");
    for (const auto& row : t)
        if (row.size() != W) throw input_error("run table must have 2^k columns");
    if (!ro.side.equilibrium) throw input_error("side game has no bundled equilibrium");
    std::vector<Assignment> entries, squares;
    for (std::uint64_t i = 0; i < W; ++i)
        for (std::uint64_t j = 0; j < W; ++j) {
            entries.push_back(entry_assignment(ro, t[i][j], i, j));
            squares.push_back(square_assignment(ro, square_at(t, i, j)));
        }
    MixedProfile p;
    p.players.push_back(product(uniform_strategy(entries), ro.side.equilibrium->players[0]));
    p.players.push_back(product(uniform_strategy(squares), ro.side.equilibrium->players[1]));
    return p;
}

std::vector<std::vector<Rational>> square_position_weights(const ReductionOutput& ro, const MixedProfile& p) {
    std::uint64_t W = ro.spec.W;
    std::vector<std::vector<Rational>> x(W, std::vector<Rational>(W));
    BitSeq time = bits(ro.var_index.at("Time2")), tape = bits(ro.var_index.at("Tape2"));
    std::vector<std::string> vs = var_names(time);
    for (const auto& n : var_names(tape)) vs.push_back(n);
    for (const auto& [a, w] : marginalize(p, vs)) x[decode_bits(time, a)][decode_bits(tape, a)] += w;
    return x;
}

std::vector<std::vector<Rational>> cover_weights(const std::vector<std::vector<Rational>>& x) {
    std::size_t m = x.size();
    std::vector<std::vector<Rational>> c(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i].size() != m) throw input_error("cover weights need a square matrix");
        std::size_t ip = (i + m - 1) % m;
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t jp = (j + m - 1) % m;
            c[i][j] = x[i][j] + (x[ip][j] + x[i][jp] + x[ip][jp]) / 4;
        }
    }
    return c;
}

std::vector<std::vector<Integer>> cover_matrix(int m) {
    if (m < 2) throw input_error("cover matrix needs m >= 2");
    if (m > 16) throw resource_error("cover matrix is capped at m = 16");
    int n = m * m;
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n, 0));
    auto idx = [m](int i, int j) { return ((i + m) % m) * m + (j + m) % m; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int r = idx(i, j);
            a[r][r] += 4;
            a[r][idx(i - 1, j)] += 1;
            a[r][idx(i, j - 1)] += 1;
            a[r][idx(i - 1, j - 1)] += 1;
        }
    return a;
}

Integer determinant(std::vector<std::vector<Integer>> a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

bool cover_matrix_check(int m) { return determinant(cover_matrix(m)) != 0; }

} // namespace bg
