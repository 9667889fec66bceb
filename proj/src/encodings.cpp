#include "bg/encodings.hpp"

#include "bg/error.hpp"

#include <set>

namespace bg {

Formula BitTerm::formula() const {
    switch (kind) {
    case variable: return var(name);
    case one: return top();
    case zero: break;
    }
    return bottom();
}

BitSeq bits(const std::vector<std::string>& names) {
    BitSeq s;
    for (const auto& n : names) s.push_back(BitTerm::of(n));
    return s;
}

BitSeq bits(const std::string& prefix, int width) {
    BitSeq s;
    for (int i = 1; i <= width; ++i) s.push_back(BitTerm::of(prefix + std::to_string(i)));
    return s;
}

BitSeq constant_bits(std::uint64_t value, int width) {
    if (width < 1 || width > 63) throw input_error("bit width must be in 1..63");
    if (value >> width) throw input_error(std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
    BitSeq s(width);
    for (int i = 0; i < width; ++i)
        s[i].kind = (value >> (width - 1 - i)) & 1 ? BitTerm::one : BitTerm::zero;
    return s;
}

std::vector<std::string> var_names(const BitSeq& s) {
    std::vector<std::string> out;
    for (const auto& t : s)
        if (t.kind == BitTerm::variable) out.push_back(t.name);
    return out;
}

std::uint64_t decode_bits(const BitSeq& s, const Assignment& a) {
    std::uint64_t v = 0;
    for (const auto& t : s) {
        bool b = t.kind == BitTerm::one;
        if (t.kind == BitTerm::variable) {
            auto it = a.find(t.name);
            if (it == a.end()) throw input_error("unbound variable '" + t.name + "'");
            b = it->second;
        }
        v = (v << 1) | (b ? 1 : 0);
    }
    return v;
}

namespace {

void check_seq(const BitSeq& s) {
    if (s.empty()) throw input_error("bit sequences must have width >= 1");
    std::set<std::string> seen;
    for (const auto& t : s)
        if (t.kind == BitTerm::variable && !seen.insert(t.name).second)
            throw input_error("variable '" + t.name + "' repeated within one sequence");
}

void check_widths(std::initializer_list<const BitSeq*> seqs) {
    std::size_t m = (*seqs.begin())->size();
    for (const BitSeq* s : seqs) {
        check_seq(*s);
        if (s->size() != m) throw input_error("bit width mismatch");
    }
}

Formula eq_range(const BitSeq& p, const BitSeq& q, std::size_t from, std::size_t to) {
    std::vector<Formula> parts;
    for (std::size_t i = from; i < to; ++i) parts.push_back(iff(p[i].formula(), q[i].formula()));
    return conj(std::move(parts));
}

// Carry into position i (0-based, most significant first) from the
// positions below it; i = -1 asks for the carry out of the top bit.
Formula carry(const BitSeq& p, const BitSeq& q, int i) {
    int m = static_cast<int>(p.size());
    std::vector<Formula> cases;
    for (int j = i + 1; j < m; ++j) {
        std::vector<Formula> c{p[j].formula(), q[j].formula()};
        for (int l = i + 1; l < j; ++l) c.push_back(disj(p[l].formula(), q[l].formula()));
        cases.push_back(conj(std::move(c)));
    }
    return disj(std::move(cases));
}

Formula borrow(const BitSeq& p, const BitSeq& q, int i) {
    int m = static_cast<int>(p.size());
    std::vector<Formula> cases;
    for (int j = i + 1; j < m; ++j) {
        std::vector<Formula> c{neg(p[j].formula()), q[j].formula()};
        for (int l = i + 1; l < j; ++l) c.push_back(implies(p[l].formula(), q[l].formula()));
        cases.push_back(conj(std::move(c)));
    }
    return disj(std::move(cases));
}

} // namespace

Formula build_comparison(Comparison kind, const BitSeq& p, const BitSeq& q) {
    check_widths({&p, &q});
    std::size_t m = p.size();
    switch (kind) {
    case Comparison::equal:
        return eq_range(p, q, 0, m);
    case Comparison::succ: {
        // q = p + 1: common prefix, then p = 0 1..1 and q = 1 0..0
        std::vector<Formula> cases;
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<Formula> c{eq_range(p, q, 0, k), neg(p[k].formula()), q[k].formula()};
            for (std::size_t i = k + 1; i < m; ++i) {
                c.push_back(p[i].formula());
                c.push_back(neg(q[i].formula()));
            }
            cases.push_back(conj(std::move(c)));
        }
        return disj(std::move(cases));
    }
    case Comparison::less:
    case Comparison::less_eq: {
        std::vector<Formula> cases;
        for (std::size_t k = 0; k < m; ++k)
            cases.push_back(conj({eq_range(p, q, 0, k), neg(p[k].formula()), q[k].formula()}));
        if (kind == Comparison::less_eq) cases.push_back(eq_range(p, q, 0, m));
        return disj(std::move(cases));
    }
    }
    return bottom();
}

Formula build_arithmetic(Arithmetic kind, const BitSeq& p, const BitSeq& q, const BitSeq& r) {
    check_widths({&p, &q, &r});
    int m = static_cast<int>(p.size());
    std::vector<Formula> parts;
    for (int i = 0; i < m; ++i) {
        Formula c = kind == Arithmetic::add ? carry(p, q, i) : borrow(p, q, i);
        // r_i is p_i xor q_i xor c
        parts.push_back(iff(r[i].formula(), iff(iff(p[i].formula(), q[i].formula()), c)));
    }
    if (kind == Arithmetic::add)
        parts.push_back(neg(carry(p, q, -1)));
    else
        parts.push_back(less_eq(q, p));
    return conj(std::move(parts));
}

Formula build_cardinality(Cardinality kind, const std::vector<std::string>& vars) {
    if (vars.empty()) throw input_error("cardinality constraint over no variables");
    std::set<std::string> seen;
    for (const auto& v : vars)
        if (!seen.insert(v).second) throw input_error("duplicate variable '" + v + "'");
    std::vector<Formula> parts;
    if (kind == Cardinality::none_of) {
        for (const auto& v : vars) parts.push_back(neg(var(v)));
        return conj(std::move(parts));
    }
    std::vector<Formula> any;
    for (const auto& v : vars) any.push_back(var(v));
    parts.push_back(disj(std::move(any)));
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            parts.push_back(neg(conj(var(vars[i]), var(vars[j]))));
    return conj(std::move(parts));
}

BitSeq shifted(const BitSeq& r, int shift, int width) {
    int lead = width - static_cast<int>(r.size()) - shift;
    if (shift < 0 || lead < 0) throw input_error("shifted sequence does not fit");
    BitSeq s(lead);
    s.insert(s.end(), r.begin(), r.end());
    s.resize(width);
    return s;
}

Formula build_square(const BitSeq& r, const BitSeq& rsq, const std::vector<BitSeq>& summands,
                     const std::vector<BitSeq>& partial) {
    check_seq(r);
    int k = static_cast<int>(r.size());
    int w = 2 * k;
    if (static_cast<int>(rsq.size()) != w || static_cast<int>(summands.size()) != k ||
        static_cast<int>(partial.size()) != k + 1)
        throw input_error("square: width mismatch");
    std::set<std::string> seen;
    auto claim = [&](const BitSeq& s, int width) {
        if (static_cast<int>(s.size()) != width) throw input_error("square: width mismatch");
        for (const auto& v : var_names(s))
            if (!seen.insert(v).second) throw input_error("square: sequences share variable '" + v + "'");
    };
    claim(r, k);
    claim(rsq, w);
    for (const auto& s : summands) claim(s, w);
    for (const auto& s : partial) claim(s, w);

    std::vector<Formula> parts;
    BitSeq zero = constant_bits(0, w);
    for (int j = 0; j < k; ++j) {
        Formula bit = r[j].formula();
        parts.push_back(disj(conj(equal(summands[j], shifted(r, k - 1 - j, w)), bit),
                             conj(equal(summands[j], zero), neg(bit))));
    }
    for (int j = 0; j < k; ++j) parts.push_back(add(partial[j], summands[j], partial[j + 1]));
    parts.push_back(equal(partial[0], zero));
    parts.push_back(equal(partial[k], rsq));
    return conj(std::move(parts));
}

SquareWitness square_schedule(std::uint64_t r, int k) {
    SquareWitness w;
    w.partial.push_back(0);
    for (int j = 0; j < k; ++j) {
        bool bit = (r >> (k - 1 - j)) & 1;
        w.summands.push_back(bit ? r << (k - 1 - j) : 0);
        w.partial.push_back(w.partial.back() + w.summands.back());
    }
    return w;
}

} // namespace bg
