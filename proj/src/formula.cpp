#include "bg/formula.hpp"

#include "bg/error.hpp"

#include <cctype>
#include <functional>

namespace bg {

namespace {

Formula make(Op op, std::string name = {}, std::vector<Formula> kids = {}) {
    return std::make_shared<const Node>(Node{op, std::move(name), std::move(kids)});
}

const Formula& top_node() {
    static const Formula t = make(Op::top);
    return t;
}

const Formula& bottom_node() {
    static const Formula f = make(Op::bottom);
    return f;
}

} // namespace

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    auto c0 = static_cast<unsigned char>(name[0]);
    if (!(std::isalpha(c0) || c0 == '_')) return false;
    for (char ch : name) {
        auto c = static_cast<unsigned char>(ch);
        if (!(std::isalnum(c) || c == '_' || c == '.')) return false;
    }
    return true;
}

Formula top() { return top_node(); }
Formula bottom() { return bottom_node(); }
Formula constant(bool value) { return value ? top_node() : bottom_node(); }

Formula var(const std::string& name) {
    if (!valid_identifier(name) || name == "T" || name == "F")
        throw input_error("invalid variable name '" + name + "'");
    return make(Op::var, name);
}

Formula neg(Formula f) { return make(Op::neg, {}, {std::move(f)}); }
Formula implies(Formula a, Formula b) { return make(Op::imp, {}, {std::move(a), std::move(b)}); }
Formula iff(Formula a, Formula b) { return make(Op::iff, {}, {std::move(a), std::move(b)}); }

Formula conj(std::vector<Formula> fs) {
    if (fs.empty()) return top();
    if (fs.size() == 1) return fs.front();
    return make(Op::conj, {}, std::move(fs));
}

Formula disj(std::vector<Formula> fs) {
    if (fs.empty()) return bottom();
    if (fs.size() == 1) return fs.front();
    return make(Op::disj, {}, std::move(fs));
}

bool same(const Formula& a, const Formula& b) {
    if (a.get() == b.get()) return true;
    if (a->op != b->op || a->name != b->name || a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!same(a->kids[i], b->kids[i])) return false;
    return true;
}

std::size_t size(const Formula& f) {
    std::size_t n = 1;
    for (const auto& k : f->kids) n += size(k);
    return n;
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok { ident, top, bottom, neg, conj, disj, imp, iff, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            int l = line_, c = col_;
            if (i_ >= s_.size()) {
                out.push_back({Tok::end, "", l, c});
                return out;
            }
            char ch = s_[i_];
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::string id;
                while (i_ < s_.size()) {
                    auto u = static_cast<unsigned char>(s_[i_]);
                    if (!(std::isalnum(u) || s_[i_] == '_' || s_[i_] == '.')) break;
                    id += s_[i_];
                    advance();
                }
                Tok k = id == "T" ? Tok::top : id == "F" ? Tok::bottom : Tok::ident;
                out.push_back({k, id, l, c});
                continue;
            }
            if (starts("<->")) {
                advance(3);
                out.push_back({Tok::iff, "<->", l, c});
            } else if (starts("->")) {
                advance(2);
                out.push_back({Tok::imp, "->", l, c});
            } else if (ch == '~') {
                advance();
                out.push_back({Tok::neg, "~", l, c});
            } else if (ch == '&') {
                advance();
                out.push_back({Tok::conj, "&", l, c});
            } else if (ch == '|') {
                advance();
                out.push_back({Tok::disj, "|", l, c});
            } else if (ch == '(') {
                advance();
                out.push_back({Tok::lparen, "(", l, c});
            } else if (ch == ')') {
                advance();
                out.push_back({Tok::rparen, ")", l, c});
            } else {
                throw input_error(std::to_string(l) + ":" + std::to_string(c) +
                                  ": unexpected character '" + std::string(1, ch) + "'");
            }
        }
    }

private:
    bool starts(const char* lit) const { return s_.compare(i_, std::char_traits<char>::length(lit), lit) == 0; }

    void advance(std::size_t n = 1) {
        while (n-- > 0 && i_ < s_.size()) {
            if (s_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++i_;
        }
    }

    void skip_space() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Formula run() {
        Formula f = parse_iff();
        if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return t_[i_]; }
    Token take() { return t_[i_++]; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& k = peek();
        throw input_error(std::to_string(k.line) + ":" + std::to_string(k.col) + ": " + what);
    }

    Formula parse_iff() {
        Formula f = parse_imp();
        while (peek().kind == Tok::iff) {
            take();
            f = iff(f, parse_imp());
        }
        return f;
    }

    Formula parse_imp() {
        Formula f = parse_or();
        if (peek().kind == Tok::imp) {
            take();
            return implies(f, parse_imp());
        }
        return f;
    }

    Formula parse_or() {
        std::vector<Formula> fs{parse_and()};
        while (peek().kind == Tok::disj) {
            take();
            fs.push_back(parse_and());
        }
        return disj(std::move(fs));
    }

    Formula parse_and() {
        std::vector<Formula> fs{parse_unary()};
        while (peek().kind == Tok::conj) {
            take();
            fs.push_back(parse_unary());
        }
        return conj(std::move(fs));
    }

    Formula parse_unary() {
        switch (peek().kind) {
        case Tok::neg:
            take();
            return neg(parse_unary());
        case Tok::lparen: {
            take();
            Formula f = parse_iff();
            if (peek().kind != Tok::rparen) fail("expected ')'");
            take();
            return f;
        }
        case Tok::top:
            take();
            return top();
        case Tok::bottom:
            take();
            return bottom();
        case Tok::ident:
            return var(take().text);
        case Tok::end:
            fail("unexpected end of input");
        default:
            fail("unexpected '" + peek().text + "'");
        }
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

// Binding strength; higher binds tighter.
int level(Op op) {
    switch (op) {
    case Op::iff: return 1;
    case Op::imp: return 2;
    case Op::disj: return 3;
    case Op::conj: return 4;
    case Op::neg: return 5;
    default: return 6;
    }
}

void render(const Formula& f, int need, std::string& out) {
    bool paren = level(f->op) < need;
    if (paren) out += '(';
    switch (f->op) {
    case Op::top: out += 'T'; break;
    case Op::bottom: out += 'F'; break;
    case Op::var: out += f->name; break;
    case Op::neg:
        out += '~';
        render(f->kids[0], 5, out);
        break;
    case Op::conj:
    case Op::disj: {
        const char* sep = f->op == Op::conj ? " & " : " | ";
        // a nested node of the same connective keeps its parentheses, so the
        // parser does not flatten it away
        int kid_need = level(f->op) + 1;
        for (std::size_t i = 0; i < f->kids.size(); ++i) {
            if (i) out += sep;
            render(f->kids[i], kid_need, out);
        }
        break;
    }
    case Op::imp:
        render(f->kids[0], 3, out);
        out += " -> ";
        render(f->kids[1], 2, out);
        break;
    case Op::iff:
        render(f->kids[0], 1, out);
        out += " <-> ";
        render(f->kids[1], 2, out);
        break;
    }
    if (paren) out += ')';
}

bool eval_strict(const Node* n, const Assignment& a) {
    switch (n->op) {
    case Op::top: return true;
    case Op::bottom: return false;
    case Op::var: return a.at(n->name);
    case Op::neg: return !eval_strict(n->kids[0].get(), a);
    case Op::conj: {
        bool r = true;
        for (const auto& k : n->kids) r = eval_strict(k.get(), a) && r;
        return r;
    }
    case Op::disj: {
        bool r = false;
        for (const auto& k : n->kids) r = eval_strict(k.get(), a) || r;
        return r;
    }
    case Op::imp: {
        bool x = eval_strict(n->kids[0].get(), a);
        bool y = eval_strict(n->kids[1].get(), a);
        return !x || y;
    }
    case Op::iff: return eval_strict(n->kids[0].get(), a) == eval_strict(n->kids[1].get(), a);
    }
    return false;
}

void first_unbound(const Node* n, const Assignment& a) {
    if (n->op == Op::var && !a.count(n->name))
        throw input_error("unbound variable '" + n->name + "'");
    for (const auto& k : n->kids) first_unbound(k.get(), a);
}

void collect(const Node* n, std::set<std::string>& out) {
    if (n->op == Op::var) out.insert(n->name);
    for (const auto& k : n->kids) collect(k.get(), out);
}

Formula map_vars(const Formula& f, const std::function<Formula(const Formula&)>& leaf,
                 std::map<const Node*, Formula>& memo) {
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    Formula out;
    if (f->op == Op::var) {
        out = leaf(f);
    } else if (f->kids.empty()) {
        out = f;
    } else {
        std::vector<Formula> kids;
        kids.reserve(f->kids.size());
        bool changed = false;
        for (const auto& k : f->kids) {
            kids.push_back(map_vars(k, leaf, memo));
            changed = changed || kids.back().get() != k.get();
        }
        out = changed ? make(f->op, {}, std::move(kids)) : f;
    }
    memo.emplace(f.get(), out);
    return out;
}

} // namespace

Formula parse_formula(const std::string& text) {
    Lexer lex(text);
    return Parser(lex.run()).run();
}

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, 0, out);
    return out;
}

bool eval_formula(const Formula& f, const Assignment& a) {
    first_unbound(f.get(), a);
    return eval_strict(f.get(), a);
}

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    collect(f.get(), out);
    return out;
}

Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& m) {
    std::map<std::string, std::string> image;
    for (const auto& v : free_vars(f)) {
        auto it = m.find(v);
        const std::string& to = it == m.end() ? v : it->second;
        auto [pos, fresh] = image.emplace(to, v);
        if (!fresh) throw input_error("rename maps both '" + pos->second + "' and '" + v + "' to '" + to + "'");
    }
    std::map<const Node*, Formula> memo;
    return map_vars(f, [&](const Formula& leaf) {
        auto it = m.find(leaf->name);
        return it == m.end() ? leaf : var(it->second);
    }, memo);
}

Formula substitute(const Formula& f, const Assignment& fixed) {
    std::map<const Node*, Formula> memo;
    return map_vars(f, [&](const Formula& leaf) {
        auto it = fixed.find(leaf->name);
        return it == fixed.end() ? leaf : constant(it->second);
    }, memo);
}

// ---------------------------------------------------------------- compiled

CompiledFormula::CompiledFormula(const Formula& f, const std::map<std::string, int>& index) {
    std::map<const Node*, int> memo;
    root_ = compile(f.get(), index, memo);
}

int CompiledFormula::compile(const Node* n, const std::map<std::string, int>& index,
                             std::map<const Node*, int>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<int> kids;
    for (const auto& k : n->kids) kids.push_back(compile(k.get(), index, memo));
    Cell c{n->op, -1, static_cast<int>(kids_.size()), static_cast<int>(kids.size())};
    if (n->op == Op::var) {
        auto v = index.find(n->name);
        if (v == index.end()) throw input_error("unbound variable '" + n->name + "'");
        c.arg = v->second;
    }
    kids_.insert(kids_.end(), kids.begin(), kids.end());
    cells_.push_back(c);
    int id = static_cast<int>(cells_.size()) - 1;
    memo.emplace(n, id);
    return id;
}

bool CompiledFormula::eval(int id, const std::uint8_t* v) const {
    const Cell& c = cells_[id];
    switch (c.op) {
    case Op::top: return true;
    case Op::bottom: return false;
    case Op::var: return v[c.arg] != 0;
    case Op::neg: return !eval(kids_[c.first], v);
    case Op::conj:
        for (int i = 0; i < c.count; ++i)
            if (!eval(kids_[c.first + i], v)) return false;
        return true;
    case Op::disj:
        for (int i = 0; i < c.count; ++i)
            if (eval(kids_[c.first + i], v)) return true;
        return false;
    case Op::imp: return !eval(kids_[c.first], v) || eval(kids_[c.first + 1], v);
    case Op::iff: return eval(kids_[c.first], v) == eval(kids_[c.first + 1], v);
    }
    return false;
}

} // namespace bg
