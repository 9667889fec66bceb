#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace bg {

enum class Op : std::uint8_t { top, bottom, var, neg, conj, disj, imp, iff };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string name;           // Op::var only
    std::vector<Formula> kids;  // neg: 1, imp/iff: 2, conj/disj: >= 2
};

using Assignment = std::map<std::string, bool>;

bool valid_identifier(const std::string& name);

Formula top();
Formula bottom();
Formula constant(bool value);
Formula var(const std::string& name);
Formula neg(Formula f);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);

// n-ary connectives. Zero operands give the unit (T for conj, F for disj)
// and a single operand is returned unchanged, so the node arity rule holds.
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
inline Formula conj(Formula a, Formula b) { return conj(std::vector<Formula>{std::move(a), std::move(b)}); }
inline Formula disj(Formula a, Formula b) { return disj(std::vector<Formula>{std::move(a), std::move(b)}); }

bool same(const Formula& a, const Formula& b);
std::size_t size(const Formula& f);

Formula parse_formula(const std::string& text);
std::string render_formula(const Formula& f);

bool eval_formula(const Formula& f, const Assignment& a);
std::set<std::string> free_vars(const Formula& f);

// Variables missing from the map keep their name. The resulting map over
// free_vars(f) must be injective.
Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& m);

// Replaces the given variables by constants.
Formula substitute(const Formula& f, const Assignment& fixed);

// A formula flattened against a variable numbering, for evaluating the same
// goal over many assignments. Evaluation short-circuits.
class CompiledFormula {
public:
    CompiledFormula() = default;
    CompiledFormula(const Formula& f, const std::map<std::string, int>& index);

    bool operator()(const std::uint8_t* values) const { return eval(root_, values); }

private:
    struct Cell {
        Op op;
        int arg;    // variable slot for Op::var
        int first;  // offset into kids_
        int count;
    };
    int compile(const Node* n, const std::map<std::string, int>& index,
                std::map<const Node*, int>& memo);
    bool eval(int c, const std::uint8_t* v) const;

    std::vector<Cell> cells_;
    std::vector<int> kids_;
    int root_ = -1;
};

} // namespace bg
