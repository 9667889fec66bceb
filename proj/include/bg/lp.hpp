#pragma once

#include "bg/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bg {

enum class Relation { le, eq, ge };
enum class Sense { maximize, minimize };

using LinearTerms = std::vector<std::pair<int, Rational>>;

struct Constraint {
    LinearTerms terms;
    Relation rel = Relation::le;
    Rational rhs;
};

struct LinearProgram {
    std::vector<std::string> names;
    std::vector<bool> is_free;
    std::vector<Constraint> rows;
    LinearTerms objective;
    Sense sense = Sense::maximize;

    int add_var(std::string name, bool free = false);
    void add_row(LinearTerms terms, Relation rel, Rational rhs);
    void set_objective(LinearTerms terms, Sense s);
    std::size_t vars() const { return names.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;  // indexed like LinearProgram::names
    Rational value;
    bool optimal() const { return status == LpStatus::optimal; }
};

void validate_lp(const LinearProgram& lp);
LpOutcome solve_lp(const LinearProgram& lp);
Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x);
bool verify_solution(const LinearProgram& lp, const std::vector<Rational>& x);
bool solution_unique(const LinearProgram& lp, const std::vector<Rational>& x);

} // namespace bg
