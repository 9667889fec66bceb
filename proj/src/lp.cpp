#include "bg/lp.hpp"

#include "bg/error.hpp"

#include <optional>

namespace bg {

int LinearProgram::add_var(std::string name, bool free) {
    names.push_back(std::move(name));
    is_free.push_back(free);
    return static_cast<int>(names.size()) - 1;
}

void LinearProgram::add_row(LinearTerms terms, Relation rel, Rational rhs) {
    rows.push_back({std::move(terms), rel, std::move(rhs)});
}

void LinearProgram::set_objective(LinearTerms terms, Sense s) {
    objective = std::move(terms);
    sense = s;
}

void validate_lp(const LinearProgram& lp) {
    if (lp.is_free.size() != lp.names.size()) throw input_error("lp: variable flags out of step with names");
    int n = static_cast<int>(lp.vars());
    auto check = [&](const LinearTerms& t) {
        for (const auto& [v, c] : t)
            if (v < 0 || v >= n) throw input_error("lp: coefficient on undeclared variable " + std::to_string(v));
    };
    for (const auto& r : lp.rows) check(r.terms);
    check(lp.objective);
}

namespace {

class Tableau {
public:
    std::vector<std::vector<Rational>> t;  // rows, last column is the rhs
    std::vector<Rational> z;               // reduced costs, z.back() is minus the objective value
    std::vector<int> basis;
    std::vector<bool> allowed;

    std::size_t cols() const { return allowed.size(); }

    void price(const std::vector<Rational>& cost) {
        z.assign(cols() + 1, Rational(0));
        for (std::size_t j = 0; j < cols(); ++j) z[j] = cost[j];
        for (std::size_t i = 0; i < t.size(); ++i) {
            const Rational& cb = cost[basis[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j <= cols(); ++j)
                if (sgn(t[i][j]) != 0) z[j] -= cb * t[i][j];
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rational p = t[r][c];
        for (auto& v : t[r])
            if (sgn(v) != 0) v /= p;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (sgn(row[c]) == 0) return;
            Rational f = row[c];
            for (std::size_t j = 0; j <= cols(); ++j)
                if (sgn(t[r][j]) != 0) row[j] -= f * t[r][j];
        };
        for (std::size_t i = 0; i < t.size(); ++i)
            if (i != r) eliminate(t[i]);
        eliminate(z);
        basis[r] = static_cast<int>(c);
    }

    // Maximizes the priced objective with Bland's rule; false when unbounded.
    bool run() {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < cols() && !enter; ++j)
                if (allowed[j] && sgn(z[j]) > 0) enter = j;
            if (!enter) return true;
            std::size_t c = *enter;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (sgn(t[i][c]) <= 0) continue;
                Rational ratio = t[i][cols()] / t[i][c];
                if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, c);
        }
    }
};

} // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
    validate_lp(lp);
    std::size_t n = lp.vars(), m = lp.rows.size();
    // structural columns: one per variable plus a negative part for free ones
    std::vector<int> pos(n), negc(n, -1);
    std::size_t ncols = 0;
    for (std::size_t v = 0; v < n; ++v) {
        pos[v] = static_cast<int>(ncols++);
        if (lp.is_free[v]) negc[v] = static_cast<int>(ncols++);
    }
    std::size_t structural = ncols;
    std::vector<int> slack(m, -1), art(m, -1);
    std::vector<bool> flip(m), surplus(m);
    for (std::size_t i = 0; i < m; ++i) {
        Relation rel = lp.rows[i].rel;
        flip[i] = sgn(lp.rows[i].rhs) < 0;
        if (flip[i] && rel != Relation::eq) rel = rel == Relation::le ? Relation::ge : Relation::le;
        if (rel != Relation::eq) slack[i] = static_cast<int>(ncols++);
        if (rel != Relation::le) art[i] = static_cast<int>(ncols++);
        surplus[i] = rel == Relation::ge;
    }

    Tableau tb;
    tb.allowed.assign(ncols, true);
    tb.t.assign(m, std::vector<Rational>(ncols + 1));
    tb.basis.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        auto& row = tb.t[i];
        Rational sign = flip[i] ? -1 : 1;
        for (const auto& [v, c] : lp.rows[i].terms) {
            row[pos[v]] += sign * c;
            if (negc[v] >= 0) row[negc[v]] -= sign * c;
        }
        row[ncols] = sign * lp.rows[i].rhs;
        if (slack[i] >= 0) {
            row[slack[i]] = surplus[i] ? -1 : 1;
            if (!surplus[i]) tb.basis[i] = slack[i];
        }
        if (art[i] >= 0) {
            row[art[i]] = 1;
            tb.basis[i] = art[i];
        }
    }

    std::vector<bool> is_art(ncols);
    bool any_art = false;
    for (int a : art)
        if (a >= 0) is_art[a] = any_art = true;

    if (any_art) {
        std::vector<Rational> cost(ncols);
        for (std::size_t j = 0; j < ncols; ++j)
            if (is_art[j]) cost[j] = -1;
        tb.price(cost);
        tb.run();
        if (sgn(tb.z[ncols]) != 0) return LpOutcome{LpStatus::infeasible, {}, 0};
        // drive artificials out of the basis, dropping redundant rows
        for (std::size_t i = 0; i < tb.t.size();) {
            if (!is_art[tb.basis[i]]) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < ncols && !col; ++j)
                if (!is_art[j] && sgn(tb.t[i][j]) != 0) col = j;
            if (col) {
                tb.pivot(i, *col);
                ++i;
            } else {
                tb.t.erase(tb.t.begin() + static_cast<long>(i));
                tb.basis.erase(tb.basis.begin() + static_cast<long>(i));
            }
        }
        for (std::size_t j = 0; j < ncols; ++j)
            if (is_art[j]) tb.allowed[j] = false;
    }

    std::vector<Rational> cost(ncols);
    Rational dir = lp.sense == Sense::maximize ? 1 : -1;
    for (const auto& [v, c] : lp.objective) {
        cost[pos[v]] += dir * c;
        if (negc[v] >= 0) cost[negc[v]] -= dir * c;
    }
    tb.price(cost);
    if (!tb.run()) return LpOutcome{LpStatus::unbounded, {}, 0};

    std::vector<Rational> col_value(structural);
    for (std::size_t i = 0; i < tb.t.size(); ++i)
        if (static_cast<std::size_t>(tb.basis[i]) < structural) col_value[tb.basis[i]] = tb.t[i][ncols];
    LpOutcome out;
    out.status = LpStatus::optimal;
    out.x.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        out.x[v] = col_value[pos[v]];
        if (negc[v] >= 0) out.x[v] -= col_value[negc[v]];
    }
    out.value = objective_value(lp, out.x);
    return out;
}

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.vars()) throw input_error("lp: solution does not bind every variable");
    Rational v = 0;
    for (const auto& [i, c] : lp.objective) v += c * x[i];
    return v;
}

bool verify_solution(const LinearProgram& lp, const std::vector<Rational>& x) {
    validate_lp(lp);
    if (x.size() != lp.vars()) throw input_error("lp: solution does not bind every variable");
    for (std::size_t v = 0; v < lp.vars(); ++v)
        if (!lp.is_free[v] && sgn(x[v]) < 0) return false;
    for (const auto& r : lp.rows) {
        Rational lhs = 0;
        for (const auto& [i, c] : r.terms) lhs += c * x[i];
        if ((r.rel == Relation::le && lhs > r.rhs) || (r.rel == Relation::ge && lhs < r.rhs) ||
            (r.rel == Relation::eq && lhs != r.rhs))
            return false;
    }
    return true;
}

bool solution_unique(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (!verify_solution(lp, x)) throw input_error("lp: solution is infeasible");
    LpOutcome best = solve_lp(lp);
    Rational value = objective_value(lp, x);
    if (!best.optimal() || best.value != value) throw input_error("lp: solution is not optimal");
    LinearProgram pinned = lp;
    if (!lp.objective.empty()) pinned.add_row(lp.objective, Relation::eq, value);
    for (std::size_t v = 0; v < lp.vars(); ++v) {
        for (Sense s : {Sense::maximize, Sense::minimize}) {
            pinned.set_objective({{static_cast<int>(v), Rational(1)}}, s);
            LpOutcome o = solve_lp(pinned);
            if (!o.optimal() || o.value != x[v]) return false;
        }
    }
    return true;
}

} // namespace bg
