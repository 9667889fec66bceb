#pragma once

#include "bg/formula.hpp"
#include "bg/game.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bgtest {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bg::Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& names) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    int c = pick(rng);
    if (c == 0) return rng() % 2 ? bg::top() : bg::bottom();
    if (c <= 2) return bg::var(names[rng() % names.size()]);
    switch (c) {
    case 3:
    case 4: return bg::neg(random_formula(rng, depth - 1, names));
    case 5:
    case 6: {
        std::vector<bg::Formula> kids;
        int n = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) kids.push_back(random_formula(rng, depth - 1, names));
        return c == 5 ? bg::conj(kids) : bg::disj(kids);
    }
    case 7: return bg::implies(random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names));
    default: return bg::iff(random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names));
    }
}

inline bg::BooleanGame matching_pennies() {
    return bg::parse_game("players: 2\nvars 1: p\nvars 2: q\ngoal 1: ~(p <-> q)\ngoal 2: p <-> q\n");
}

inline bg::NormalForm bimatrix(const std::vector<std::vector<long>>& a, const std::vector<std::vector<long>>& b,
                               std::vector<std::string> rows = {}, std::vector<std::string> cols = {}) {
    std::vector<std::vector<bg::Rational>> ra, rb;
    for (const auto& r : a) {
        ra.emplace_back();
        for (long x : r) ra.back().emplace_back(x);
    }
    for (const auto& r : b) {
        rb.emplace_back();
        for (long x : r) rb.back().emplace_back(x);
    }
    if (rows.empty())
        for (std::size_t i = 0; i < a.size(); ++i) rows.push_back("r" + std::to_string(i));
    if (cols.empty())
        for (std::size_t j = 0; j < a[0].size(); ++j) cols.push_back("c" + std::to_string(j));
    return bg::make_bimatrix(rows, cols, ra, rb);
}

inline bg::NormalForm prisoners_dilemma() {
    return bimatrix({{-1, -5}, {0, -4}}, {{-1, 0}, {-5, -4}}, {"Silent", "Talk"}, {"Silent", "Talk"});
}

inline bg::NormalForm battle_of_sexes() {
    return bimatrix({{3, 0}, {0, 2}}, {{2, 0}, {0, 3}}, {"Ballet", "Boxing"}, {"Ballet", "Boxing"});
}

inline bg::NormalForm pennies_nf() { return bimatrix({{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}, {"Heads", "Tails"}, {"Heads", "Tails"}); }

} // namespace bgtest
