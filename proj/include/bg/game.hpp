#pragma once

#include "bg/formula.hpp"
#include "bg/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bg {

inline constexpr std::uint64_t default_cap = std::uint64_t{1} << 22;

struct BooleanGame {
    std::vector<std::vector<std::string>> vars;  // Φ_i, declared order
    std::vector<Formula> goals;                  // γ_i

    std::size_t players() const { return vars.size(); }
    std::vector<std::string> all_vars() const;
    // Sorted copy of Φ_i: the order used to number pure strategies.
    std::vector<std::string> strategy_vars(std::size_t player) const;
};

void validate_game(const BooleanGame& g);
BooleanGame parse_game(const std::string& text);
std::string render_game(const BooleanGame& g);

Rational utility_pure(const BooleanGame& g, const Assignment& full, std::size_t player);

// Pure strategy number s of a player, read against strategy_vars(): the first
// (smallest) name is the most significant bit, false < true.
Assignment strategy_assignment(const std::vector<std::string>& sorted_vars, std::uint64_t s);
std::uint64_t strategy_index(const std::vector<std::string>& sorted_vars, const Assignment& a);

struct MixedStrategy {
    std::vector<std::pair<Assignment, Rational>> support;
};

struct MixedProfile {
    std::vector<MixedStrategy> players;
};

MixedStrategy pure_strategy(Assignment a);
MixedStrategy uniform_strategy(std::vector<Assignment> support);
// Independent product of two strategies over disjoint variables.
MixedStrategy product(const MixedStrategy& a, const MixedStrategy& b);

void validate_profile(const BooleanGame& g, const MixedProfile& p);
Rational expected_utility(const BooleanGame& g, const MixedProfile& p, std::size_t player);

std::map<Assignment, Rational> marginalize(const MixedProfile& p, const std::vector<std::string>& vars);

MixedProfile parse_profile(const BooleanGame& g, const std::string& json_text);
std::string render_profile(const MixedProfile& p);

Formula characteristic_formula(const Assignment& a);

// Fixes some variables to constants and drops them from their owners.
BooleanGame fix_vars(const BooleanGame& g, const Assignment& fixed);

struct NormalForm {
    std::vector<std::vector<std::string>> labels;     // per player, per strategy
    std::vector<std::vector<Rational>> payoffs;       // [player][flat cell]
    std::vector<std::vector<std::string>> var_order;  // set when expanded from a Boolean game

    std::size_t players() const { return labels.size(); }
    std::size_t extent(std::size_t player) const { return labels[player].size(); }
    std::size_t cells() const;
    std::size_t flat(const std::vector<std::size_t>& idx) const;
    const Rational& payoff(std::size_t player, const std::vector<std::size_t>& idx) const {
        return payoffs[player][flat(idx)];
    }
};

NormalForm to_normal_form(const BooleanGame& g, std::uint64_t cap = default_cap);
NormalForm parse_normal_form(const std::string& text);
std::string render_normal_form(const NormalForm& nf);
NormalForm make_bimatrix(std::vector<std::string> rows, std::vector<std::string> cols,
                         const std::vector<std::vector<Rational>>& a,
                         const std::vector<std::vector<Rational>>& b);

// Player 1's win/lose matrix of a two-player Boolean game, row-major over
// (player 1 strategy, player 2 strategy).
std::vector<std::uint8_t> win_matrix(const BooleanGame& g, std::size_t player, std::uint64_t cap = default_cap);

struct Constituent {
    BooleanGame game;
    std::string ns;
};

// Renames every constituent variable x to "ns.x", gives constituent c's role r
// to outer player player_map[c][r], adds the fresh variables and builds the
// outer goals from the renamed constituent goals (indexed [c][r]).
BooleanGame compose_disjoint(
    const std::vector<Constituent>& parts, const std::vector<std::vector<std::size_t>>& player_map,
    const std::vector<std::vector<std::string>>& fresh,
    const std::function<std::vector<Formula>(const std::vector<std::vector<Formula>>&)>& goal_builder);

std::string prefixed(const std::string& ns, const std::string& name);

// Evaluates goals of one game over dense value arrays.
class GameEvaluator {
public:
    explicit GameEvaluator(const BooleanGame& g);

    int slot(const std::string& v) const;
    std::size_t slots() const { return index_.size(); }
    const std::map<std::string, int>& index() const { return index_; }
    bool wins(std::size_t player, const std::uint8_t* values) const { return goals_[player](values); }
    void load(const Assignment& a, std::vector<std::uint8_t>& values) const;

private:
    std::map<std::string, int> index_;
    std::vector<CompiledFormula> goals_;
};

} // namespace bg
