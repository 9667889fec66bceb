#pragma once

#include "bg/game.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bg {

struct GadgetBundle {
    BooleanGame game;
    std::optional<MixedProfile> equilibrium;
    bool unique = false;  // whether the bundled equilibrium is the only one
    Rational value;       // value for player 1 (conditional on ū for parametric games)
    std::map<std::string, std::vector<std::string>> role_vars;
};

// Bit width used for 𝔊(a/b).
int gadget_width(const Rational& v);

GadgetBundle fixed_value_game(const Rational& v, const std::string& ns);
GadgetBundle parametric_value_game(const std::string& ns, int n);
GadgetBundle split_opponent_game(const std::string& ns, int n);

// Equilibrium of 𝒢(ū) or 𝒢′(ū) once ū is fixed to u: player 1 uniform over
// the 2^n intervals of length u, the opponents uniform.
MixedProfile parametric_equilibrium(const GadgetBundle& b, std::uint64_t u);
Assignment fix_parameter(const GadgetBundle& b, std::uint64_t u);

enum class Combine { sum, product, complement };
GadgetBundle combine_games(Combine kind, const GadgetBundle& g1, const GadgetBundle* g2, const std::string& ns);

Rational g_payoff(std::uint64_t r, bool a_sat, bool b_sat, int k);

std::string role_vars_json(const GadgetBundle& b);

} // namespace bg
