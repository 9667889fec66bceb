#pragma once

#include "bg/game.hpp"
#include "bg/lp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bg {

struct SolverOptions {
    std::uint64_t cap_cells = default_cap;
    std::uint64_t cap_supports = std::uint64_t{1} << 20;
    std::uint64_t cap_deviations = std::uint64_t{1} << 22;
    bool prune = true;
    std::optional<std::uint64_t> sample;  // random deviations per player when enumeration exceeds the cap
    std::uint64_t seed = 1;
};

using Weights = std::vector<std::vector<Rational>>;  // [player][strategy]
using PayoffVector = std::vector<Rational>;

struct SupportPair {
    std::vector<std::size_t> x, y;
};

struct EquilibriumWitness {
    Weights weights;
    PayoffVector payoffs;
};

struct ZeroSumResult {
    Rational value;                // player 1's payoff
    std::vector<Rational> maxmin;  // player 1
    std::vector<Rational> minmax;  // player 2
};

void require_constant_sum(const NormalForm& nf);
ZeroSumResult zero_sum_value(const NormalForm& nf);
ZeroSumResult zero_sum_value(const BooleanGame& g, std::uint64_t cap = default_cap);
bool dvalue(const BooleanGame& g, const Rational& threshold, std::uint64_t cap = default_cap);

std::optional<EquilibriumWitness> equilibrium_for_support(const NormalForm& nf, const SupportPair& sp,
                                                          const std::optional<PayoffVector>& bounds = {});

enum class SupportClass { none, unique, continuum };
SupportClass classify_support(const NormalForm& nf, const SupportPair& sp);

// Calls f on every support pair in search order until it returns true.
void for_each_support(std::size_t n1, std::size_t n2, const std::function<bool(const SupportPair&)>& f);

std::optional<EquilibriumWitness> exists_guarantee_nash(const NormalForm& nf, const PayoffVector& v,
                                                        const SolverOptions& opt = {});
bool forall_guarantee_nash(const NormalForm& nf, const PayoffVector& v, const SolverOptions& opt = {});
std::optional<EquilibriumWitness> find_nash(const NormalForm& nf, const SolverOptions& opt = {});
bool unique_nash(const NormalForm& nf, const SolverOptions& opt = {});

enum class SatMode { exists, forall };
bool nash_sat(const BooleanGame& g, const Formula& phi, SatMode mode, const SolverOptions& opt = {});

// Expected payoff of every player under independent weights.
PayoffVector expected_payoffs(const NormalForm& nf, const Weights& w);
bool is_nash(const NormalForm& nf, const Weights& w);

struct NashCheck {
    bool holds = true;
    bool sampled = false;
    std::vector<std::uint64_t> checked;  // deviations examined per player
    std::optional<std::pair<std::size_t, Assignment>> improvement;
};
NashCheck check_nash(const BooleanGame& g, const MixedProfile& p, const SolverOptions& opt = {});
// Deviations of one player only.
NashCheck check_deviations(const BooleanGame& g, const MixedProfile& p, std::size_t player,
                           const SolverOptions& opt = {});

std::vector<std::vector<std::size_t>> pure_equilibria(const NormalForm& nf);
std::vector<Assignment> pure_equilibria(const BooleanGame& g, std::uint64_t cap = default_cap);

bool irrational_nash(const NormalForm& nf, bool zero_sum_fast_path, const SolverOptions& opt = {});

// Conversions between normal-form weights and Boolean profiles (needs var_order).
MixedProfile to_profile(const NormalForm& nf, const Weights& w);
Weights to_weights(const NormalForm& nf, const MixedProfile& p);

// Iterated strict dominance for two-player games; kept[i] lists the original
// indices of player i's surviving strategies.
struct Pruned {
    NormalForm nf;
    std::vector<std::vector<std::size_t>> kept;
};
Pruned prune_dominated(const NormalForm& nf, bool mixed = true);
Weights lift_weights(const Pruned& p, const Weights& w, const NormalForm& original);

} // namespace bg
