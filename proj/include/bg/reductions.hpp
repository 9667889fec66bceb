#pragma once

#include "bg/gadgets.hpp"
#include "bg/game.hpp"
#include "bg/solver.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bg {

// ---------------------------------------------------------------- machines

enum class Symbol : std::uint8_t { zero, one, blank };
enum class Move : std::uint8_t { left, right, stay };

char symbol_char(Symbol s);
Symbol symbol_from(char c);

struct Transition {
    std::string from;
    Symbol read = Symbol::blank;
    Symbol write = Symbol::blank;
    Move move = Move::left;
    std::string to;
};

// The accepting state has no listed transitions; its "do nothing" rule is implicit.
struct TuringMachine {
    std::vector<std::string> states;
    std::string start, accept;
    std::vector<Transition> transitions;

    int state_index(const std::string& name) const;
};

void validate_machine(const TuringMachine& m);
TuringMachine parse_machine(const std::string& json_text);
std::string render_machine(const TuringMachine& m);
std::vector<Symbol> parse_word(const std::string& w);

// A rule with state indices; do-nothing rules have Move::stay.
struct Rule {
    int from = 0;
    Symbol read = Symbol::blank;
    Symbol write = Symbol::blank;
    Move move = Move::left;
    int to = 0;
};
std::vector<Rule> machine_rules(const TuringMachine& m);
std::string describe_rule(const TuringMachine& m, const Rule& r);

struct Cell {
    // left: the head is somewhere to the left of this cell; right: to the right;
    // here: the head is on this cell in the given state
    enum Head : std::uint8_t { left, right, here };
    Symbol content = Symbol::blank;
    Head head = left;
    int state = -1;

    bool operator==(const Cell&) const = default;
    auto operator<=>(const Cell&) const = default;
};

using RunTable = std::vector<std::vector<Cell>>;

struct TableSpec {
    std::uint64_t K = 0;
    int k = 0;
    std::uint64_t W = 0;  // 2^k, rows and columns of the table
};
inline constexpr int max_table_bits = 20;
TableSpec table_spec(std::uint64_t K);

// One accepting run as a steps x width table whose row accept_row holds the
// accepting state at cell 0; later rows repeat via the do-nothing rule.
std::optional<RunTable> simulate_tm(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t steps,
                                    std::uint64_t width, std::uint64_t accept_row,
                                    std::uint64_t cap_nodes = std::uint64_t{1} << 22);

// ---------------------------------------------------------------- squares

// cells: top-left (time, tape), top-right (time, tape+1), bottom-left
// (time+1, tape), bottom-right (time+1, tape+1), all mod W
struct Square {
    std::array<Cell, 4> cells;
    std::uint64_t time = 0, tape = 0;
};

Square square_at(const RunTable& t, std::uint64_t time, std::uint64_t tape);

// Bit r-1 set when requirement r (1..5) holds.
unsigned square_requirements(const Square& s, const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K);
bool square_oracle(const Square& s, const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K);
// Requirement 5 for a square whose top row is not the last row.
bool rule_consistent(const Square& s, const TuringMachine& m, std::uint64_t W);

struct PositionClass {
    bool wrap = false;  // tape = W-1, the right column is column 0
    int dl = 0, dr = 0; // distances of the left column to the edges, capped at 2
    std::uint64_t representative = 0;
    std::vector<std::array<Cell, 4>> patterns;
};

struct RuleSquares {
    Rule rule;
    std::vector<PositionClass> classes;
    std::size_t size() const;
};

std::vector<PositionClass> position_classes(std::uint64_t W);
std::vector<RuleSquares> admissible_squares(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K);

// ---------------------------------------------------------------- games

struct ReductionOutput {
    BooleanGame game;
    PayoffVector payoff;
    std::map<std::string, std::vector<std::string>> var_index;
    TableSpec spec;
    TuringMachine machine;
    std::vector<Symbol> input;
    bool forall = false;
    GadgetBundle side;
    Formula check;  // Require, or Illegal for the universal variant
};

// Cell variable prefixes of player 2's square, in Square::cells order.
inline const std::array<std::string, 4> square_prefixes{"", "s", "n", "ns"};

ReductionOutput build_guarantee_game(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K);
ReductionOutput build_forall_guarantee_game(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K);

Rational guarantee_payoff(int k);
Rational forall_delta(int k);
Rational forall_guarantee_payoff(int k);

// Independent ground truth for player 2's check formula on an assignment of
// her square variables: shape, well-formedness, then the square oracle.
struct DecodedSquare {
    bool shape = false;
    bool well_formed = false;
    Square square;
};
DecodedSquare decode_square(const ReductionOutput& ro, const Assignment& a);
bool check_oracle(const ReductionOutput& ro, const Assignment& a);

// Player 2 assignment describing the square of t at (time, tape), gadget
// variables untouched.
Assignment square_assignment(const ReductionOutput& ro, const Square& s);
Assignment entry_assignment(const ReductionOutput& ro, const Cell& c, std::uint64_t time, std::uint64_t tape);

MixedProfile witness_profile(const ReductionOutput& ro, const RunTable& t);
// Player 2's marginal weight on each square position, [time][tape].
std::vector<std::vector<Rational>> square_position_weights(const ReductionOutput& ro, const MixedProfile& p);

// c_{i,j} = x_{i,j} + (x_{i-1,j} + x_{i,j-1} + x_{i-1,j-1}) / 4, indices mod m
std::vector<std::vector<Rational>> cover_weights(const std::vector<std::vector<Rational>>& x);
std::vector<std::vector<Integer>> cover_matrix(int m);
Integer determinant(std::vector<std::vector<Integer>> a);
bool cover_matrix_check(int m);

// ---------------------------------------------------------------- transforms

enum class TransformKind { unique_nash, forall_nash_sat, irrational };

struct Transformed {
    BooleanGame game;
    std::optional<Formula> phi;
    std::vector<GadgetBundle> gadgets;
};

// v holds (v1, v2) for unique_nash and forall_nash_sat, a single value for irrational.
Transformed transform_game(TransformKind kind, const BooleanGame& g, const std::vector<Rational>& v,
                           const std::string& ns);

struct WrappedGuarantee {
    ReductionOutput base;
    GadgetBundle half;
    BooleanGame game;
    Formula phi;
};
WrappedGuarantee transform_exists_nash_sat(const TuringMachine& m, const std::vector<Symbol>& w, std::uint64_t K);

// Normal-form route for irrational equilibria: player 1's strategies are
// duplicated and joined by a safe strategy a worth v, player 2 gains b.
NormalForm duplicate_construction(const NormalForm& g, const Rational& v);

} // namespace bg
