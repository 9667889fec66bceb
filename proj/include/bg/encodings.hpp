#pragma once

#include "bg/formula.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bg {

struct BitTerm {
    enum Kind : std::uint8_t { variable, one, zero } kind = zero;
    std::string name;

    static BitTerm of(const std::string& v) { return {variable, v}; }
    Formula formula() const;
};

// Most significant term first.
using BitSeq = std::vector<BitTerm>;

BitSeq bits(const std::vector<std::string>& names);
// Names prefix1 .. prefixW.
BitSeq bits(const std::string& prefix, int width);
BitSeq constant_bits(std::uint64_t value, int width);
std::vector<std::string> var_names(const BitSeq& s);

std::uint64_t decode_bits(const BitSeq& s, const Assignment& a);

enum class Comparison { equal, succ, less, less_eq };
enum class Arithmetic { add, sub };
enum class Cardinality { one_of, none_of };

Formula build_comparison(Comparison kind, const BitSeq& p, const BitSeq& q);
Formula build_arithmetic(Arithmetic kind, const BitSeq& p, const BitSeq& q, const BitSeq& r);
Formula build_cardinality(Cardinality kind, const std::vector<std::string>& vars);

inline Formula equal(const BitSeq& p, const BitSeq& q) { return build_comparison(Comparison::equal, p, q); }
inline Formula succ(const BitSeq& p, const BitSeq& q) { return build_comparison(Comparison::succ, p, q); }
inline Formula less(const BitSeq& p, const BitSeq& q) { return build_comparison(Comparison::less, p, q); }
inline Formula less_eq(const BitSeq& p, const BitSeq& q) { return build_comparison(Comparison::less_eq, p, q); }
inline Formula add(const BitSeq& p, const BitSeq& q, const BitSeq& r) { return build_arithmetic(Arithmetic::add, p, q, r); }
inline Formula sub(const BitSeq& p, const BitSeq& q, const BitSeq& r) { return build_arithmetic(Arithmetic::sub, p, q, r); }

// R * 2^shift written on `width` terms (R must fit).
BitSeq shifted(const BitSeq& r, int shift, int width);

// summands[j] holds R_j * R * 2^(k-1-j) (j from 0, most significant bit of
// R first); partial has k+1 entries, partial[0] = 0 and partial[k] = Rsq.
Formula build_square(const BitSeq& r, const BitSeq& rsq, const std::vector<BitSeq>& summands,
                     const std::vector<BitSeq>& partial);

struct SquareWitness {
    std::vector<std::uint64_t> summands;
    std::vector<std::uint64_t> partial;
};

// The shifted-summand schedule for R on k bits.
SquareWitness square_schedule(std::uint64_t r, int k);

} // namespace bg
