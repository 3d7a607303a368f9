#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invlim/map_family.hpp"

namespace invlim {

// Eventual behaviour of a backward-branch itinerary.
enum class Tail : uint8_t { AllZeros, AllOnes, Alt10, Alt01 };

// Binary itinerary of inverse-branch choices: a finite prefix followed by one
// of four eventually-periodic tails.  Canonical form keeps the shortest
// prefix (tail symbols are never duplicated at the prefix end; stripping a
// symbol off an alternating tail swaps Alt10 <-> Alt01).
class TypeCode {
public:
    TypeCode() : tail_(Tail::AllOnes) {}  // T_0 = (1,1,1,...)
    TypeCode(std::string prefix, Tail tail);

    int at(std::size_t n) const;
    const std::string& prefix() const { return prefix_; }
    Tail tail() const { return tail_; }

    TypeCode prepend(int bit) const;
    TypeCode drop_first() const;

    // Text notation: "<prefix>.<tail>", e.g. "1010.1^inf", ".0^inf", ".(10)^inf".
    std::string text() const;
    static TypeCode parse(const std::string& text);

    bool operator==(const TypeCode&) const = default;
    auto operator<=>(const TypeCode&) const = default;

    // Named families.
    static TypeCode t_n(int n);                  // 0^n then ones
    static TypeCode t_infinity();                // all zeros
    static TypeCode t_upper(int i, int n, int k);  // (10)^k / (01)^k, zeros to length n, then ones
    static TypeCode t_lower(int i, int k);         // (10)^k / (01)^k then zeros
    static TypeCode t_lower_infinity(int i);       // alternating, starting with 1-i... see below

private:
    std::string prefix_;  // '0'/'1' characters
    Tail tail_;
};

TypeCode canonicalize(const std::string& prefix, Tail tail);

// Admissibility for the map's dynamical case.  When rho >= rho1 only the
// all-zero-prefix codes with AllOnes tail (and the all-zeros code) occur.
// When rho < rho1 a code is admissible iff
//   (i)  two consecutive ones force ones forever, and
//   (ii) two consecutive zeros followed by a one force ones from that one on.
bool is_admissible(const CaseLabel& label, const TypeCode& t);

// Line-family enumeration (codes with eventually-one tails, plus T_0), in the
// order in which their images chain leftward from 1.  For rho >= rho1 this is
// T_0, T_1, ...; for rho < rho1 it is the cluster order with clusters of
// 4n+2 elements.  `bound` counts codes.
std::vector<TypeCode> enumerate_types(const CaseLabel& label, int bound);

// Arc-family enumeration for rho < rho1: T^1_k (descending k), T_infinity,
// T^0_k (ascending k); `per_side` counts k on each side.
std::vector<TypeCode> enumerate_arc_types(int per_side);

// Index n such that t == T_n, when the code has an all-zero prefix and
// AllOnes tail.
std::optional<int> t_n_index(const TypeCode& t);

// (i, k) such that t == T^i_k (alternating prefix, AllZeros tail); k = 0
// encodes T_infinity.
std::optional<std::pair<int, int>> lower_index(const TypeCode& t);

}  // namespace invlim
