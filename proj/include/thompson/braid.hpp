#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thompson/element.hpp"

namespace thompson {

// Artin word on `strands` strands; letter ±k crosses positions k-1 and k.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    static BraidWord parse(std::string_view text, int strands);
    std::string to_string() const;  // "1 -2 1"
    std::size_t size() const noexcept { return letters.size(); }
    friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

BraidWord operator*(const BraidWord& a, const BraidWord& b);
BraidWord inverse(const BraidWord& b);
BraidWord free_reduce(const BraidWord& b);

// perm[i] = bottom position of the strand starting at top position i.
Perm permutation_of(const BraidWord& b);
bool is_pure(const BraidWord& b);

// Left-greedy Garside form Δ^r · A1 ⋯ Ak, factors stored as permutations.
struct GarsideNF {
    int strands = 1;
    int delta_power = 0;
    std::vector<Perm> factors;

    std::string to_string() const;
    friend bool operator==(const GarsideNF&, const GarsideNF&) = default;
};
GarsideNF garside_nf(const BraidWord& b);
bool braid_equal(const BraidWord& a, const BraidWord& b);
bool is_trivial(const BraidWord& b);
// Δ^r followed by each factor as a positive permutation braid.
BraidWord word_of(const GarsideNF& nf);
// The shorter of the free reduction and the normal-form word.
BraidWord shorten(const BraidWord& b);

// Strand at top position i becomes widths[i] parallel strands.
BraidWord cable(const BraidWord& b, const std::vector<int>& widths);
// Removes the strand starting at top position s.
BraidWord delete_strand(const BraidWord& b, int s);
// Largest number of letters crossing one fixed pair of strands.
int max_pair_crossings(const BraidWord& b);

}  // namespace thompson
