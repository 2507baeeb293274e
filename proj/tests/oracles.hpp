#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thompson/braided.hpp"
#include "thompson/element.hpp"

namespace oracle {

// Freely reduced Artin words of length ≤ max_len grouped by union-find over
// relator insertions that stay within the length cap, then compared with
// garside_nf classes. Classes the cap leaves apart are settled by handle reduction.
struct BraidOracleReport {
    std::size_t words = 0;
    std::size_t rewrite_classes = 0;
    std::size_t nf_classes = 0;
    std::size_t handle_checks = 0;
    std::size_t disagreements = 0;
    std::string example;
};
BraidOracleReport braid_rewrite_oracle(int strands, int max_len);

// Dehornoy handle reduction; the word is trivial iff it reduces to the empty word.
bool handle_trivial(std::vector<int> w);
bool handle_equal(const std::vector<int>& a, const std::vector<int>& b);

// Pointwise equality of the PL maps on a fixed grid of n-adic points.
bool same_map(const thompson::Element& a, const thompson::Element& b, int depth = 6);

// All points k/n^depth of [0, 1).
std::vector<thompson::Rational> grid(int n, int depth);

// Random expansion of g at `steps` random source leaves.
thompson::Element random_expansion(const thompson::Element& g, int steps, std::mt19937_64& rng);

// Leaf count recomputed from the branch list alone.
std::size_t leaves_from_branches(const thompson::Element& g);

}  // namespace oracle
