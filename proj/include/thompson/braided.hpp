#pragma once

#include <string>
#include <string_view>

#include "thompson/braid.hpp"
#include "thompson/words.hpp"

namespace thompson {

// Tree-braid-tree diagram over binary trees; the strand starting under
// source leaf i ends under target leaf permutation_of(braid)[i].
class BraidedElement {
public:
    Family group() const noexcept { return group_; }
    const NaryTree& source() const noexcept { return source_; }
    const NaryTree& target() const noexcept { return target_; }
    const BraidWord& braid() const noexcept { return braid_; }
    std::size_t leaf_count() const noexcept { return source_.leaf_count(); }

    // Structural equality of the stored diagrams.
    friend bool operator==(const BraidedElement&, const BraidedElement&) = default;

private:
    friend struct BraidedAccess;
    BraidedElement(Family g, NaryTree s, BraidWord b, NaryTree t)
        : group_(g), source_(std::move(s)), target_(std::move(t)), braid_(std::move(b)) {}

    Family group_;
    NaryTree source_;
    NaryTree target_;
    BraidWord braid_;
};

BraidedElement make_braided(Family group, NaryTree source, BraidWord braid, NaryTree target);
BraidedElement identity_braided(Family group);
// Any F_2 element seen as a diagram with the trivial braid.
BraidedElement from_element(Family group, const Element& g);

BraidedElement reduce_bv(const BraidedElement& g);
BraidedElement compose_bv(const BraidedElement& g, const BraidedElement& h);
BraidedElement invert_bv(const BraidedElement& g);
// Adds a caret under source leaf i and the matching cable in the braid.
BraidedElement expand_bv(const BraidedElement& g, std::size_t source_leaf);
// Same group element: reduced trees agree and braids agree in Garside form.
bool equal_bv(const BraidedElement& a, const BraidedElement& b);
BraidedElement with_group(const BraidedElement& g, Family group);

std::size_t leaf_count_N(const BraidedElement& g);
std::size_t crossing_count_K(const BraidedElement& g);
int max_pair_crossings(const BraidedElement& g);

// x_k from F_2; σ_k = (R_{k+1}, crossing of leaves k-1 and k, R_{k+1});
// τ_k = (R_k, crossing of the last two leaves, R_k).
BraidedElement bv_generator(Family group, const GeneratorToken& t);

GroupWord expand_alpha(int i, int j);
GroupWord expand_beta(int i, int j);
// Replaces Σ_BF tokens by σ/τ words; other tokens are kept.
GroupWord expand_bf_tokens(const GroupWord& w);
BraidedElement evaluate_braided(const GroupWord& w);
// σ_k and τ_k (k ≥ 2) and x_k (k ≥ 2) rewritten over {x0, x1, s1, t1}.
GroupWord rewrite_bv_to_finite(const GroupWord& w);

struct BlockForm {
    GroupWord w1;      // positive x-word
    GroupWord w2;      // over σ_1..σ_{m-2}, τ_{m-1}
    GroupWord w3_inv;  // negative x-word
    int strands = 1;
    GroupWord word() const;
};
BlockForm block_form(const BraidedElement& g);
std::string to_string(const BlockForm& b);

std::string to_string(const BraidedElement& g);
BraidedElement parse_braided(std::string_view text);
std::string key_bv(const BraidedElement& g);

BraidedElement random_braided(Family group, int carets, int letters, std::mt19937_64& rng);

struct BraidedOps {
    using Value = BraidedElement;
    static BraidedElement identity(const GroupSpec& g) { return identity_braided(g.family); }
    static BraidedElement generator(const GeneratorToken& t, const GroupSpec& g);
    static BraidedElement mul(const BraidedElement& a, const BraidedElement& b) { return compose_bv(a, b); }
    static std::string key(const BraidedElement& e) { return key_bv(e); }
};

}  // namespace thompson
