#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thompson {

inline constexpr int kMaxDepth = 64;

// Branching degree of a tree; always at least 2.
class Arity {
public:
    explicit Arity(int n);
    int value() const noexcept { return n_; }
    friend bool operator==(Arity, Arity) = default;

private:
    int n_;
};

// A vertex of the infinite n-ary tree, named by its digit path from the root.
struct Address {
    std::vector<std::uint8_t> digits;

    Address() = default;
    explicit Address(std::vector<std::uint8_t> d) : digits(std::move(d)) {}

    // "ε", "", or "e" denote the root; otherwise a string of decimal digits.
    static Address parse(std::string_view text);
    std::string to_string() const;

    std::size_t size() const noexcept { return digits.size(); }
    bool empty() const noexcept { return digits.empty(); }
    bool is_prefix_of(const Address& other) const;
    Address child(int d) const;
    Address concat(const Address& tail) const;

    friend auto operator<=>(const Address&, const Address&) = default;
};

// Finite rooted n-ary tree. Stored as the preorder sequence of node kinds
// (1 = caret, 0 = leaf); the encoding is canonical so equality is structural.
class NaryTree {
public:
    explicit NaryTree(Arity n);  // root only

    static NaryTree from_preorder(Arity n, std::vector<std::uint8_t> preorder);
    // Completion of a prefix-closed set: every listed node with a listed child
    // gets all n children.
    static NaryTree from_addresses(Arity n, const std::vector<Address>& nodes);
    // Inverse of leaves(): fails with NotMaximal unless `leaves` is exactly the
    // leaf set of some tree.
    static NaryTree from_leaves(Arity n, std::vector<Address> leaves);
    static NaryTree all_right(int carets, Arity n);
    static NaryTree parse(std::string_view text, Arity n);

    std::string to_string() const;

    Arity arity() const noexcept { return Arity(n_); }
    int n() const noexcept { return n_; }
    const std::vector<std::uint8_t>& preorder() const noexcept { return bits_; }

    std::size_t caret_count() const noexcept;
    std::size_t leaf_count() const noexcept;
    std::vector<Address> leaves() const;
    std::vector<int> leaf_depths() const;
    std::vector<Address> internal_nodes() const;
    int depth() const;

    bool has_node(const Address& a) const;
    std::optional<std::size_t> leaf_index(const Address& a) const;

    // First-leaf indices of carets whose n children are all leaves.
    std::vector<std::size_t> exposed_carets() const;
    // Collapse the exposed carets whose first-leaf index is flagged.
    NaryTree contract(const std::vector<bool>& first_leaf_flags) const;
    // Replace leaf i by subs[i].
    NaryTree graft(const std::vector<NaryTree>& subs) const;
    // For a tree `expanded` containing *this, the subtree of `expanded`
    // hanging at each leaf of *this.
    std::vector<NaryTree> residuals(const NaryTree& expanded) const;
    // Smallest tree containing both.
    NaryTree join(const NaryTree& other) const;
    bool is_prefix_of(const NaryTree& other) const;

    friend bool operator==(const NaryTree&, const NaryTree&) = default;
    friend auto operator<=>(const NaryTree&, const NaryTree&) = default;

private:
    NaryTree(int n, std::vector<std::uint8_t> bits) : n_(n), bits_(std::move(bits)) {}
    void validate() const;

    int n_;
    std::vector<std::uint8_t> bits_;
};

std::vector<Address> leaves(const NaryTree& t);
std::size_t caret_count(const NaryTree& t);
NaryTree all_right_tree(int carets, Arity n);
NaryTree attach(const NaryTree& t, const Address& at, const NaryTree& sub);
int branch_length(const NaryTree& t, const Address& leaf);

struct Expansion {
    NaryTree tree;
    // For each leaf of `tree`, the index of the leaf of the first (second)
    // input it descends from.
    std::vector<std::size_t> from_a;
    std::vector<std::size_t> from_b;
};
Expansion common_expansion(const NaryTree& a, const NaryTree& b);

// Minimal tree having `leaf` as a leaf: a full caret at every proper prefix.
NaryTree path_tree(const Address& leaf, Arity n);

}  // namespace thompson
