#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/forest.hpp"

namespace thompson {

enum class GroupTag { F, T, V };

std::string_view group_letter(GroupTag tag);

using Perm = std::vector<std::uint32_t>;
using Rational = boost::multiprecision::cpp_rational;

bool is_identity_perm(const Perm& p);
bool is_cyclic_perm(const Perm& p);
Perm inverse_perm(const Perm& p);

// Tree pair (source, perm, target): source leaf i is sent affinely onto
// target leaf perm[i].
class Element {
public:
    GroupTag group() const noexcept { return group_; }
    int n() const noexcept { return source_.n(); }
    const NaryTree& source() const noexcept { return source_; }
    const NaryTree& target() const noexcept { return target_; }
    const Perm& perm() const noexcept { return perm_; }
    bool reduced() const noexcept { return reduced_; }
    std::size_t leaf_count() const noexcept { return perm_.size(); }
    bool is_identity() const;

    // Structural equality of the stored pairs (compare reduced forms for group equality).
    friend bool operator==(const Element& a, const Element& b) {
        return a.group_ == b.group_ && a.source_ == b.source_ && a.perm_ == b.perm_ && a.target_ == b.target_;
    }

private:
    friend struct ElementAccess;
    Element(GroupTag g, NaryTree s, Perm p, NaryTree t, bool red)
        : group_(g), source_(std::move(s)), target_(std::move(t)), perm_(std::move(p)), reduced_(red) {}

    GroupTag group_;
    NaryTree source_;
    NaryTree target_;
    Perm perm_;
    bool reduced_;
};

Element make_element(GroupTag group, NaryTree source, Perm perm, NaryTree target);
Element identity_element(GroupTag group, Arity n);

Element reduce(const Element& g);
// Deletes one reducible caret pair at a time, chosen uniformly at random.
Element reduce_random(const Element& g, std::mt19937_64& rng);
// Removable source carets (first-leaf indices) of the current pair.
std::vector<std::size_t> reducible_carets(const Element& g);

// Left to right: apply g, then h.
Element compose(const Element& g, const Element& h);
Element invert(const Element& g);
Element power(const Element& g, long long e);
// Same group element with a caret added under source leaf i.
Element expand(const Element& g, std::size_t source_leaf);

std::size_t leaf_count_N(const Element& g);

struct Branch {
    Address src;
    Address dst;
    friend bool operator==(const Branch&, const Branch&) = default;
};
std::vector<Branch> branches(const Element& g);

// g acting inside the cylinder at `at`, trivially elsewhere.
Element attach_element(const Element& g, const Address& at);
// General form: carrier tree t, g placed under its leaf `at`.
Element attach_element(const Element& g, const NaryTree& carrier, const Address& at);

struct Support {
    std::vector<Address> intervals;
    bool empty() const noexcept { return intervals.empty(); }
};
// Minimal prefixes covering all moved points of the reduced pair.
Support support(const Element& g);

// PL map of the pair, reading each branch from the target leaf back to its
// source leaf; apply(compose(g, h), x) = apply(g, apply(h, x)).
Rational apply(const Element& g, const Rational& x);
// Left endpoint 0.u of the cylinder at address u.
Rational cylinder_left(const Address& u, int n);

Element generator_x(GroupTag group, Arity n, int k);
Element generator_c(GroupTag group, Arity n, int k);
Element generator_pi(GroupTag group, Arity n);
// Names: "x<k>", "c<k>", "pi0".
Element generator(GroupTag group, Arity n, std::string_view name);

std::string to_string(const Element& g);
Element parse_element(std::string_view text);

// Compact canonical binary key for hashing reduced elements.
std::string key(const Element& g);

NaryTree random_tree(Arity n, int carets, std::mt19937_64& rng);
Element random_element(GroupTag group, Arity n, int carets, std::mt19937_64& rng);

}  // namespace thompson
