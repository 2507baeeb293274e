#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thompson/element.hpp"

namespace thompson {

enum class Family { F, T, V, BV, BF };

struct GroupSpec {
    Family family = Family::F;
    int n = 2;

    // "F2", "F3", "T2", "V2", "BV", "BF" (any arity digit after F/T/V).
    static GroupSpec parse(std::string_view text);
    std::string to_string() const;
    bool braided() const noexcept { return family == Family::BV || family == Family::BF; }
    GroupTag tag() const;  // F/T/V families only
    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

enum class GenKind { X, C, Pi, Sigma, Tau, Alpha, Beta };

struct GeneratorToken {
    GenKind kind = GenKind::X;
    int i = 0;  // index (first index for alpha/beta)
    int j = 0;  // second index for alpha/beta
    int exponent = 1;

    // Name without exponent: x3, c0, pi0, s1, t2, a1_3, b2_4.
    std::string name() const;
    std::string to_string() const;
    bool same_generator(const GeneratorToken& o) const { return kind == o.kind && i == o.i && j == o.j; }
    friend bool operator==(const GeneratorToken&, const GeneratorToken&) = default;
};

bool token_in_scope(const GeneratorToken& t, const GroupSpec& g);

struct GroupWord {
    GroupSpec group;
    std::vector<GeneratorToken> tokens;

    static GroupWord parse(std::string_view text, GroupSpec group);
    std::string to_string() const;
    long long length() const;  // sum of |exponent|
    GroupWord inverse() const;
    GroupWord& append(const GroupWord& w);
    GroupWord& append(GeneratorToken t);
    bool empty() const noexcept { return tokens.empty(); }
    friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

GroupWord operator*(GroupWord a, const GroupWord& b);
// Merges adjacent powers of the same generator and drops zero exponents.
GroupWord free_reduce(const GroupWord& w);
// Single generator power, e.g. x(0, -3).
GeneratorToken x_token(int k, int e = 1);
GroupWord x_power(GroupSpec g, int k, long long e);

// Generator element for a token of an F/T/V group (exponent ignored).
Element token_element(const GeneratorToken& t, const GroupSpec& g);
Element evaluate(const GroupWord& w);

struct PcqForm {
    GroupWord p;     // positive, strictly increasing x indices
    Element middle;  // (R, σ, R)
    GroupWord middle_word;  // c_{i-1}^j for F/T middles; empty for V
    GroupWord q;     // negative, strictly decreasing x indices
    std::string middle_text() const;  // "id", "c3^2" or "[perm]"
};

// Positive x-word for (t, id, all_right) in F_n.
GroupWord positive_word(const NaryTree& t);
PcqForm pcq_factorize(const Element& g);
Element evaluate(const PcqForm& f);
std::string to_string(const PcqForm& f);
// Word over the infinite set for g when its middle is a cyclic shift.
GroupWord word_of(const Element& g);

// x_k (k ≥ n) and c_k (k ≥ 1) expressed over {x0..x_{n-1}, c0, pi0}.
GroupWord rewrite_to_finite(const GroupWord& w);

struct PrefixCode {
    int n = 2;
    std::vector<Address> codewords;
};
PrefixCode prefix_code_of(const NaryTree& t);
NaryTree tree_of(const PrefixCode& code);

}  // namespace thompson
