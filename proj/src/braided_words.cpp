#include <algorithm>
#include <cctype>

#include "thompson/braided.hpp"
#include "thompson/error.hpp"

namespace thompson {

BraidedElement bv_generator(Family group, const GeneratorToken& t) {
    const Arity two(2);
    switch (t.kind) {
        case GenKind::X: return from_element(group, generator_x(GroupTag::F, two, t.i));
        case GenKind::Sigma:
        case GenKind::Tau: {
            if (t.i < 1) throw Error(ErrorKind::NameOutOfScope, "braid generators start at index 1");
            const int carets = t.kind == GenKind::Sigma ? t.i + 1 : t.i;
            NaryTree r = NaryTree::all_right(carets, two);
            BraidWord b{carets + 1, {t.i}};
            if (group == Family::BF) throw Error(ErrorKind::NotPure, t.name() + " is not a pure diagram");
            return make_braided(group, r, b, r);
        }
        default: break;
    }
    throw Error(ErrorKind::NameOutOfScope, t.name() + " is not a braided generator");
}

GroupWord expand_alpha(int i, int j) {
    if (i < 1 || i >= j) throw Error(ErrorKind::IndexOrder, "alpha needs 1 <= i < j");
    GroupWord w{GroupSpec{Family::BV, 2}, {}};
    for (int k = i; k <= j - 2; ++k) w.tokens.push_back({GenKind::Sigma, k, 0, 1});
    w.tokens.push_back({GenKind::Sigma, j - 1, 0, 2});
    for (int k = j - 2; k >= i; --k) w.tokens.push_back({GenKind::Sigma, k, 0, -1});
    return w;
}

GroupWord expand_beta(int i, int j) {
    if (i < 1 || i >= j) throw Error(ErrorKind::IndexOrder, "beta needs 1 <= i < j");
    GroupWord w{GroupSpec{Family::BV, 2}, {}};
    for (int k = i; k <= j - 2; ++k) w.tokens.push_back({GenKind::Sigma, k, 0, 1});
    w.tokens.push_back({GenKind::Tau, j - 1, 0, 2});
    for (int k = j - 2; k >= i; --k) w.tokens.push_back({GenKind::Sigma, k, 0, -1});
    return w;
}

GroupWord expand_bf_tokens(const GroupWord& w) {
    GroupWord out{GroupSpec{Family::BV, 2}, {}};
    for (const auto& t : w.tokens) {
        if (t.kind != GenKind::Alpha && t.kind != GenKind::Beta) {
            out.tokens.push_back(t);
            continue;
        }
        GroupWord e = t.kind == GenKind::Alpha ? expand_alpha(t.i, t.j) : expand_beta(t.i, t.j);
        if (t.exponent < 0) e = e.inverse();
        for (int r = 0; r < std::abs(t.exponent); ++r) out.append(e);
    }
    return out;
}

BraidedElement BraidedOps::generator(const GeneratorToken& t, const GroupSpec& g) {
    GroupWord w{g, {t}};
    return evaluate_braided(w);
}

BraidedElement evaluate_braided(const GroupWord& w) {
    if (!w.group.braided()) throw Error(ErrorKind::TokenOutOfScope, "tree-pair word evaluated as a braided diagram");
    for (const auto& t : w.tokens)
        if (!token_in_scope(t, w.group))
            throw Error(ErrorKind::TokenOutOfScope, t.name() + " is not a generator of " + w.group.to_string());
    GroupWord flat = expand_bf_tokens(w);
    BraidedElement acc = identity_braided(Family::BV);
    for (const auto& t : flat.tokens) {
        BraidedElement gen = bv_generator(Family::BV, t);
        if (t.exponent < 0) gen = invert_bv(gen);
        for (int e = 0; e < std::abs(t.exponent); ++e) acc = compose_bv(acc, gen);
    }
    return w.group.family == Family::BF ? with_group(acc, Family::BF) : acc;
}

GroupWord rewrite_bv_to_finite(const GroupWord& w) {
    GroupWord out{w.group, {}};
    auto push = [&out](GeneratorToken t) { out.tokens.push_back(t); };
    const GeneratorToken s1{GenKind::Sigma, 1, 0, 1};
    const GeneratorToken s1inv{GenKind::Sigma, 1, 0, -1};
    for (const auto& t : w.tokens) {
        if ((t.kind != GenKind::Sigma && t.kind != GenKind::Tau) || t.i < 2) {
            push(t);
            continue;
        }
        // σ_2 = x0^-1 σ_1 x1 σ_1^-1, τ_2 = x0^-1 τ_1 σ_1^-1, then
        // σ_{k+1} = x0^-1 σ_k x0 and τ_{k+1} = x0^-1 τ_k x0.
        GroupWord base{w.group, {}};
        if (t.kind == GenKind::Sigma) {
            base.tokens = {x_token(0, -1), s1, x_token(1, 1), s1inv};
        } else {
            base.tokens = {x_token(0, -1), {GenKind::Tau, 1, 0, 1}, s1inv};
        }
        if (t.exponent < 0) base = base.inverse();
        push(x_token(0, -(t.i - 2)));
        for (int r = 0; r < std::abs(t.exponent); ++r) out.append(base);
        push(x_token(0, t.i - 2));
    }
    return rewrite_to_finite(free_reduce(out));
}

GroupWord BlockForm::word() const { return free_reduce(w1 * w2 * w3_inv); }

BlockForm block_form(const BraidedElement& g0) {
    BraidedElement g = reduce_bv(g0);
    const int m = g.braid().strands;
    BlockForm f;
    f.strands = m;
    f.w1 = positive_word(g.source());
    f.w3_inv = positive_word(g.target()).inverse();
    f.w1.group = f.w3_inv.group = GroupSpec{Family::BV, 2};
    f.w2 = GroupWord{GroupSpec{Family::BV, 2}, {}};
    for (int l : g.braid().letters) {
        const int k = std::abs(l);
        f.w2.tokens.push_back({k == m - 1 ? GenKind::Tau : GenKind::Sigma, k, 0, l > 0 ? 1 : -1});
    }
    f.w2 = free_reduce(f.w2);
    return f;
}

std::string to_string(const BlockForm& b) {
    auto part = [](const GroupWord& w) { return w.empty() ? std::string() : " " + w.to_string(); };
    return "w1:" + part(b.w1) + " ; w2:" + part(b.w2) + " ; w3^-1:" + part(b.w3_inv);
}

std::string to_string(const BraidedElement& g) {
    std::string s = g.group() == Family::BF ? "BF" : "BV";
    s += " | " + g.source().to_string() + " | b:";
    if (!g.braid().letters.empty()) s += " " + g.braid().to_string();
    return s + " | " + g.target().to_string();
}

BraidedElement parse_braided(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    Family fam;
    if (text.substr(pos, 2) == "BV") {
        fam = Family::BV;
    } else if (text.substr(pos, 2) == "BF") {
        fam = Family::BF;
    } else {
        throw ParseError(pos, "expected BV or BF");
    }
    std::vector<std::size_t> bars;
    for (std::size_t i = pos; i < text.size(); ++i)
        if (text[i] == '|') bars.push_back(i);
    if (bars.size() != 3) throw ParseError(bars.empty() ? text.size() : bars.back(), "expected three '|' separators");
    auto piece = [&](std::size_t a, std::size_t b) { return std::pair{a, text.substr(a, b - a)}; };
    auto tree = [&](std::size_t a, std::size_t b) {
        auto [off, t] = piece(a, b);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) {
            t.remove_prefix(1);
            ++off;
        }
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
        try {
            return NaryTree::parse(t, Arity(2));
        } catch (const ParseError& e) {
            throw ParseError(off + e.position(), "invalid tree");
        }
    };
    NaryTree src = tree(bars[0] + 1, bars[1]);
    NaryTree tgt = tree(bars[2] + 1, text.size());
    auto [off, mid] = piece(bars[1] + 1, bars[2]);
    std::size_t k = 0;
    while (k < mid.size() && std::isspace(static_cast<unsigned char>(mid[k]))) ++k;
    if (mid.substr(k, 2) != "b:") throw ParseError(off + k, "expected 'b:'");
    BraidWord b;
    try {
        b = BraidWord::parse(mid.substr(k + 2), static_cast<int>(src.leaf_count()));
    } catch (const ParseError& e) {
        throw ParseError(off + k + 2 + e.position(), "invalid braid word");
    }
    return make_braided(fam, std::move(src), std::move(b), std::move(tgt));
}

std::string key_bv(const BraidedElement& g) {
    BraidedElement r = reduce_bv(g);
    return r.source().to_string() + "|" + garside_nf(r.braid()).to_string() + "|" + r.target().to_string();
}

BraidedElement random_braided(Family group, int carets, int letters, std::mt19937_64& rng) {
    NaryTree s = random_tree(Arity(2), carets, rng);
    NaryTree t = random_tree(Arity(2), static_cast<int>(s.caret_count()), rng);
    const int m = static_cast<int>(s.leaf_count());
    BraidWord b{m, {}};
    if (m > 1) {
        std::uniform_int_distribution<int> pick(1, m - 1);
        for (int i = 0; i < letters; ++i) b.letters.push_back((rng() & 1) ? pick(rng) : -pick(rng));
    }
    if (group == Family::BF) {
        // Append the inverse permutation braid so the result is pure.
        Perm p = permutation_of(b);
        Perm at = inverse_perm(p);  // strand at each bottom position
        for (std::size_t i = 0; i < at.size(); ++i)
            for (std::size_t j = at.size() - 1; j > i; --j)
                if (at[j - 1] > at[j]) {
                    std::swap(at[j - 1], at[j]);
                    b.letters.push_back(static_cast<int>(j));
                }
    }
    return reduce_bv(make_braided(group, std::move(s), free_reduce(b), std::move(t)));
}

}  // namespace thompson
