#include "thompson/error.hpp"
#include "thompson/words.hpp"

namespace thompson {

namespace {

std::string join_words(const GroupWord& w) { return w.empty() ? "" : " " + w.to_string(); }

}  // namespace

GroupWord positive_word(const NaryTree& t) {
    const int n = t.n();
    GroupWord w{GroupSpec{Family::F, n}, {}};
    auto lv = t.leaves();
    // Exponent of x_k: trailing 0-edges above leaf k, not counting one
    // hanging directly off the right spine.
    for (std::size_t k = 0; k < lv.size(); ++k) {
        const auto& d = lv[k].digits;
        std::size_t e = 0;
        while (e < d.size() && d[d.size() - 1 - e] == 0) ++e;
        bool spine = true;
        for (std::size_t i = 0; i + e < d.size(); ++i) spine = spine && d[i] == n - 1;
        if (e > 0 && spine) --e;
        if (e > 0) w.tokens.push_back(x_token(static_cast<int>(k), static_cast<int>(e)));
    }
    return w;
}

std::string PcqForm::middle_text() const {
    const Perm& p = middle.perm();
    if (is_identity_perm(p)) return "id";
    if (!middle_word.empty()) return middle_word.to_string();
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    return s + "]";
}

PcqForm pcq_factorize(const Element& g0) {
    Element g = reduce(g0);
    GroupSpec spec{g.group() == GroupTag::F ? Family::F : g.group() == GroupTag::T ? Family::T : Family::V, g.n()};
    const auto carets = static_cast<int>(g.source().caret_count());
    NaryTree r = NaryTree::all_right(carets, Arity(g.n()));
    GroupWord p = positive_word(g.source());
    GroupWord q = positive_word(g.target()).inverse();
    p.group = spec;
    q.group = spec;
    Element mid = make_element(g.group(), r, g.perm(), r);
    GroupWord mw{spec, {}};
    if (!is_identity_perm(g.perm()) && is_cyclic_perm(g.perm()))
    {
        const auto m = static_cast<int>(g.perm().size());
        int j = static_cast<int>(g.perm()[0]);
        if (2 * j > m) j -= m;
        mw.tokens.push_back(GeneratorToken{GenKind::C, carets - 1, 0, j});
    }
    return PcqForm{p, mid, mw, q};
}

Element evaluate(const PcqForm& f) {
    return compose(compose(evaluate(f.p), reduce(f.middle)), evaluate(f.q));
}

std::string to_string(const PcqForm& f) {
    return "p:" + join_words(f.p) + " ; c: " + f.middle_text() + " ; q:" + join_words(f.q);
}

GroupWord word_of(const Element& g) {
    PcqForm f = pcq_factorize(g);
    if (!is_identity_perm(f.middle.perm()) && f.middle_word.empty())
        throw Error(ErrorKind::TokenOutOfScope, "middle permutation has no rotation word");
    return free_reduce(f.p * f.middle_word * f.q);
}

}  // namespace thompson
