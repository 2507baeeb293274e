#include "thompson/element.hpp"

#include <algorithm>
#include <numeric>

#include "thompson/error.hpp"

namespace thompson {

struct ElementAccess {
    static Element build(GroupTag g, NaryTree s, Perm p, NaryTree t, bool red) {
        return Element(g, std::move(s), std::move(p), std::move(t), red);
    }
};

std::string_view group_letter(GroupTag tag) {
    switch (tag) {
        case GroupTag::F: return "F";
        case GroupTag::T: return "T";
        case GroupTag::V: return "V";
    }
    return "?";
}

bool is_identity_perm(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

bool is_cyclic_perm(const Perm& p) {
    if (p.empty()) return true;
    const std::size_t m = p.size();
    for (std::size_t i = 0; i < m; ++i)
        if (p[i] != (i + p[0]) % m) return false;
    return true;
}

Perm inverse_perm(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<std::uint32_t>(i);
    return q;
}

bool Element::is_identity() const {
    Element r = reduce(*this);
    return r.leaf_count() == 1;
}

Element make_element(GroupTag group, NaryTree source, Perm perm, NaryTree target) {
    if (source.n() != target.n()) throw Error(ErrorKind::ArityMismatch, "source and target arity differ");
    if (source.leaf_count() != perm.size() || target.leaf_count() != perm.size())
        throw Error(ErrorKind::LeafCountMismatch, "leaf counts of source, perm and target differ");
    std::vector<bool> seen(perm.size());
    for (auto v : perm) {
        if (v >= perm.size() || seen[v]) throw Error(ErrorKind::PermKindMismatch, "middle is not a permutation");
        seen[v] = true;
    }
    if (group == GroupTag::F && !is_identity_perm(perm))
        throw Error(ErrorKind::PermKindMismatch, "F elements need the identity middle");
    if (group == GroupTag::T && !is_cyclic_perm(perm))
        throw Error(ErrorKind::PermKindMismatch, "T elements need a cyclic middle");
    return ElementAccess::build(group, std::move(source), std::move(perm), std::move(target), false);
}

Element identity_element(GroupTag group, Arity n) {
    return ElementAccess::build(group, NaryTree(n), Perm{0}, NaryTree(n), true);
}

namespace {

std::vector<bool> exposed_flags(const NaryTree& t) {
    std::vector<bool> f(t.leaf_count());
    for (auto i : t.exposed_carets()) f[i] = true;
    return f;
}

std::vector<std::size_t> removable(const Element& g) {
    const auto n = static_cast<std::size_t>(g.n());
    auto tflags = exposed_flags(g.target());
    std::vector<std::size_t> out;
    const Perm& p = g.perm();
    for (auto i : g.source().exposed_carets()) {
        bool ok = tflags[p[i]];
        for (std::size_t t = 1; ok && t < n; ++t) ok = p[i + t] == p[i] + t;
        if (ok) out.push_back(i);
    }
    return out;
}

// Collapse the listed source carets together with their matching target carets.
Element contract_pairs(const Element& g, const std::vector<std::size_t>& carets) {
    const auto n = static_cast<std::size_t>(g.n());
    const std::size_t m = g.leaf_count();
    std::vector<bool> sflags(m), tflags(m);
    for (auto i : carets) {
        sflags[i] = true;
        tflags[g.perm()[i]] = true;
    }
    auto renumber = [&](const std::vector<bool>& flags) {
        std::vector<std::uint32_t> idx(m);
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < m;) {
            if (flags[i]) {
                for (std::size_t t = 0; t < n; ++t) idx[i + t] = next;
                i += n;
            } else {
                idx[i++] = next;
            }
            ++next;
        }
        return idx;
    };
    auto sidx = renumber(sflags);
    auto tidx = renumber(tflags);
    Perm np(m - carets.size() * (n - 1));
    for (std::size_t i = 0; i < m; ++i) np[sidx[i]] = tidx[g.perm()[i]];
    return ElementAccess::build(g.group(), g.source().contract(sflags), std::move(np),
                                g.target().contract(tflags), false);
}

}  // namespace

std::vector<std::size_t> reducible_carets(const Element& g) { return removable(g); }

Element reduce(const Element& g) {
    if (g.reduced()) return g;
    Element cur = g;
    for (;;) {
        auto r = removable(cur);
        if (r.empty()) break;
        cur = contract_pairs(cur, r);
    }
    return ElementAccess::build(cur.group(), cur.source(), cur.perm(), cur.target(), true);
}

Element reduce_random(const Element& g, std::mt19937_64& rng) {
    Element cur = ElementAccess::build(g.group(), g.source(), g.perm(), g.target(), false);
    for (;;) {
        auto r = removable(cur);
        if (r.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, r.size() - 1);
        cur = contract_pairs(cur, {r[pick(rng)]});
    }
    return ElementAccess::build(cur.group(), cur.source(), cur.perm(), cur.target(), true);
}

Element compose(const Element& g, const Element& h) {
    if (g.group() != h.group()) throw Error(ErrorKind::GroupMismatch, "compose across group tags");
    if (g.n() != h.n()) throw Error(ErrorKind::ArityMismatch, "compose across arities");
    NaryTree u = g.target().join(h.source());
    auto subs_t = g.target().residuals(u);
    auto subs_s = h.source().residuals(u);
    const Perm& pg = g.perm();
    const Perm& ph = h.perm();

    std::vector<NaryTree> src_subs;
    src_subs.reserve(pg.size());
    for (auto j : pg) src_subs.push_back(subs_t[j]);
    NaryTree source = g.source().graft(src_subs);

    Perm ph_inv = inverse_perm(ph);
    std::vector<NaryTree> tgt_subs;
    tgt_subs.reserve(ph.size());
    for (auto k : ph_inv) tgt_subs.push_back(subs_s[k]);
    NaryTree target = h.target().graft(tgt_subs);

    // Leaf offsets in u of each g.target leaf, and owner/offset per u leaf on the h side.
    std::vector<std::size_t> off_t(subs_t.size() + 1, 0);
    for (std::size_t j = 0; j < subs_t.size(); ++j) off_t[j + 1] = off_t[j] + subs_t[j].leaf_count();
    const std::size_t total = off_t.back();
    std::vector<std::uint32_t> owner(total), within(total);
    {
        std::size_t u_leaf = 0;
        for (std::size_t k = 0; k < subs_s.size(); ++k)
            for (std::size_t s = 0; s < subs_s[k].leaf_count(); ++s, ++u_leaf) {
                owner[u_leaf] = static_cast<std::uint32_t>(k);
                within[u_leaf] = static_cast<std::uint32_t>(s);
            }
    }
    std::vector<std::size_t> off_new_t(ph.size() + 1, 0);
    for (std::size_t j = 0; j < ph.size(); ++j) off_new_t[j + 1] = off_new_t[j] + tgt_subs[j].leaf_count();

    Perm perm;
    perm.reserve(total);
    for (std::size_t i = 0; i < pg.size(); ++i) {
        const std::size_t j = pg[i];
        for (std::size_t t = 0; t < subs_t[j].leaf_count(); ++t) {
            const std::size_t ul = off_t[j] + t;
            perm.push_back(static_cast<std::uint32_t>(off_new_t[ph[owner[ul]]] + within[ul]));
        }
    }
    return reduce(ElementAccess::build(g.group(), std::move(source), std::move(perm), std::move(target), false));
}

Element invert(const Element& g) {
    return ElementAccess::build(g.group(), g.target(), inverse_perm(g.perm()), g.source(), g.reduced());
}

Element power(const Element& g, long long e) {
    Element base = e < 0 ? invert(g) : g;
    Element acc = identity_element(g.group(), Arity(g.n()));
    for (long long i = 0; i < (e < 0 ? -e : e); ++i) acc = compose(acc, base);
    return acc;
}

Element expand(const Element& g, std::size_t source_leaf) {
    if (source_leaf >= g.leaf_count()) throw Error(ErrorKind::NotALeaf, "expand: no such source leaf");
    const auto n = static_cast<std::size_t>(g.n());
    const std::size_t j = g.perm()[source_leaf];
    NaryTree caret = NaryTree::from_preorder(Arity(g.n()), [&] {
        std::vector<std::uint8_t> b(n + 1, 0);
        b[0] = 1;
        return b;
    }());
    std::vector<NaryTree> ss(g.leaf_count(), NaryTree(Arity(g.n())));
    std::vector<NaryTree> ts = ss;
    ss[source_leaf] = caret;
    ts[j] = caret;
    Perm np;
    for (std::size_t i = 0; i < g.leaf_count(); ++i) {
        const std::size_t v = g.perm()[i];
        const std::size_t base = v > j ? v + n - 1 : v;
        if (i == source_leaf) {
            for (std::size_t t = 0; t < n; ++t) np.push_back(static_cast<std::uint32_t>(base + t));
        } else {
            np.push_back(static_cast<std::uint32_t>(base));
        }
    }
    return ElementAccess::build(g.group(), g.source().graft(ss), std::move(np), g.target().graft(ts), false);
}

std::size_t leaf_count_N(const Element& g) { return reduce(g).leaf_count(); }

std::vector<Branch> branches(const Element& g) {
    auto sl = g.source().leaves();
    auto tl = g.target().leaves();
    std::vector<Branch> out;
    for (std::size_t i = 0; i < sl.size(); ++i) out.push_back({sl[i], tl[g.perm()[i]]});
    return out;
}

Element attach_element(const Element& g, const NaryTree& carrier, const Address& at) {
    if (carrier.n() != g.n()) throw Error(ErrorKind::ArityMismatch, "carrier arity differs");
    auto idx = carrier.leaf_index(at);
    if (!idx) throw Error(ErrorKind::NotALeaf, "attachment point is not a leaf of the carrier");
    const std::size_t a = *idx;
    const std::size_t m = g.leaf_count();
    Perm np;
    for (std::size_t i = 0; i < carrier.leaf_count(); ++i) {
        if (i < a) {
            np.push_back(static_cast<std::uint32_t>(i));
        } else if (i == a) {
            for (auto v : g.perm()) np.push_back(static_cast<std::uint32_t>(a + v));
        } else {
            np.push_back(static_cast<std::uint32_t>(i + m - 1));
        }
    }
    GroupTag tag = g.group();
    if (tag == GroupTag::T && carrier.leaf_count() > 1 && !is_identity_perm(g.perm())) tag = GroupTag::V;
    return reduce(ElementAccess::build(tag, attach(carrier, at, g.source()), std::move(np),
                                       attach(carrier, at, g.target()), false));
}

Element attach_element(const Element& g, const Address& at) {
    return attach_element(g, path_tree(at, Arity(g.n())), at);
}

}  // namespace thompson
