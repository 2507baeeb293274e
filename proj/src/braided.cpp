#include "thompson/braided.hpp"

#include "thompson/error.hpp"

namespace thompson {

struct BraidedAccess {
    static BraidedElement build(Family g, NaryTree s, BraidWord b, NaryTree t) {
        return BraidedElement(g, std::move(s), std::move(b), std::move(t));
    }
};

namespace {

void check_family(Family f) {
    if (f != Family::BV && f != Family::BF) throw Error(ErrorKind::GroupMismatch, "braided elements live in BV or BF");
}

std::vector<bool> exposed_flags(const NaryTree& t) {
    std::vector<bool> f(t.leaf_count());
    for (auto i : t.exposed_carets()) f[i] = true;
    return f;
}

}  // namespace

BraidedElement make_braided(Family group, NaryTree source, BraidWord braid, NaryTree target) {
    check_family(group);
    if (source.n() != 2 || target.n() != 2) throw Error(ErrorKind::ArityMismatch, "braided diagrams use binary trees");
    if (source.leaf_count() != target.leaf_count() || static_cast<std::size_t>(braid.strands) != source.leaf_count())
        throw Error(ErrorKind::LeafCountMismatch, "strand count must equal both leaf counts");
    for (int l : braid.letters)
        if (l == 0 || std::abs(l) >= braid.strands) throw Error(ErrorKind::WidthMismatch, "Artin index out of range");
    if (group == Family::BF && !is_pure(braid)) throw Error(ErrorKind::NotPure, "BF diagrams need a pure braid");
    return BraidedAccess::build(group, std::move(source), std::move(braid), std::move(target));
}

BraidedElement identity_braided(Family group) {
    check_family(group);
    return BraidedAccess::build(group, NaryTree(Arity(2)), BraidWord{1, {}}, NaryTree(Arity(2)));
}

BraidedElement from_element(Family group, const Element& g) {
    check_family(group);
    if (g.n() != 2 || !is_identity_perm(g.perm())) throw Error(ErrorKind::GroupMismatch, "only F_2 elements embed");
    return BraidedAccess::build(group, g.source(), BraidWord{static_cast<int>(g.leaf_count()), {}}, g.target());
}

BraidedElement with_group(const BraidedElement& g, Family group) {
    return make_braided(group, g.source(), g.braid(), g.target());
}

BraidedElement reduce_bv(const BraidedElement& g) {
    NaryTree src = g.source();
    NaryTree tgt = g.target();
    BraidWord b = free_reduce(g.braid());
    for (bool changed = true; changed;) {
        changed = false;
        Perm p = permutation_of(b);
        auto tflags = exposed_flags(tgt);
        for (auto i : src.exposed_carets()) {
            const std::size_t j = p[i];
            if (p[i + 1] != j + 1 || !tflags[j]) continue;
            BraidWord d = delete_strand(b, static_cast<int>(i) + 1);
            std::vector<int> widths(static_cast<std::size_t>(d.strands), 1);
            widths[i] = 2;
            if (!braid_equal(cable(d, widths), b)) continue;
            std::vector<bool> sf(src.leaf_count()), tf(tgt.leaf_count());
            sf[i] = true;
            tf[j] = true;
            src = src.contract(sf);
            tgt = tgt.contract(tf);
            b = free_reduce(d);
            changed = true;
            break;
        }
    }
    return BraidedAccess::build(g.group(), std::move(src), std::move(b), std::move(tgt));
}

BraidedElement compose_bv(const BraidedElement& g, const BraidedElement& h) {
    if (g.group() != h.group()) throw Error(ErrorKind::GroupMismatch, "compose across BV and BF");
    NaryTree u = g.target().join(h.source());
    auto subs_t = g.target().residuals(u);
    auto subs_s = h.source().residuals(u);
    Perm pg = permutation_of(g.braid());
    Perm ph = permutation_of(h.braid());

    std::vector<NaryTree> src_subs;
    std::vector<int> wg;
    for (auto j : pg) {
        src_subs.push_back(subs_t[j]);
        wg.push_back(static_cast<int>(subs_t[j].leaf_count()));
    }
    std::vector<NaryTree> tgt_subs(ph.size(), NaryTree(Arity(2)));
    std::vector<int> wh;
    for (std::size_t k = 0; k < ph.size(); ++k) {
        tgt_subs[ph[k]] = subs_s[k];
        wh.push_back(static_cast<int>(subs_s[k].leaf_count()));
    }
    BraidWord b = shorten(cable(g.braid(), wg) * cable(h.braid(), wh));
    return reduce_bv(BraidedAccess::build(g.group(), g.source().graft(src_subs), std::move(b),
                                          h.target().graft(tgt_subs)));
}

BraidedElement invert_bv(const BraidedElement& g) {
    return BraidedAccess::build(g.group(), g.target(), inverse(g.braid()), g.source());
}

BraidedElement expand_bv(const BraidedElement& g, std::size_t source_leaf) {
    if (source_leaf >= g.leaf_count()) throw Error(ErrorKind::NotALeaf, "expand: no such source leaf");
    Perm p = permutation_of(g.braid());
    NaryTree caret = NaryTree::all_right(1, Arity(2));
    std::vector<NaryTree> ss(g.leaf_count(), NaryTree(Arity(2)));
    std::vector<NaryTree> ts = ss;
    ss[source_leaf] = caret;
    ts[p[source_leaf]] = caret;
    std::vector<int> widths(g.leaf_count(), 1);
    widths[source_leaf] = 2;
    return BraidedAccess::build(g.group(), g.source().graft(ss), cable(g.braid(), widths), g.target().graft(ts));
}

bool equal_bv(const BraidedElement& a, const BraidedElement& b) {
    BraidedElement ra = reduce_bv(a);
    BraidedElement rb = reduce_bv(b);
    return ra.source() == rb.source() && ra.target() == rb.target() && braid_equal(ra.braid(), rb.braid());
}

std::size_t leaf_count_N(const BraidedElement& g) { return reduce_bv(g).leaf_count(); }

std::size_t crossing_count_K(const BraidedElement& g) { return free_reduce(g.braid()).size(); }

int max_pair_crossings(const BraidedElement& g) { return max_pair_crossings(free_reduce(g.braid())); }

}  // namespace thompson
