#include "thompson/forest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "thompson/error.hpp"

namespace thompson {

namespace {

using Bits = std::vector<std::uint8_t>;

std::size_t subtree_end(const Bits& bits, std::size_t pos, int n) {
    std::size_t need = 1;
    while (need > 0) {
        if (pos >= bits.size()) throw Error(ErrorKind::InvalidTree, "truncated preorder");
        need += bits[pos++] ? static_cast<std::size_t>(n - 1) : 0;
        if (!bits[pos - 1]) --need;
    }
    return pos;
}

void copy_subtree(const Bits& src, std::size_t& pos, Bits& out, int n) {
    std::size_t end = subtree_end(src, pos, n);
    out.insert(out.end(), src.begin() + static_cast<std::ptrdiff_t>(pos),
               src.begin() + static_cast<std::ptrdiff_t>(end));
    pos = end;
}

void join_rec(const Bits& a, std::size_t& ia, const Bits& b, std::size_t& ib, Bits& out, int n) {
    if (!a[ia] && !b[ib]) {
        out.push_back(0);
        ++ia;
        ++ib;
    } else if (!a[ia]) {
        ++ia;
        copy_subtree(b, ib, out, n);
    } else if (!b[ib]) {
        ++ib;
        copy_subtree(a, ia, out, n);
    } else {
        out.push_back(1);
        ++ia;
        ++ib;
        for (int c = 0; c < n; ++c) join_rec(a, ia, b, ib, out, n);
    }
}

// Walks a tree in preorder with its current address.
template <class Visit>
void walk(const Bits& bits, int n, Visit&& visit) {
    Address addr;
    std::vector<int> next_child;  // per open caret: next child digit
    for (std::uint8_t bit : bits) {
        visit(addr, bit != 0);
        if (bit) {
            next_child.push_back(1);
            addr.digits.push_back(0);
        } else {
            while (!next_child.empty() && next_child.back() == n) {
                next_child.pop_back();
                addr.digits.pop_back();
            }
            if (next_child.empty()) break;
            addr.digits.back() = static_cast<std::uint8_t>(next_child.back()++);
        }
    }
}

}  // namespace

Arity::Arity(int n) : n_(n) {
    if (n < 2) throw Error(ErrorKind::ArityMismatch, "arity must be at least 2");
}

Address Address::parse(std::string_view text) {
    Address a;
    if (text == "e" || text == "\xce\xb5") return a;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(i, "address digit expected");
        a.digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return a;
}

std::string Address::to_string() const {
    if (digits.empty()) return "\xce\xb5";
    std::string s;
    for (auto d : digits) s.push_back(static_cast<char>('0' + d));
    return s;
}

bool Address::is_prefix_of(const Address& other) const {
    return size() <= other.size() && std::equal(digits.begin(), digits.end(), other.digits.begin());
}

Address Address::child(int d) const {
    Address a = *this;
    a.digits.push_back(static_cast<std::uint8_t>(d));
    return a;
}

Address Address::concat(const Address& tail) const {
    Address a = *this;
    a.digits.insert(a.digits.end(), tail.digits.begin(), tail.digits.end());
    return a;
}

NaryTree::NaryTree(Arity n) : n_(n.value()), bits_{0} {}

void NaryTree::validate() const {
    if (subtree_end(bits_, 0, n_) != bits_.size())
        throw Error(ErrorKind::InvalidTree, "trailing preorder entries");
    if (depth() > kMaxDepth) throw Error(ErrorKind::DepthExceeded, "tree deeper than 64");
}

NaryTree NaryTree::from_preorder(Arity n, Bits preorder) {
    NaryTree t(n.value(), std::move(preorder));
    t.validate();
    return t;
}

NaryTree NaryTree::from_addresses(Arity n, const std::vector<Address>& nodes) {
    std::set<Address> internal;
    for (const auto& a : nodes) {
        if (a.size() > static_cast<std::size_t>(kMaxDepth))
            throw Error(ErrorKind::DepthExceeded, "address deeper than 64");
        Address p;
        for (auto d : a.digits) {
            if (d >= n.value()) throw Error(ErrorKind::ArityMismatch, "digit exceeds arity");
            internal.insert(p);
            p.digits.push_back(d);
        }
    }
    Bits bits;
    // Preorder over the completed set: recursion on the address.
    auto rec = [&](auto&& self, Address& a) -> void {
        if (!internal.count(a)) {
            bits.push_back(0);
            return;
        }
        bits.push_back(1);
        for (int c = 0; c < n.value(); ++c) {
            a.digits.push_back(static_cast<std::uint8_t>(c));
            self(self, a);
            a.digits.pop_back();
        }
    };
    Address root;
    rec(rec, root);
    return NaryTree(n.value(), std::move(bits));
}

NaryTree NaryTree::from_leaves(Arity n, std::vector<Address> lv) {
    std::sort(lv.begin(), lv.end());
    if (std::adjacent_find(lv.begin(), lv.end()) != lv.end())
        throw Error(ErrorKind::NotMaximal, "duplicate codeword");
    for (std::size_t i = 0; i + 1 < lv.size(); ++i)
        if (lv[i].is_prefix_of(lv[i + 1]))
            throw Error(ErrorKind::NotMaximal, "codeword is a prefix of another");
    NaryTree t = from_addresses(n, lv);
    if (t.leaves() != lv) throw Error(ErrorKind::NotMaximal, "prefix code is not maximal");
    return t;
}

NaryTree NaryTree::all_right(int carets, Arity n) {
    Bits bits;
    for (int i = 0; i < carets; ++i) {
        bits.push_back(1);
        for (int c = 0; c + 1 < n.value(); ++c) bits.push_back(0);
    }
    bits.push_back(0);
    return from_preorder(n, std::move(bits));
}

NaryTree NaryTree::parse(std::string_view text, Arity n) {
    Bits bits;
    std::vector<int> open;  // children still expected per open caret
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto close_child = [&] {
        if (!open.empty()) --open.back();
    };
    skip();
    bool done = false;
    while (i < text.size() && !done) {
        char c = text[i];
        if (c == '.') {
            if (!open.empty() && open.back() == 0) throw ParseError(i, "too many children");
            bits.push_back(0);
            close_child();
            ++i;
            if (open.empty()) done = true;
        } else if (c == '(') {
            if (!open.empty() && open.back() == 0) throw ParseError(i, "too many children");
            bits.push_back(1);
            open.push_back(n.value());
            ++i;
        } else if (c == ')') {
            if (open.empty() || open.back() != 0) throw ParseError(i, "caret needs exactly n children");
            open.pop_back();
            close_child();
            ++i;
            if (open.empty()) done = true;
        } else {
            throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
        skip();
    }
    if (!done) throw ParseError(i, "unterminated tree");
    if (i != text.size()) throw ParseError(i, "trailing input after tree");
    return from_preorder(n, std::move(bits));
}

std::string NaryTree::to_string() const {
    std::string s;
    std::vector<int> open;
    for (auto bit : bits_) {
        if (bit) {
            s.push_back('(');
            open.push_back(n_);
            continue;
        }
        s.push_back('.');
        while (!open.empty() && --open.back() == 0) {
            s.push_back(')');
            open.pop_back();
        }
    }
    return s;
}

std::size_t NaryTree::caret_count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::size_t NaryTree::leaf_count() const noexcept { return bits_.size() - caret_count(); }

std::vector<Address> NaryTree::leaves() const {
    std::vector<Address> out;
    walk(bits_, n_, [&](const Address& a, bool internal) {
        if (!internal) out.push_back(a);
    });
    return out;
}

std::vector<int> NaryTree::leaf_depths() const {
    std::vector<int> out;
    walk(bits_, n_, [&](const Address& a, bool internal) {
        if (!internal) out.push_back(static_cast<int>(a.size()));
    });
    return out;
}

std::vector<Address> NaryTree::internal_nodes() const {
    std::vector<Address> out;
    walk(bits_, n_, [&](const Address& a, bool internal) {
        if (internal) out.push_back(a);
    });
    return out;
}

int NaryTree::depth() const {
    int d = 0;
    walk(bits_, n_, [&](const Address& a, bool) { d = std::max(d, static_cast<int>(a.size())); });
    return d;
}

bool NaryTree::has_node(const Address& a) const {
    std::size_t pos = 0;
    for (auto digit : a.digits) {
        if (digit >= n_ || !bits_[pos]) return false;
        ++pos;
        for (int c = 0; c < digit; ++c) pos = subtree_end(bits_, pos, n_);
    }
    return true;
}

std::optional<std::size_t> NaryTree::leaf_index(const Address& a) const {
    std::size_t pos = 0;
    for (auto digit : a.digits) {
        if (digit >= n_ || !bits_[pos]) return std::nullopt;
        ++pos;
        for (int c = 0; c < digit; ++c) pos = subtree_end(bits_, pos, n_);
    }
    if (bits_[pos]) return std::nullopt;
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(pos), 0));
}

std::vector<std::size_t> NaryTree::exposed_carets() const {
    std::vector<std::size_t> out;
    std::size_t leaf = 0;
    for (std::size_t p = 0; p < bits_.size(); ++p) {
        if (!bits_[p]) {
            ++leaf;
            continue;
        }
        if (p + static_cast<std::size_t>(n_) < bits_.size() + 0 &&
            std::all_of(bits_.begin() + static_cast<std::ptrdiff_t>(p + 1),
                        bits_.begin() + static_cast<std::ptrdiff_t>(p + 1 + n_),
                        [](std::uint8_t b) { return b == 0; }))
            out.push_back(leaf);
    }
    return out;
}

NaryTree NaryTree::contract(const std::vector<bool>& flags) const {
    Bits out;
    out.reserve(bits_.size());
    std::size_t leaf = 0;
    for (std::size_t p = 0; p < bits_.size(); ++p) {
        if (!bits_[p]) {
            out.push_back(0);
            ++leaf;
            continue;
        }
        bool exposed = p + static_cast<std::size_t>(n_) < bits_.size() &&
                       std::all_of(bits_.begin() + static_cast<std::ptrdiff_t>(p + 1),
                                   bits_.begin() + static_cast<std::ptrdiff_t>(p + 1 + n_),
                                   [](std::uint8_t b) { return b == 0; });
        if (exposed && leaf < flags.size() && flags[leaf]) {
            out.push_back(0);
            p += static_cast<std::size_t>(n_);
            leaf += static_cast<std::size_t>(n_);
        } else {
            out.push_back(1);
        }
    }
    return NaryTree(n_, std::move(out));
}

NaryTree NaryTree::graft(const std::vector<NaryTree>& subs) const {
    if (subs.size() != leaf_count()) throw Error(ErrorKind::LeafCountMismatch, "graft needs one subtree per leaf");
    Bits out;
    std::size_t leaf = 0;
    for (auto bit : bits_) {
        if (bit) {
            out.push_back(1);
        } else {
            const auto& s = subs[leaf++];
            if (s.n_ != n_) throw Error(ErrorKind::ArityMismatch, "graft arity");
            out.insert(out.end(), s.bits_.begin(), s.bits_.end());
        }
    }
    NaryTree t(n_, std::move(out));
    if (t.depth() > kMaxDepth) throw Error(ErrorKind::DepthExceeded, "tree deeper than 64");
    return t;
}

std::vector<NaryTree> NaryTree::residuals(const NaryTree& expanded) const {
    std::vector<NaryTree> out;
    std::size_t ia = 0;
    std::size_t ib = 0;
    const Bits& b = expanded.bits_;
    while (ia < bits_.size()) {
        if (ib >= b.size()) throw Error(ErrorKind::InvalidTree, "residuals: tree is not a prefix");
        if (bits_[ia]) {
            if (!b[ib]) throw Error(ErrorKind::InvalidTree, "residuals: tree is not a prefix");
            ++ia;
            ++ib;
        } else {
            Bits sub;
            copy_subtree(b, ib, sub, n_);
            out.push_back(NaryTree(n_, std::move(sub)));
            ++ia;
        }
    }
    return out;
}

NaryTree NaryTree::join(const NaryTree& other) const {
    if (other.n_ != n_) throw Error(ErrorKind::ArityMismatch, "join of trees with different arity");
    Bits out;
    std::size_t ia = 0;
    std::size_t ib = 0;
    join_rec(bits_, ia, other.bits_, ib, out, n_);
    NaryTree t(n_, std::move(out));
    if (t.depth() > kMaxDepth) throw Error(ErrorKind::DepthExceeded, "tree deeper than 64");
    return t;
}

bool NaryTree::is_prefix_of(const NaryTree& other) const {
    return other.n_ == n_ && join(other) == other;
}

std::vector<Address> leaves(const NaryTree& t) { return t.leaves(); }

std::size_t caret_count(const NaryTree& t) { return t.caret_count(); }

NaryTree all_right_tree(int carets, Arity n) { return NaryTree::all_right(carets, n); }

NaryTree attach(const NaryTree& t, const Address& at, const NaryTree& sub) {
    if (sub.n() != t.n()) throw Error(ErrorKind::ArityMismatch, "attach of trees with different arity");
    auto idx = t.leaf_index(at);
    if (!idx) throw Error(ErrorKind::NotALeaf, "attach point " + at.to_string() + " is not a leaf");
    std::vector<NaryTree> subs(t.leaf_count(), NaryTree(t.arity()));
    subs[*idx] = sub;
    return t.graft(subs);
}

int branch_length(const NaryTree& t, const Address& leaf) {
    if (!t.leaf_index(leaf)) throw Error(ErrorKind::NotALeaf, leaf.to_string() + " is not a leaf");
    return static_cast<int>(leaf.size());
}

Expansion common_expansion(const NaryTree& a, const NaryTree& b) {
    NaryTree u = a.join(b);
    Expansion e{u, {}, {}};
    auto ra = a.residuals(u);
    auto rb = b.residuals(u);
    for (std::size_t i = 0; i < ra.size(); ++i) e.from_a.insert(e.from_a.end(), ra[i].leaf_count(), i);
    for (std::size_t i = 0; i < rb.size(); ++i) e.from_b.insert(e.from_b.end(), rb[i].leaf_count(), i);
    return e;
}

NaryTree path_tree(const Address& leaf, Arity n) {
    std::vector<Address> nodes{leaf};
    return NaryTree::from_addresses(n, nodes);
}

}  // namespace thompson
