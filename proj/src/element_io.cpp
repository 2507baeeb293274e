#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "thompson/element.hpp"
#include "thompson/error.hpp"

namespace thompson {

Support support(const Element& g) {
    Element r = reduce(g);
    std::set<Address> moved;
    for (const auto& b : branches(r))
        if (b.src != b.dst) moved.insert(b.src);
    const int n = r.n();
    for (bool changed = true; changed;) {
        changed = false;
        std::map<Address, int> kids;
        for (const auto& a : moved)
            if (!a.empty()) ++kids[Address(std::vector<std::uint8_t>(a.digits.begin(), a.digits.end() - 1))];
        for (const auto& [parent, count] : kids) {
            if (count != n) continue;
            for (int c = 0; c < n; ++c) moved.erase(parent.child(c));
            moved.insert(parent);
            changed = true;
        }
    }
    return Support{{moved.begin(), moved.end()}};
}

Rational cylinder_left(const Address& u, int n) {
    Rational x = 0;
    Rational scale = 1;
    for (auto d : u.digits) {
        scale /= n;
        x += scale * d;
    }
    return x;
}

namespace {

Rational cylinder_width(std::size_t depth, int n) {
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t i = 0; i < depth; ++i) den *= n;
    return Rational(1) / Rational(den);
}

}  // namespace

Rational apply(const Element& g, const Rational& x) {
    if (x < 0 || x > 1) throw Error(ErrorKind::DepthExceeded, "point outside [0,1]");
    const int n = g.n();
    {
        boost::multiprecision::cpp_int den = boost::multiprecision::denominator(x);
        int steps = 0;
        while (den > 1) {
            const boost::multiprecision::cpp_int d = boost::multiprecision::gcd(den, boost::multiprecision::cpp_int(n));
            if (d == 1) break;
            den /= d;
            ++steps;
        }
        if (den != 1 || steps > g.source().depth() + kMaxDepth)
            throw Error(ErrorKind::DepthExceeded, "point has no finite expansion within the depth bound");
    }
    auto bs = branches(g);
    std::size_t pick = bs.size() - 1;
    if (x < 1) {
        for (std::size_t i = 0; i < bs.size(); ++i) {
            Rational lo = cylinder_left(bs[i].dst, n);
            if (lo <= x && x < lo + cylinder_width(bs[i].dst.size(), n)) {
                pick = i;
                break;
            }
        }
    } else {
        pick = inverse_perm(g.perm()).back();
    }
    const auto& b = bs[pick];
    Rational ws = cylinder_width(b.src.size(), n);
    Rational wt = cylinder_width(b.dst.size(), n);
    return cylinder_left(b.src, n) + (x - cylinder_left(b.dst, n)) * (ws / wt);
}

Element generator_x(GroupTag group, Arity n, int k) {
    if (k < 0) throw Error(ErrorKind::NameOutOfScope, "negative generator index");
    const int nn = n.value();
    if (k > nn - 2) return attach_element(generator_x(group, n, k - (nn - 1)), Address({static_cast<std::uint8_t>(nn - 1)}));
    NaryTree src = NaryTree::from_addresses(n, {Address({static_cast<std::uint8_t>(k), 0})});
    NaryTree tgt = NaryTree::from_addresses(n, {Address({static_cast<std::uint8_t>(nn - 1), 0})});
    Perm id(src.leaf_count());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::uint32_t>(i);
    return reduce(make_element(group, src, id, tgt));
}

Element generator_c(GroupTag group, Arity n, int k) {
    if (group == GroupTag::F) throw Error(ErrorKind::NameOutOfScope, "rotations are not in F");
    if (k < 0) throw Error(ErrorKind::NameOutOfScope, "negative generator index");
    NaryTree r = NaryTree::all_right(k + 1, n);
    const std::size_t m = r.leaf_count();
    Perm p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<std::uint32_t>((i + 1) % m);
    return reduce(make_element(group, r, p, r));
}

Element generator_pi(GroupTag group, Arity n) {
    if (group != GroupTag::V) throw Error(ErrorKind::NameOutOfScope, "pi0 exists only in V");
    // For n = 2 a single-caret swap would coincide with c0, so the swap acts
    // on the two right leaves of (.(..)).
    NaryTree t = n.value() == 2 ? NaryTree::all_right(2, n) : NaryTree::all_right(1, n);
    Perm p(t.leaf_count());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint32_t>(i);
    const std::size_t a = n.value() == 2 ? 1 : 0;
    std::swap(p[a], p[a + 1]);
    return reduce(make_element(group, t, p, t));
}

Element generator(GroupTag group, Arity n, std::string_view name) {
    auto index = [&](std::string_view digits) {
        int k = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
            throw Error(ErrorKind::NameOutOfScope, "unknown generator " + std::string(name));
        return k;
    };
    if (name == "pi0") return generator_pi(group, n);
    if (name.size() >= 2 && name[0] == 'x') return generator_x(group, n, index(name.substr(1)));
    if (name.size() >= 2 && name[0] == 'c') return generator_c(group, n, index(name.substr(1)));
    throw Error(ErrorKind::NameOutOfScope, "unknown generator " + std::string(name));
}

std::string to_string(const Element& g) {
    std::string s(group_letter(g.group()));
    s += " " + std::to_string(g.n()) + " | " + g.source().to_string() + " | ";
    if (g.group() == GroupTag::T) {
        s += "shift^" + std::to_string(g.perm()[0]) + " | ";
    } else if (g.group() == GroupTag::V) {
        s += "[";
        for (std::size_t i = 0; i < g.perm().size(); ++i) s += (i ? " " : "") + std::to_string(g.perm()[i]);
        s += "] | ";
    }
    return s + g.target().to_string();
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    void expect(char c) {
        skip();
        if (pos >= text.size() || text[pos] != c) throw ParseError(pos, std::string("expected '") + c + "'");
        ++pos;
    }
    long long integer() {
        skip();
        long long v = 0;
        const char* b = text.data() + pos;
        auto [ptr, ec] = std::from_chars(b, text.data() + text.size(), v);
        if (ec != std::errc()) throw ParseError(pos, "expected integer");
        pos += static_cast<std::size_t>(ptr - b);
        return v;
    }
    NaryTree tree(Arity n) {
        skip();
        std::size_t end = text.find('|', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view piece = text.substr(pos, end - pos);
        while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back()))) piece.remove_suffix(1);
        try {
            NaryTree t = NaryTree::parse(piece, n);
            pos += piece.size();
            return t;
        } catch (const ParseError& e) {
            throw ParseError(pos + e.position(), "invalid tree");
        }
    }
};

}  // namespace

Element parse_element(std::string_view text) {
    Cursor c{text};
    c.skip();
    if (c.pos >= text.size()) throw ParseError(c.pos, "empty element literal");
    GroupTag tag;
    switch (text[c.pos]) {
        case 'F': tag = GroupTag::F; break;
        case 'T': tag = GroupTag::T; break;
        case 'V': tag = GroupTag::V; break;
        default: throw ParseError(c.pos, "expected group tag F, T or V");
    }
    ++c.pos;
    const std::size_t npos = c.pos;
    long long n = c.integer();
    if (n < 2 || n > 255) throw ParseError(npos, "arity must be in 2..255");
    Arity ar(static_cast<int>(n));
    c.expect('|');
    NaryTree src = c.tree(ar);
    c.expect('|');
    Perm perm(src.leaf_count());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::uint32_t>(i);
    if (tag == GroupTag::T) {
        c.skip();
        if (text.substr(c.pos, 6) != "shift^") throw ParseError(c.pos, "expected shift^j");
        c.pos += 6;
        long long j = c.integer();
        const auto m = static_cast<long long>(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            perm[i] = static_cast<std::uint32_t>(((static_cast<long long>(i) + j) % m + m) % m);
        c.expect('|');
    } else if (tag == GroupTag::V) {
        c.expect('[');
        perm.clear();
        for (c.skip(); c.pos < text.size() && text[c.pos] != ']'; c.skip()) {
            long long v = c.integer();
            if (v < 0) throw ParseError(c.pos, "negative permutation entry");
            perm.push_back(static_cast<std::uint32_t>(v));
        }
        c.expect(']');
        c.expect('|');
    }
    NaryTree tgt = c.tree(ar);
    c.skip();
    if (c.pos != text.size()) throw ParseError(c.pos, "trailing input");
    return make_element(tag, std::move(src), std::move(perm), std::move(tgt));
}

namespace {

void put_varint(std::string& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

void put_bits(std::string& out, const std::vector<std::uint8_t>& bits) {
    unsigned char acc = 0;
    int k = 0;
    for (auto b : bits) {
        acc = static_cast<unsigned char>(acc | (b << k));
        if (++k == 8) {
            out.push_back(static_cast<char>(acc));
            acc = 0;
            k = 0;
        }
    }
    if (k) out.push_back(static_cast<char>(acc));
}

}  // namespace

std::string key(const Element& g) {
    std::string out;
    out.push_back(static_cast<char>(g.group()));
    out.push_back(static_cast<char>(g.n()));
    put_varint(out, g.leaf_count());
    put_bits(out, g.source().preorder());
    if (g.group() == GroupTag::T) {
        put_varint(out, g.perm()[0]);
    } else if (g.group() == GroupTag::V) {
        for (auto v : g.perm()) put_varint(out, v);
    }
    put_bits(out, g.target().preorder());
    return out;
}

NaryTree random_tree(Arity n, int carets, std::mt19937_64& rng) {
    NaryTree t(n);
    NaryTree caret = NaryTree::all_right(1, n);
    for (int i = 0; i < carets; ++i) {
        auto lv = t.leaves();
        std::uniform_int_distribution<std::size_t> pick(0, lv.size() - 1);
        const Address& at = lv[pick(rng)];
        if (static_cast<int>(at.size()) >= kMaxDepth) continue;
        t = attach(t, at, caret);
    }
    return t;
}

Element random_element(GroupTag group, Arity n, int carets, std::mt19937_64& rng) {
    NaryTree s = random_tree(n, carets, rng);
    NaryTree t = random_tree(n, static_cast<int>(s.caret_count()), rng);
    Perm p(s.leaf_count());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint32_t>(i);
    if (group == GroupTag::T) {
        std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
        const std::size_t j = pick(rng);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint32_t>((i + j) % p.size());
    } else if (group == GroupTag::V) {
        std::shuffle(p.begin(), p.end(), rng);
    }
    return reduce(make_element(group, std::move(s), std::move(p), std::move(t)));
}

}  // namespace thompson
