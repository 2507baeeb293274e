#include "thompson/words.hpp"

#include <cctype>
#include <charconv>

#include "thompson/error.hpp"

namespace thompson {

GroupSpec GroupSpec::parse(std::string_view text) {
    if (text == "BV") return {Family::BV, 2};
    if (text == "BF") return {Family::BF, 2};
    if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'T' || text[0] == 'V')) {
        int n = 0;
        auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), n);
        if (ec == std::errc() && ptr == text.data() + text.size() && n >= 2 && n <= 255) {
            Family f = text[0] == 'F' ? Family::F : text[0] == 'T' ? Family::T : Family::V;
            return {f, n};
        }
    }
    throw ParseError(0, "unknown group '" + std::string(text) + "'");
}

std::string GroupSpec::to_string() const {
    switch (family) {
        case Family::F: return "F" + std::to_string(n);
        case Family::T: return "T" + std::to_string(n);
        case Family::V: return "V" + std::to_string(n);
        case Family::BV: return "BV";
        case Family::BF: return "BF";
    }
    return "?";
}

GroupTag GroupSpec::tag() const {
    switch (family) {
        case Family::F: return GroupTag::F;
        case Family::T: return GroupTag::T;
        case Family::V: return GroupTag::V;
        default: break;
    }
    throw Error(ErrorKind::GroupMismatch, "braided groups have no tree-pair tag");
}

std::string GeneratorToken::name() const {
    switch (kind) {
        case GenKind::X: return "x" + std::to_string(i);
        case GenKind::C: return "c" + std::to_string(i);
        case GenKind::Pi: return "pi0";
        case GenKind::Sigma: return "s" + std::to_string(i);
        case GenKind::Tau: return "t" + std::to_string(i);
        case GenKind::Alpha: return "a" + std::to_string(i) + "_" + std::to_string(j);
        case GenKind::Beta: return "b" + std::to_string(i) + "_" + std::to_string(j);
    }
    return "?";
}

std::string GeneratorToken::to_string() const {
    return exponent == 1 ? name() : name() + "^" + std::to_string(exponent);
}

bool token_in_scope(const GeneratorToken& t, const GroupSpec& g) {
    switch (t.kind) {
        case GenKind::X: return true;
        case GenKind::C: return g.family == Family::T || g.family == Family::V;
        case GenKind::Pi: return g.family == Family::V;
        case GenKind::Sigma:
        case GenKind::Tau: return g.family == Family::BV;
        case GenKind::Alpha:
        case GenKind::Beta: return g.family == Family::BF;
    }
    return false;
}

namespace {

int read_int(std::string_view s, std::size_t& pos, std::size_t base) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc()) throw ParseError(base + pos, "expected integer");
    pos = static_cast<std::size_t>(ptr - s.data());
    return v;
}

GeneratorToken parse_token(std::string_view s, std::size_t base) {
    GeneratorToken t;
    std::size_t pos = 0;
    if (s.substr(0, 2) == "pi") {
        t.kind = GenKind::Pi;
        pos = 2;
        if (read_int(s, pos, base) != 0) throw ParseError(base, "only pi0 exists");
    } else {
        switch (s[0]) {
            case 'x': t.kind = GenKind::X; break;
            case 'c': t.kind = GenKind::C; break;
            case 's': t.kind = GenKind::Sigma; break;
            case 't': t.kind = GenKind::Tau; break;
            case 'a': t.kind = GenKind::Alpha; break;
            case 'b': t.kind = GenKind::Beta; break;
            default: throw ParseError(base, "unknown generator letter");
        }
        pos = 1;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError(base + pos, "expected generator index");
        t.i = read_int(s, pos, base);
        if (t.kind == GenKind::Alpha || t.kind == GenKind::Beta) {
            if (pos >= s.size() || s[pos] != '_') throw ParseError(base + pos, "expected '_'");
            ++pos;
            t.j = read_int(s, pos, base);
        }
    }
    if (pos < s.size()) {
        if (s[pos] != '^') throw ParseError(base + pos, "expected '^'");
        ++pos;
        t.exponent = read_int(s, pos, base);
        if (t.exponent == 0) throw ParseError(base + pos - 1, "zero exponent");
    }
    if (pos != s.size()) throw ParseError(base + pos, "trailing characters in token");
    return t;
}

}  // namespace

GroupWord GroupWord::parse(std::string_view text, GroupSpec group) {
    GroupWord w{group, {}};
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*') {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) && text[end] != '*') ++end;
        std::string_view piece = text.substr(pos, end - pos);
        if (piece != "id") {
            GeneratorToken t = parse_token(piece, pos);
            if (!token_in_scope(t, group))
                throw Error(ErrorKind::TokenOutOfScope, t.name() + " is not a generator of " + group.to_string());
            w.tokens.push_back(t);
        }
        pos = end;
    }
    return w;
}

std::string GroupWord::to_string() const {
    std::string s;
    for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t.to_string();
    return s;
}

long long GroupWord::length() const {
    long long total = 0;
    for (const auto& t : tokens) total += t.exponent < 0 ? -t.exponent : t.exponent;
    return total;
}

GroupWord GroupWord::inverse() const {
    GroupWord w{group, {}};
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
        GeneratorToken t = *it;
        t.exponent = -t.exponent;
        w.tokens.push_back(t);
    }
    return w;
}

GroupWord& GroupWord::append(const GroupWord& w) {
    tokens.insert(tokens.end(), w.tokens.begin(), w.tokens.end());
    return *this;
}

GroupWord& GroupWord::append(GeneratorToken t) {
    tokens.push_back(t);
    return *this;
}

GroupWord operator*(GroupWord a, const GroupWord& b) { return a.append(b); }

GroupWord free_reduce(const GroupWord& w) {
    GroupWord out{w.group, {}};
    for (const auto& t : w.tokens) {
        if (t.exponent == 0) continue;
        if (!out.tokens.empty() && out.tokens.back().same_generator(t)) {
            out.tokens.back().exponent += t.exponent;
            if (out.tokens.back().exponent == 0) out.tokens.pop_back();
        } else {
            out.tokens.push_back(t);
        }
    }
    return out;
}

GeneratorToken x_token(int k, int e) { return GeneratorToken{GenKind::X, k, 0, e}; }

GroupWord x_power(GroupSpec g, int k, long long e) {
    GroupWord w{g, {}};
    if (e != 0) w.tokens.push_back(x_token(k, static_cast<int>(e)));
    return w;
}

Element token_element(const GeneratorToken& t, const GroupSpec& g) {
    if (g.braided() || !token_in_scope(t, g))
        throw Error(ErrorKind::TokenOutOfScope, t.name() + " is not a generator of " + g.to_string());
    GroupTag tag = g.tag();
    Arity n(g.n);
    switch (t.kind) {
        case GenKind::X: return generator_x(tag, n, t.i);
        case GenKind::C: return generator_c(tag, n, t.i);
        case GenKind::Pi: return generator_pi(tag, n);
        default: break;
    }
    throw Error(ErrorKind::TokenOutOfScope, t.name() + " is not a tree-pair generator");
}

Element evaluate(const GroupWord& w) {
    if (w.group.braided()) throw Error(ErrorKind::TokenOutOfScope, "braided word evaluated as a tree pair");
    Element acc = identity_element(w.group.tag(), Arity(w.group.n));
    for (const auto& t : w.tokens) {
        Element gen = token_element(t, w.group);
        Element step = t.exponent < 0 ? invert(gen) : gen;
        for (int e = 0; e < (t.exponent < 0 ? -t.exponent : t.exponent); ++e) acc = compose(acc, step);
    }
    return acc;
}

GroupWord rewrite_to_finite(const GroupWord& w) {
    const int n = w.group.n;
    GroupWord out{w.group, {}};
    auto push_x = [&](int k, int e) {
        if (k < n) {
            out.tokens.push_back(x_token(k, e));
            return;
        }
        const int i = (k - 1) % (n - 1) + 1;
        const int q = (k - i) / (n - 1);
        out.tokens.push_back(x_token(0, -q));
        out.tokens.push_back(x_token(i, e));
        out.tokens.push_back(x_token(0, q));
    };
    for (const auto& t : w.tokens) {
        if (t.kind == GenKind::X) {
            push_x(t.i, t.exponent);
        } else if (t.kind == GenKind::C && t.i > 0) {
            // c_k = x_{k(n-1)-1}^-1 c_{k-1}
            const int reps = t.exponent < 0 ? -t.exponent : t.exponent;
            for (int r = 0; r < reps; ++r) {
                if (t.exponent > 0) {
                    for (int m = t.i; m >= 1; --m) push_x(m * (n - 1) - 1, -1);
                    out.tokens.push_back(GeneratorToken{GenKind::C, 0, 0, 1});
                } else {
                    out.tokens.push_back(GeneratorToken{GenKind::C, 0, 0, -1});
                    for (int m = 1; m <= t.i; ++m) push_x(m * (n - 1) - 1, 1);
                }
            }
        } else {
            out.tokens.push_back(t);
        }
    }
    return free_reduce(out);
}

PrefixCode prefix_code_of(const NaryTree& t) { return PrefixCode{t.n(), t.leaves()}; }

NaryTree tree_of(const PrefixCode& code) { return NaryTree::from_leaves(Arity(code.n), code.codewords); }

}  // namespace thompson
