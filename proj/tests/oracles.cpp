#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace oracle {

using thompson::Element;
using thompson::Rational;

namespace {

// Words packed 4 bits per letter: letter ±k stored as k or k+8, length in the top byte.
using Code = std::uint64_t;

Code pack(const std::vector<int>& w) {
    Code c = static_cast<Code>(w.size()) << 56;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const int l = w[i];
        c |= static_cast<Code>(l > 0 ? l : 8 - l) << (4 * i);
    }
    return c;
}

std::vector<int> unpack(Code c) {
    const std::size_t n = static_cast<std::size_t>(c >> 56);
    std::vector<int> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = static_cast<int>((c >> (4 * i)) & 15);
        w[i] = v < 8 ? v : 8 - v;
    }
    return w;
}

std::vector<int> reduce_free(const std::vector<int>& w) {
    std::vector<int> out;
    for (int l : w) {
        if (!out.empty() && out.back() == -l) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

struct Dsu {
    std::vector<std::uint32_t> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

// Every relator and its inverse in all cyclic rotations.
std::vector<std::vector<int>> relators(int strands) {
    std::vector<std::vector<int>> rel;
    for (int i = 1; i < strands; ++i)
        for (int j = i + 1; j < strands; ++j) {
            if (j == i + 1) {
                rel.push_back({i, j, i, -j, -i, -j});
            } else {
                rel.push_back({i, j, -i, -j});
            }
        }
    std::vector<std::vector<int>> out;
    for (auto r : rel)
        for (int inv = 0; inv < 2; ++inv) {
            if (inv) {
                std::reverse(r.begin(), r.end());
                for (int& l : r) l = -l;
            }
            for (std::size_t rot = 0; rot < r.size(); ++rot) {
                std::vector<int> c(r.begin() + static_cast<long>(rot), r.end());
                c.insert(c.end(), r.begin(), r.begin() + static_cast<long>(rot));
                out.push_back(c);
            }
        }
    return out;
}

}  // namespace

BraidOracleReport braid_rewrite_oracle(int strands, int max_len) {
    // Enumerate freely reduced words.
    std::vector<Code> words{pack({})};
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier)
            for (int k = 1; k < strands; ++k)
                for (int l : {k, -k}) {
                    if (!w.empty() && w.back() == -l) continue;
                    auto x = w;
                    x.push_back(l);
                    words.push_back(pack(x));
                    next.push_back(std::move(x));
                }
        frontier = std::move(next);
    }
    std::unordered_map<Code, std::uint32_t> index;
    index.reserve(words.size() * 2);
    for (std::uint32_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);

    Dsu dsu(words.size());
    // Insert one relator at every position; keep results inside the cap.
    const auto rs = relators(strands);
    std::vector<int> x;
    for (std::uint32_t i = 0; i < words.size(); ++i) {
        const auto w = unpack(words[i]);
        for (std::size_t at = 0; at <= w.size(); ++at)
            for (const auto& r : rs) {
                x.assign(w.begin(), w.begin() + static_cast<long>(at));
                x.insert(x.end(), r.begin(), r.end());
                x.insert(x.end(), w.begin() + static_cast<long>(at), w.end());
                x = reduce_free(x);
                if (static_cast<int>(x.size()) > max_len) continue;
                dsu.unite(i, index.at(pack(x)));
            }
    }

    BraidOracleReport rep;
    rep.words = words.size();
    // One representative per rewrite class; classes sharing a normal form are then
    // compared by handle reduction, which decides equality without the cap.
    std::unordered_map<std::string, std::uint32_t> nf_to_root;
    std::unordered_map<std::uint32_t, std::string> root_to_nf;
    auto note = [&](const std::string& what) {
        if (rep.disagreements++ == 0) rep.example = what;
    };
    for (std::uint32_t i = 0; i < words.size(); ++i) {
        const std::uint32_t r = dsu.find(i);
        const std::vector<int> w = unpack(words[i]);
        const std::string nf = thompson::garside_nf(thompson::BraidWord{strands, w}).to_string();
        auto [c, fresh_root] = root_to_nf.emplace(r, nf);
        if (!fresh_root) {
            if (c->second != nf) note("rewrite-equal, normal forms differ: " + thompson::BraidWord{strands, w}.to_string());
            continue;
        }
        auto [a, fresh_nf] = nf_to_root.emplace(nf, r);
        if (fresh_nf) continue;
        ++rep.handle_checks;
        const std::vector<int> other = unpack(words[a->second]);
        if (!handle_equal(w, other))
            note("normal forms agree, handle reduction differs: " + thompson::BraidWord{strands, w}.to_string() + " vs " +
                 thompson::BraidWord{strands, other}.to_string());
    }
    rep.nf_classes = nf_to_root.size();
    rep.rewrite_classes = root_to_nf.size();
    // Distinct normal forms must be unequal braids.
    std::vector<std::uint32_t> reps;
    for (const auto& [nf, r] : nf_to_root) reps.push_back(r);
    std::sort(reps.begin(), reps.end());
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
    for (int k = 0; k < 20000 && reps.size() > 1; ++k) {
        const std::uint32_t x = reps[pick(rng)], y = reps[pick(rng)];
        if (x == y) continue;
        ++rep.handle_checks;
        if (handle_equal(unpack(words[x]), unpack(words[y])))
            note("normal forms differ, handle reduction equal: " + thompson::BraidWord{strands, unpack(words[x])}.to_string());
    }
    return rep;
}

bool handle_trivial(std::vector<int> w) {
    for (long step = 0; step < 10'000'000; ++step) {
        // leftmost-ending handle s_i^e u s_i^-e with no letter of index i or i-1 in u
        std::size_t p = 0, q = 0;
        bool found = false;
        for (q = 1; q < w.size() && !found; ++q) {
            const int i = std::abs(w[q]);
            for (std::size_t k = q; k-- > 0;) {
                const int a = std::abs(w[k]);
                if (a == i) {
                    if (w[k] == -w[q]) {
                        p = k;
                        found = true;
                    }
                    break;
                }
                if (a == i - 1) break;
            }
        }
        if (!found) return w.empty();
        --q;
        const int i = std::abs(w[p]);
        const int e = w[p] > 0 ? 1 : -1;
        std::vector<int> mid;
        for (std::size_t k = p + 1; k < q; ++k) {
            const int l = w[k];
            if (std::abs(l) == i + 1) {
                const int d = l > 0 ? 1 : -1;
                mid.insert(mid.end(), {-e * (i + 1), d * i, e * (i + 1)});
            } else {
                mid.push_back(l);
            }
        }
        std::vector<int> next(w.begin(), w.begin() + static_cast<long>(p));
        next.insert(next.end(), mid.begin(), mid.end());
        next.insert(next.end(), w.begin() + static_cast<long>(q) + 1, w.end());
        w = std::move(next);
    }
    throw std::runtime_error("handle reduction did not terminate");
}

bool handle_equal(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> w = a;
    for (auto it = b.rbegin(); it != b.rend(); ++it) w.push_back(-*it);
    return handle_trivial(w);
}

std::vector<Rational> grid(int n, int depth) {
    std::vector<Rational> pts;
    long long den = 1;
    for (int d = 0; d < depth; ++d) den *= n;
    for (long long k = 0; k < den; ++k) pts.emplace_back(k, den);
    return pts;
}

bool same_map(const Element& a, const Element& b, int depth) {
    for (const auto& x : grid(a.n(), depth))
        if (thompson::apply(a, x) != thompson::apply(b, x)) return false;
    return true;
}

Element random_expansion(const Element& g, int steps, std::mt19937_64& rng) {
    Element e = g;
    for (int s = 0; s < steps; ++s) {
        std::uniform_int_distribution<std::size_t> pick(0, e.leaf_count() - 1);
        e = thompson::expand(e, pick(rng));
    }
    return e;
}

std::size_t leaves_from_branches(const Element& g) { return thompson::branches(thompson::reduce(g)).size(); }

}  // namespace oracle
