#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/words.hpp"

namespace thompson {

// Standard finite generating sets: {x0..x_{n-1}} for F_n, plus c0 for T_n,
// plus c0 and pi0 for V_n, {x0, x1, s1, t1} for BV and Sigma_BF for BF.
std::vector<GeneratorToken> standard_generators(const GroupSpec& g);

// Operations a Cayley-ball search needs from an element type.
struct ElementOps {
    using Value = Element;
    static Element identity(const GroupSpec& g) { return identity_element(g.tag(), Arity(g.n)); }
    static Element generator(const GeneratorToken& t, const GroupSpec& g) {
        Element e = token_element(t, g);
        return t.exponent < 0 ? invert(e) : e;
    }
    static Element mul(const Element& a, const Element& b) { return compose(a, b); }
    static std::string key(const Element& e) { return thompson::key(e); }
};

template <class E>
struct Ball {
    GroupSpec group;
    std::vector<GeneratorToken> gens;  // each generator and its inverse, exponent ±1
    int radius = 0;
    std::vector<E> elements;
    std::vector<int> dist;
    std::vector<std::int32_t> parent;
    std::vector<std::int16_t> via;       // generator index of the BFS tree edge
    std::vector<std::int32_t> nbr;       // elements.size() × gens.size(); -1 if outside
    std::unordered_map<std::string, std::uint32_t> index;

    std::size_t size() const noexcept { return elements.size(); }
    std::int32_t neighbour(std::size_t i, std::size_t g) const { return nbr[i * gens.size() + g]; }
    std::optional<std::uint32_t> find_key(const std::string& k) const {
        auto it = index.find(k);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    // Geodesic word from the identity, read off the BFS tree.
    GroupWord word(std::uint32_t i) const {
        GroupWord w{group, {}};
        for (std::int32_t v = static_cast<std::int32_t>(i); parent[static_cast<std::size_t>(v)] >= 0;
             v = parent[static_cast<std::size_t>(v)])
            w.tokens.push_back(gens[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])]);
        std::reverse(w.tokens.begin(), w.tokens.end());
        return free_reduce(w);
    }
    std::vector<std::size_t> shell_counts() const {
        std::vector<std::size_t> c(static_cast<std::size_t>(radius) + 1, 0);
        for (int d : dist) ++c[static_cast<std::size_t>(d)];
        return c;
    }
};

inline std::vector<GeneratorToken> with_inverses(const std::vector<GeneratorToken>& gens) {
    std::vector<GeneratorToken> out;
    for (auto t : gens) {
        t.exponent = 1;
        out.push_back(t);
        t.exponent = -1;
        out.push_back(t);
    }
    return out;
}

// Breadth-first enumeration of the radius-r ball; each layer's products are
// computed on `threads` workers and merged in a fixed order.
template <class Ops>
Ball<typename Ops::Value> enumerate_ball(const GroupSpec& group, const std::vector<GeneratorToken>& gens, int radius,
                                         std::size_t cap_nodes, unsigned threads = 1) {
    using E = typename Ops::Value;
    Ball<E> b;
    b.group = group;
    b.gens = with_inverses(gens);
    b.radius = radius;
    std::vector<E> gen_el;
    for (const auto& t : b.gens) gen_el.push_back(Ops::generator(t, group));
    const std::size_t G = b.gens.size();
    E id = Ops::identity(group);
    b.index.emplace(Ops::key(id), 0);
    b.elements.push_back(id);
    b.dist.push_back(0);
    b.parent.push_back(-1);
    b.via.push_back(-1);
    std::size_t layer_begin = 0;
    for (int d = 0; d <= radius; ++d) {
        const std::size_t layer_end = b.elements.size();
        const std::size_t count = layer_end - layer_begin;
        std::vector<std::pair<E, std::string>> prod(count * G, {id, {}});
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t g = 0; g < G; ++g) {
                    E e = Ops::mul(b.elements[layer_begin + i], gen_el[g]);
                    std::string k = Ops::key(e);
                    prod[i * G + g] = {std::move(e), std::move(k)};
                }
        };
        if (threads <= 1 || count < 64) {
            work(0, count);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (count + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t lo = std::min(count, t * chunk);
                const std::size_t hi = std::min(count, lo + chunk);
                pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        b.nbr.resize(layer_end * G, -1);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t g = 0; g < G; ++g) {
                auto& [e, k] = prod[i * G + g];
                auto it = b.index.find(k);
                std::int32_t target = -1;
                if (it != b.index.end()) {
                    target = static_cast<std::int32_t>(it->second);
                } else if (d < radius) {
                    if (b.elements.size() >= cap_nodes)
                        throw Error(ErrorKind::MemoryBudgetExceeded, "ball exceeds node cap " + std::to_string(cap_nodes));
                    target = static_cast<std::int32_t>(b.elements.size());
                    b.index.emplace(std::move(k), static_cast<std::uint32_t>(target));
                    b.elements.push_back(std::move(e));
                    b.dist.push_back(d + 1);
                    b.parent.push_back(static_cast<std::int32_t>(layer_begin + i));
                    b.via.push_back(static_cast<std::int16_t>(g));
                }
                b.nbr[(layer_begin + i) * G + g] = target;
            }
        layer_begin = layer_end;
    }
    b.nbr.resize(b.elements.size() * G, -1);
    return b;
}

using ElementBall = Ball<Element>;
ElementBall build_ball(const GroupSpec& group, int radius, std::size_t cap_nodes = 5'000'000, unsigned threads = 1);

// Exact word length over `gens` by breadth-first search; nullopt beyond `cap`.
std::optional<int> bfs_word_length(const Element& g, const std::vector<GeneratorToken>& gens, int cap,
                                   std::size_t cap_nodes = 5'000'000);
// Independent oracle: iterative-deepening depth-first search without hashing.
std::optional<int> iddfs_word_length(const Element& g, const std::vector<GeneratorToken>& gens, int cap);

void write_ball_csv(std::ostream& out, const std::vector<std::size_t>& shells);
template <class E>
void write_ball_dot(std::ostream& out, const Ball<E>& b, int max_radius) {
    out << "digraph ball {\n";
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b.dist[i] <= max_radius) out << "  v" << i << " [label=\"" << b.dist[i] << "\"];\n";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b.dist[i] > max_radius) continue;
        for (std::size_t g = 0; g < b.gens.size(); g += 2) {
            auto j = b.neighbour(i, g);
            if (j >= 0 && b.dist[static_cast<std::size_t>(j)] <= max_radius)
                out << "  v" << i << " -> v" << j << " [label=\"" << b.gens[g].name() << "\"];\n";
        }
    }
    out << "}\n";
}

struct Constant {
    double value = 0;
    std::string provenance = "assumed";  // "fitted" or "assumed"
    std::string witness;                 // element attaining the fit
};

struct MetricConstants {
    std::map<std::string, Constant> values;  // c, C, C', c'_D, c_D, C1..C4
    double get(const std::string& name) const;
    void set(const std::string& name, double v, const std::string& provenance, const std::string& witness = "");
    std::string report() const;
};

struct CaretBounds {
    double lower = 0;
    std::optional<double> upper;
};
CaretBounds caret_bounds(const Element& g, const MetricConstants& k);
std::size_t table_size(const Element& g);

struct LengthSample {
    std::string element;
    int length;     // exact word length
    double N;       // reduced leaf count (table size for V_n)
};
std::vector<LengthSample> samples_of(const ElementBall& b);
// c, C for F_n/T_n; c, C' for T_n; c, c'_D, c_D for V_n. Identity excluded.
MetricConstants fit_constants(const std::vector<LengthSample>& samples, const GroupSpec& group);

}  // namespace thompson
