#include "thompson/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace thompson {

std::vector<GeneratorToken> standard_generators(const GroupSpec& g) {
    std::vector<GeneratorToken> out;
    auto tok = [](GenKind k, int i, int j = 0) { return GeneratorToken{k, i, j, 1}; };
    switch (g.family) {
        case Family::F:
        case Family::T:
        case Family::V:
            for (int k = 0; k < g.n; ++k) out.push_back(tok(GenKind::X, k));
            if (g.family != Family::F) out.push_back(tok(GenKind::C, 0));
            if (g.family == Family::V) out.push_back(tok(GenKind::Pi, 0));
            break;
        case Family::BV:
            out = {tok(GenKind::X, 0), tok(GenKind::X, 1), tok(GenKind::Sigma, 1), tok(GenKind::Tau, 1)};
            break;
        case Family::BF:
            out = {tok(GenKind::X, 0),       tok(GenKind::X, 1),       tok(GenKind::Alpha, 1, 2),
                   tok(GenKind::Alpha, 1, 3), tok(GenKind::Alpha, 2, 3), tok(GenKind::Alpha, 2, 4),
                   tok(GenKind::Beta, 1, 2),  tok(GenKind::Beta, 1, 3),  tok(GenKind::Beta, 2, 3),
                   tok(GenKind::Beta, 2, 4)};
            break;
    }
    return out;
}

ElementBall build_ball(const GroupSpec& group, int radius, std::size_t cap_nodes, unsigned threads) {
    return enumerate_ball<ElementOps>(group, standard_generators(group), radius, cap_nodes, threads);
}

namespace {

GroupSpec spec_of(const Element& g) {
    Family f = g.group() == GroupTag::F ? Family::F : g.group() == GroupTag::T ? Family::T : Family::V;
    return GroupSpec{f, g.n()};
}

}  // namespace

std::optional<int> bfs_word_length(const Element& g, const std::vector<GeneratorToken>& gens, int cap,
                                   std::size_t cap_nodes) {
    const GroupSpec spec = spec_of(g);
    const Element target = reduce(g);
    const std::string want = key(target);
    auto all = with_inverses(gens);
    std::vector<Element> gen_el;
    for (const auto& t : all) gen_el.push_back(ElementOps::generator(t, spec));
    Element id = identity_element(g.group(), Arity(g.n()));
    if (key(id) == want) return 0;
    std::unordered_map<std::string, int> seen{{key(id), 0}};
    std::vector<Element> frontier{id};
    for (int d = 1; d <= cap; ++d) {
        std::vector<Element> next;
        for (const auto& e : frontier)
            for (const auto& s : gen_el) {
                Element p = compose(e, s);
                std::string k = key(p);
                if (k == want) return d;
                if (seen.emplace(std::move(k), d).second) {
                    if (seen.size() > cap_nodes) throw Error(ErrorKind::MemoryBudgetExceeded, "word-length search exceeds node cap");
                    next.push_back(std::move(p));
                }
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

namespace {

bool dls(const Element& cur, int depth, int last, const std::vector<Element>& gen_el, const std::string& want) {
    if (depth == 0) return key(cur) == want;
    for (std::size_t s = 0; s < gen_el.size(); ++s) {
        if (last >= 0 && (s ^ 1U) == static_cast<std::size_t>(last)) continue;  // skip s s^-1
        if (dls(compose(cur, gen_el[s]), depth - 1, static_cast<int>(s), gen_el, want)) return true;
    }
    return false;
}

}  // namespace

std::optional<int> iddfs_word_length(const Element& g, const std::vector<GeneratorToken>& gens, int cap) {
    const GroupSpec spec = spec_of(g);
    const std::string want = key(reduce(g));
    std::vector<Element> gen_el;
    for (const auto& t : with_inverses(gens)) gen_el.push_back(ElementOps::generator(t, spec));
    Element id = identity_element(g.group(), Arity(g.n()));
    for (int d = 0; d <= cap; ++d)
        if (dls(id, d, -1, gen_el, want)) return d;
    return std::nullopt;
}

void write_ball_csv(std::ostream& out, const std::vector<std::size_t>& shells) {
    out << "radius,count\n";
    for (std::size_t r = 0; r < shells.size(); ++r) out << r << "," << shells[r] << "\n";
}

double MetricConstants::get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw Error(ErrorKind::EmptySample, "constant " + name + " not set");
    return it->second.value;
}

void MetricConstants::set(const std::string& name, double v, const std::string& provenance, const std::string& witness) {
    values[name] = Constant{v, provenance, witness};
}

std::string MetricConstants::report() const {
    std::ostringstream s;
    s << std::setprecision(6);
    for (const auto& [name, c] : values) {
        s << name << "=" << c.value << " (" << c.provenance;
        if (!c.witness.empty()) s << ", tight at " << c.witness;
        s << ")\n";
    }
    return s.str();
}

CaretBounds caret_bounds(const Element& g, const MetricConstants& k) {
    const double n = static_cast<double>(leaf_count_N(g));
    CaretBounds b;
    if (n <= 1) {
        b.upper = 0.0;
        return b;
    }
    b.lower = k.get("c") * n;
    if (g.group() != GroupTag::V) b.upper = k.get("C") * n;
    return b;
}

std::size_t table_size(const Element& g) { return leaf_count_N(g); }

std::vector<LengthSample> samples_of(const ElementBall& b) {
    std::vector<LengthSample> out;
    out.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        out.push_back({to_string(b.elements[i]), b.dist[i], static_cast<double>(b.elements[i].leaf_count())});
    return out;
}

MetricConstants fit_constants(const std::vector<LengthSample>& samples, const GroupSpec& group) {
    struct Extreme {
        double v;
        std::string at;
    };
    Extreme lo{std::numeric_limits<double>::infinity(), ""}, hi{0, ""}, inv{0, ""};
    Extreme dlo{std::numeric_limits<double>::infinity(), ""}, dhi{0, ""};
    std::size_t used = 0;
    for (const auto& s : samples) {
        if (s.N <= 1) continue;
        ++used;
        const double r = s.length / s.N;
        if (r < lo.v) lo = {r, s.element};
        if (r > hi.v) hi = {r, s.element};
        if (s.N / s.length > inv.v) inv = {s.N / s.length, s.element};
        if (group.family == Family::V) {
            const double env = s.N * std::log2(s.N);
            if (r < dlo.v) dlo = {r, s.element};
            if (s.length / env > dhi.v) dhi = {s.length / env, s.element};
        }
    }
    if (used < 2) throw Error(ErrorKind::EmptySample, "need at least two non-identity samples to fit constants");
    MetricConstants k;
    k.set("c", lo.v, "fitted", lo.at);
    if (group.family != Family::V) k.set("C", hi.v, "fitted", hi.at);
    if (group.family == Family::T) {
        const bool upper = hi.v >= inv.v;
        k.set("C'", std::max(hi.v, inv.v), "fitted", upper ? hi.at : inv.at);
    }
    if (group.family == Family::V) {
        k.set("c'_D", dlo.v, "fitted", dlo.at);
        k.set("c_D", dhi.v, "fitted", dhi.at);
    }
    return k;
}

}  // namespace thompson
