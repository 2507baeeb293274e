#include "thompson/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "detour_internal.hpp"
#include "thompson/error.hpp"

namespace thompson {

namespace {

GroupSpec spec_of(const Element& g) {
    Family f = g.group() == GroupTag::F ? Family::F : g.group() == GroupTag::T ? Family::T : Family::V;
    return GroupSpec{f, g.n()};
}

struct TreeTraits {
    using E = Element;
    static E parse(const std::string& s) { return parse_element(s); }
    static E gen(const GeneratorToken& t, const GroupSpec& g) { return ElementOps::generator(t, g); }
    static E mul(const E& a, const E& b) { return compose(a, b); }
    static std::string key(const E& e) { return thompson::key(e); }
    static E eval(const GroupWord& w) { return evaluate(w); }
    static std::string print(const E& e) { return to_string(e); }
    static double lower(const E& e, const DetourParams& p) { return caret_bounds(e, p.constants).lower; }
};

struct BraidTraits {
    using E = BraidedElement;
    static E parse(const std::string& s) { return parse_braided(s); }
    static E gen(const GeneratorToken& t, const GroupSpec& g) { return BraidedOps::generator(t, g); }
    static E mul(const E& a, const E& b) { return compose_bv(a, b); }
    static std::string key(const E& e) { return key_bv(e); }
    static E eval(const GroupWord& w) { return evaluate_braided(w); }
    static std::string print(const E& e) { return to_string(reduce_bv(e)); }
    static double lower(const E& e, const DetourParams& p) {
        BraidedElement r = reduce_bv(e);
        if (r.leaf_count() == 1 && r.braid().letters.empty()) return 0;
        const double N = static_cast<double>(r.leaf_count());
        const double K = static_cast<double>(crossing_count_K(r));
        const double s = static_cast<double>(max_pair_crossings(r));
        return std::max(p.constants.get("C1") * std::max(N, std::cbrt(K)), p.constants.get("C2") * std::max(N, s));
    }
};

double budget_of(const DetourCertificate& c, long long hl, long long tl) {
    const DetourParams& p = c.params;
    const double lin = 4 * p.M + 2 * p.Q + 2;
    if (!c.group.braided()) {
        const double k = lin / p.constants.get("c");
        if (c.kind == "path") return (k + 2 * p.Q) * static_cast<double>(hl + tl) + 6;
        return k * static_cast<double>(hl) + 2;
    }
    const double D = p.D > 0 ? p.D : lin / p.constants.get("C2");
    const double x = static_cast<double>(hl);
    return c.group.family == Family::BV ? D * x * x * x * x : D * x;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

template <class T>
bool verify_impl(DetourCertificate& c, const Ball<typename T::E>* ball, bool fresh) {
    using E = typename T::E;
    const GroupSpec G = c.group;
    if (ball && !(ball->group == G)) ball = nullptr;
    bool ok = (ball ? ball->radius : -1) == c.ball_radius || fresh;
    c.ball_radius = ball ? ball->radius : -1;

    GroupWord cat{G, {}};
    for (const auto& part : c.parts) cat.append(part.word);
    if (cat.tokens != c.word.tokens) ok = false;

    const E h = T::parse(c.base);
    if (T::key(T::eval(c.base_word)) != T::key(h)) ok = false;
    auto length_of = [&](const E& e, long long fallback, bool& exact) {
        exact = false;
        if (ball)
            if (auto i = ball->find_key(T::key(e))) {
                exact = true;
                return static_cast<long long>(ball->dist[*i]);
            }
        return fallback;
    };
    bool hex = false;
    const long long hl = length_of(h, c.base_word.length(), hex);
    if (!fresh && (hl != c.base_length || hex != c.base_length_exact)) ok = false;
    c.base_length = hl;
    c.base_length_exact = hex;

    auto bound = [&](const E& e) {
        PrefixBound b;
        if (ball)
            if (auto i = ball->find_key(T::key(e))) {
                b.exact = true;
                b.bound = ball->dist[*i];
                return b;
            }
        b.bound = std::max(T::lower(e, c.params), ball ? ball->radius + 1.0 : 0.0);
        return b;
    };

    std::vector<PrefixBound> pb;
    E cur = h;
    pb.push_back(bound(cur));
    long long pos = 0;
    for (auto t : c.word.tokens) {
        const int e = t.exponent;
        t.exponent = e < 0 ? -1 : 1;
        const E step = T::gen(t, G);
        for (int r = 0; r < std::abs(e); ++r) {
            cur = T::mul(cur, step);
            PrefixBound b = bound(cur);
            b.position = ++pos;
            pb.push_back(b);
        }
    }

    E expected = h;
    long long tl = 0;
    if (c.kind == "path") {
        expected = T::parse(c.target);
        bool tex = false;
        tl = length_of(expected, c.target_length, tex);
        if (!fresh && tl != c.target_length) ok = false;
        c.target_length = tl;
    } else {
        auto it = std::find_if(c.parts.begin(), c.parts.end(), [](const DetourPart& p) { return p.name == "w4"; });
        if (it == c.parts.end()) {
            ok = false;
        } else {
            expected = T::eval(it->word);
        }
    }
    const bool endpoint_ok = T::key(cur) == T::key(expected);
    double avoided = std::numeric_limits<double>::infinity();
    for (const auto& b : pb) avoided = std::min(avoided, b.bound);
    const double required = c.params.effective_delta(G) * static_cast<double>(c.kind == "path" ? std::min(hl, tl) : hl);
    const long long total = c.word.length();
    const double budget = budget_of(c, hl, tl);

    if (!fresh) {
        if (c.prefix_bounds.size() != pb.size()) {
            ok = false;
        } else {
            for (std::size_t i = 0; i < pb.size(); ++i)
                if (pb[i].position != c.prefix_bounds[i].position || pb[i].exact != c.prefix_bounds[i].exact ||
                    !near(pb[i].bound, c.prefix_bounds[i].bound))
                    ok = false;
        }
        if (!near(avoided, c.avoided) || !near(required, c.required) || total != c.total_length ||
            !near(budget, c.budget) || endpoint_ok != c.endpoint_ok)
            ok = false;
    }
    c.prefix_bounds = std::move(pb);
    c.avoided = avoided;
    c.required = required;
    c.total_length = total;
    c.budget = budget;
    c.endpoint_ok = endpoint_ok;
    c.endpoint = T::print(cur);
    c.pass = ok && endpoint_ok && static_cast<double>(total) <= budget + 1e-9 && avoided >= required;
    return c.pass;
}

// Shortest ball word u (whose path from h1 stays at distance ≥ floor) making h1·u send
// the last source leaf to the last target leaf; a conjugated rotation otherwise.
GroupWord rotation_fix(const Element& h1, const GroupSpec& G, const ElementBall* ball, const DetourParams& params,
                       double floor) {
    GroupWord none{G, {}};
    if (G.family == Family::F) return none;
    const Element r = reduce(h1);
    const std::size_t m = r.leaf_count();
    const std::size_t s = r.perm()[m - 1];
    if (s == m - 1) return none;
    auto far = [&](const Element& e) {
        if (auto i = ball->find_key(key(e))) return ball->dist[*i] >= floor;
        return std::max(TreeTraits::lower(e, params), ball->radius + 1.0) >= floor;
    };
    if (ball) {
        const std::size_t scan = std::min<std::size_t>(ball->size(), 20000);
        for (std::uint32_t u = 1; u < scan; ++u) {
            const Element t = reduce(compose(r, ball->elements[u]));
            if (t.perm()[t.leaf_count() - 1] != t.leaf_count() - 1) continue;
            const GroupWord w = ball->word(u);
            Element cur = r;
            bool ok = true;
            for (const auto& tok : w.tokens) {
                const Element step = ElementOps::generator(tok, G);
                for (int e = 0; ok && e < std::abs(tok.exponent); ++e) {
                    cur = compose(cur, step);
                    ok = far(cur);
                }
                if (!ok) break;
            }
            if (ok) return w;
        }
    }
    Perm p(m);
    const std::size_t k = (m - 1 + m - s) % m;
    for (std::size_t j = 0; j < m; ++j) p[j] = static_cast<std::uint32_t>((j + k) % m);
    GroupWord w = rewrite_to_finite(word_of(make_element(G.tag(), r.target(), p, r.target())));
    w.group = G;
    return w;
}

GroupWord concat(const GroupSpec& G, const std::vector<DetourPart>& parts) {
    GroupWord w{G, {}};
    for (const auto& p : parts) w.append(p.word);
    return w;
}

long long ceil_mul(double a, double b) { return static_cast<long long>(std::ceil(a * b - 1e-9)); }

}  // namespace

double DetourParams::lower_constant(const GroupSpec& g) const { return constants.get(g.braided() ? "C2" : "c"); }

double DetourParams::effective_delta(const GroupSpec& g) const {
    return delta > 0 ? delta : lower_constant(g) / (8 * M);
}

void DetourParams::validate(const GroupSpec& g) const {
    if (!(M > 0) || !(Q > 0) || delta < 0) throw Error(ErrorKind::ExceedsCap, "M and Q must be positive");
    if (scaled) return;
    if (g.braided()) {
        const double need = 10 * constants.get("C4") / constants.get("C1");
        if (M < need) throw Error(ErrorKind::ExceedsCap, "M below 10*C4/C1; pass --scaled for desk parameters");
        return;
    }
    const double c = constants.get("c");
    const double C = constants.values.count("C") ? constants.get("C") : constants.get("c_D");
    const double nm1 = g.n - 1;
    if (M < 10 * C / (c * nm1)) throw Error(ErrorKind::ExceedsCap, "M below 10C/(c(n-1)); pass --scaled");
    if (Q < 10 * M / (c * c * nm1)) throw Error(ErrorKind::ExceedsCap, "Q below 10M/(c^2(n-1)); pass --scaled");
}

std::string DetourCertificate::summary() const {
    std::ostringstream s;
    s << "avoided=" << avoided << " length=" << total_length << " budget=" << budget << (pass ? " PASS" : " FAIL");
    return s.str();
}

GroupWord omega4_word(const GroupSpec& g, long long L) {
    const int last = g.braided() ? 1 : g.n - 1;
    return free_reduce(x_power(g, 0, L) * x_power(g, last, -1) * x_power(g, 0, 1 - L));
}

bool verify_avoidance(DetourCertificate& c, const ElementBall* ball) {
    return verify_impl<TreeTraits>(c, ball, false);
}

bool verify_avoidance_braided(DetourCertificate& c, const BraidedBall* ball) {
    return verify_impl<BraidTraits>(c, ball, false);
}

bool verify_fresh(DetourCertificate& c, const ElementBall* ball) { return verify_impl<TreeTraits>(c, ball, true); }
bool verify_fresh_braided(DetourCertificate& c, const BraidedBall* ball) {
    return verify_impl<BraidTraits>(c, ball, true);
}

DetourCertificate build_detour_fn(const Element& h0, const DetourParams& p, const ElementBall* ball) {
    const Element h = reduce(h0);
    const GroupSpec G = spec_of(h);
    p.validate(G);
    const int n = G.n;
    if (ball && !(ball->group == G)) ball = nullptr;
    if (leaf_count_N(h) < static_cast<std::size_t>(3 * n - 2))
        throw Error(ErrorKind::TooFewCarets, "detour needs N(h) >= 3n-2");

    GroupWord wh{G, {}};
    std::optional<std::uint32_t> hi = ball ? ball->find_key(key(h)) : std::nullopt;
    if (hi) {
        wh = ball->word(*hi);
    } else if (G.family != Family::V || is_cyclic_perm(h.perm())) {
        wh = rewrite_to_finite(word_of(h));
        wh.group = G;
    } else {
        throw Error(ErrorKind::Omega3BudgetExceeded, "no word for h inside the ball");
    }
    const long long hl = hi ? ball->dist[*hi] : wh.length();

    const GroupWord rho = rotation_fix(h, G, ball, p, std::max(1.0, p.effective_delta(G) * static_cast<double>(hl)));
    Element h1 = reduce(compose(h, evaluate(rho)));
    GroupWord w1{G, {}};
    if (h1.target().leaf_depths().front() == 1)
        w1 = x_power(G, 0, 2) * x_power(G, n - 1, -1) * x_power(G, 0, -1);
    h1 = compose(h1, evaluate(w1));

    const long long K = ceil_mul(p.M, static_cast<double>(leaf_count_N(h1)));
    const GroupWord w2 = x_power(G, 0, -K) * x_power(G, n - 1, 1) * x_power(G, 0, K);
    GroupWord w3 = free_reduce((wh * rho * w1).inverse());
    if (ball)
        if (auto u = ball->find_key(key(invert(h1)))) w3 = ball->word(*u);
    const GroupWord w4 = omega4_word(G, std::max(1LL, ceil_mul(p.Q, static_cast<double>(hl))));
    const GroupWord w5 = free_reduce(w3.inverse() * w2.inverse() * w3);

    DetourCertificate c;
    c.group = G;
    c.base = to_string(h);
    c.base_word = wh;
    c.params = p;
    c.parts = {{"rho", rho}, {"w1", w1}, {"w2", w2}, {"w3", w3}, {"w4", w4}, {"w5", w5}};
    c.word = concat(G, c.parts);
    verify_fresh(c, ball);
    return c;
}

DetourCertificate connect(const Element& g1, const Element& g2, const DetourParams& p, const ElementBall* ball) {
    DetourCertificate a = build_detour_fn(g1, p, ball);
    DetourCertificate b = build_detour_fn(g2, p, ball);
    const bool swapped = a.base_length > b.base_length;
    if (swapped) std::swap(a, b);
    auto L_of = [](const DetourCertificate& c) {
        const auto& w = c.parts[4].word;
        return w.tokens.empty() ? 0LL : static_cast<long long>(w.tokens.front().exponent);
    };
    const GroupSpec G = a.group;
    const long long L1 = L_of(a), L2 = L_of(b);
    const int last = G.n - 1;
    const GroupWord bridge = free_reduce(x_power(G, 0, L1 - 1) * x_power(G, last, 1) * x_power(G, 0, L2 - L1) *
                                         x_power(G, last, -1) * x_power(G, 0, 1 - L2));
    DetourCertificate c;
    c.kind = "path";
    c.group = G;
    c.base = a.base;
    c.base_word = a.base_word;
    c.target = b.base;
    c.target_length = b.base_length;
    c.params = p;
    c.parts = {{"detour1", a.word}, {"bridge", bridge}, {"detour2^-1", b.word.inverse()}};
    c.word = concat(G, c.parts);
    verify_fresh(c, ball);
    return c;
}

}  // namespace thompson
