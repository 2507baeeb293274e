#include <algorithm>
#include <cmath>
#include <limits>

#include "detour_internal.hpp"
#include "thompson/error.hpp"

namespace thompson {

BraidedBall build_braided_ball(const GroupSpec& group, int radius, std::size_t cap_nodes, unsigned threads) {
    return enumerate_ball<BraidedOps>(group, standard_generators(group), radius, cap_nodes, threads);
}

MetricConstants fit_braided_constants(const BraidedBall& ball) {
    struct Row {
        double len, N, K, s;
        std::string at;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        if (ball.dist[i] == 0) continue;
        const BraidedElement r = reduce_bv(ball.elements[i]);
        rows.push_back({static_cast<double>(ball.dist[i]), static_cast<double>(r.leaf_count()),
                        static_cast<double>(crossing_count_K(r)), static_cast<double>(max_pair_crossings(r)),
                        to_string(r)});
    }
    if (rows.empty()) throw Error(ErrorKind::EmptySample, "ball has no non-identity members");
    auto arg = [&](auto f, bool minimise) {
        double best = minimise ? std::numeric_limits<double>::infinity() : 0;
        std::string at;
        for (const auto& r : rows) {
            const double v = f(r);
            if (minimise ? v < best : v > best) {
                best = v;
                at = r.at;
            }
        }
        return std::pair{best, at};
    };
    MetricConstants k;
    auto [c2, w2] = arg([](const Row& r) { return r.len / std::max(r.N, r.s); }, true);
    k.set("C2", c2, "fitted", w2);
    auto [c1, w1] = arg([c2 = c2](const Row& r) { return c2 * std::max(r.N, r.s) / std::max(r.N, std::cbrt(r.K)); }, true);
    k.set("C1", c1, "fitted", w1);
    auto [c3, w3] = arg([](const Row& r) { return r.len / (r.N + r.N * r.K); }, false);
    k.set("C3", c3, "fitted", w3);
    auto [c4, w4] = arg([c3 = c3](const Row& r) { return c3 * (r.N + r.N * r.K) / (r.N + r.N * r.N * r.N * r.s); },
                        false);
    k.set("C4", c4, "fitted", w4);
    return k;
}

namespace {

GroupWord positive_bv(const NaryTree& t) {
    GroupWord w = positive_word(t);
    w.group = GroupSpec{Family::BV, 2};
    return w;
}

bool last_fixed(const BraidedElement& g) {
    const BraidedElement r = reduce_bv(g);
    const std::size_t m = r.leaf_count();
    return permutation_of(r.braid())[m - 1] == m - 1;
}

// Makes the strand leaving the last source leaf end at the last target leaf:
// the shortest ball word whose path stays at distance ≥ floor, else an explicit braid.
GroupWord rotation_fix_bv(const BraidedElement& h, const BraidedBall* ball, double floor) {
    const GroupSpec G{Family::BV, 2};
    const BraidedElement r = reduce_bv(h);
    if (last_fixed(r)) return GroupWord{G, {}};
    if (ball) {
        auto far = [&](const BraidedElement& e) {
            if (auto i = ball->find_key(key_bv(e))) return ball->dist[*i] >= floor;
            return ball->radius + 1.0 >= floor;
        };
        const std::size_t scan = std::min<std::size_t>(ball->size(), 4000);
        for (std::uint32_t u = 1; u < scan; ++u) {
            if (!last_fixed(compose_bv(r, ball->elements[u]))) continue;
            const GroupWord w = ball->word(u);
            BraidedElement cur = r;
            bool ok = true;
            for (const auto& tok : w.tokens) {
                const GeneratorToken unit{tok.kind, tok.i, tok.j, tok.exponent < 0 ? -1 : 1};
                const BraidedElement step = BraidedOps::generator(unit, G);
                for (int e = 0; ok && e < std::abs(tok.exponent); ++e) {
                    cur = compose_bv(cur, step);
                    ok = far(cur);
                }
                if (!ok) break;
            }
            if (ok) return w;
        }
    }
    const int m = static_cast<int>(r.leaf_count());
    const int j = static_cast<int>(permutation_of(r.braid())[static_cast<std::size_t>(m - 1)]);
    GroupWord mid{G, {}};
    for (int k = j + 1; k <= m - 1; ++k) mid.tokens.push_back({k == m - 1 ? GenKind::Tau : GenKind::Sigma, k, 0, 1});
    GroupWord p = positive_bv(r.target());
    return rewrite_bv_to_finite(p * mid * p.inverse());
}

long long ceil_mul(double a, double b) { return static_cast<long long>(std::ceil(a * b - 1e-9)); }

DetourCertificate braided_detour(const BraidedElement& h0, const GroupWord& w_h, const DetourParams& p,
                                 const BraidedBall* ball, Family fam) {
    const GroupSpec G{fam, 2};
    const BraidedElement h = reduce_bv(with_group(h0, fam));
    p.validate(G);
    if (h.leaf_count() < 4) throw Error(ErrorKind::TooFewCarets, "detour needs N(h) >= 4");
    if (ball && !(ball->group == G)) ball = nullptr;

    GroupWord wh = w_h;
    wh.group = G;
    long long hl = wh.length();
    if (ball)
        if (auto i = ball->find_key(key_bv(h))) {
            wh = ball->word(*i);
            hl = ball->dist[*i];
        }
    if (!equal_bv(evaluate_braided(wh), h))
        throw Error(ErrorKind::Omega3BudgetExceeded, "supplied word does not represent h");

    GroupWord rho{G, {}};
    if (fam == Family::BV)
        rho = rotation_fix_bv(h, ball, std::max(1.0, p.effective_delta(G) * static_cast<double>(hl)));
    BraidedElement h1 = reduce_bv(compose_bv(h, evaluate_braided(rho)));
    GroupWord w1{G, {}};
    if (h1.target().leaf_depths().front() == 1) w1 = x_power(G, 0, 2) * x_power(G, 1, -1) * x_power(G, 0, -1);
    h1 = compose_bv(h1, evaluate_braided(w1));
    const long long K = ceil_mul(p.M, static_cast<double>(leaf_count_N(h1)));
    const GroupWord w2 = x_power(G, 0, -K) * x_power(G, 1, 1) * x_power(G, 0, K);
    GroupWord w3 = free_reduce((wh * rho * w1).inverse());
    if (ball)
        if (auto u = ball->find_key(key_bv(invert_bv(h1)))) w3 = ball->word(*u);
    const GroupWord w4 = omega4_word(G, std::max(1LL, ceil_mul(p.Q, static_cast<double>(hl))));
    const GroupWord w5 = free_reduce(w3.inverse() * w2.inverse() * w3);

    DetourCertificate c;
    c.group = G;
    c.base = to_string(h);
    c.base_word = wh;
    c.params = p;
    c.parts = {{"rho", rho}, {"w1", w1}, {"w2", w2}, {"w3", w3}, {"w4", w4}, {"w5", w5}};
    c.word = GroupWord{G, {}};
    for (const auto& part : c.parts) c.word.append(part.word);
    verify_fresh_braided(c, ball);
    return c;
}

}  // namespace

DetourCertificate build_detour_bv(const BraidedElement& h, const GroupWord& w_h, const DetourParams& p,
                                  const BraidedBall* ball) {
    return braided_detour(h, w_h, p, ball, Family::BV);
}

DetourCertificate build_detour_bf(const BraidedElement& h, const GroupWord& w_h, const DetourParams& p) {
    if (!is_pure(h.braid())) throw Error(ErrorKind::NotPure, "BF detour needs a pure diagram");
    return braided_detour(h, w_h, p, nullptr, Family::BF);
}

}  // namespace thompson
