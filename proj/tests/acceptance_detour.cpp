#include <cmath>
#include <functional>
#include <random>

#include "acceptance.hpp"

namespace acc {

using namespace thompson;

namespace {

const GroupSpec F2{Family::F, 2};

DetourParams desk_params(const MetricConstants& k) {
    DetourParams p;
    p.M = 1;
    p.Q = 4;
    p.scaled = true;
    p.constants = k;
    return p;
}

long long omega4_exponent(const DetourCertificate& c) {
    return std::max(1LL, static_cast<long long>(std::ceil(c.params.Q * static_cast<double>(c.base_length) - 1e-9)));
}

// Walks the certificate word and checks that every prefix inside the ball carries its exact distance.
bool exact_inside_ball(const DetourCertificate& c, const ElementBall& b) {
    std::map<long long, const PrefixBound*> at;
    for (const auto& pb : c.prefix_bounds) at[pb.position] = &pb;
    Element cur = reduce(evaluate(c.base_word));
    long long pos = 0;
    auto check = [&] {
        auto it = at.find(pos);
        if (it == at.end()) return false;
        auto i = b.find_key(key(cur));
        if (!i) return !it->second->exact;
        return it->second->exact && std::abs(it->second->bound - b.dist[*i]) < kEps;
    };
    if (!check()) return false;
    for (const auto& t : c.word.tokens) {
        const GeneratorToken unit{t.kind, t.i, t.j, t.exponent < 0 ? -1 : 1};
        const Element step = ElementOps::generator(unit, F2);
        for (int e = 0; e < std::abs(t.exponent); ++e) {
            cur = reduce(compose(cur, step));
            ++pos;
            if (!check()) return false;
        }
    }
    return true;
}

std::vector<DetourCertificate> certificates_f2(Report& rep, const MetricConstants& k) {
    const ElementBall& b = f2_ball9();
    const DetourParams p = desk_params(k);
    Timer clock;
    std::vector<DetourCertificate> certs;
    long fails = 0, inexact = 0, over = 0, endpoint = 0;
    double worst_ratio = 1e9;
    for (std::uint32_t i = 0; i < b.size(); ++i) {
        if (b.dist[i] > 7 || b.elements[i].leaf_count() < 4) continue;
        DetourCertificate c = build_detour_fn(b.elements[i], p, &b);
        DetourCertificate v = c;
        if (!verify_avoidance(v, &b)) ++fails;
        if (!exact_inside_ball(c, b)) ++inexact;
        const double cap = ((4 * p.M + 2 * p.Q + 2) / k.get("c")) * static_cast<double>(c.base_length) + 2;
        if (static_cast<double>(c.total_length) > cap + kEps) ++over;
        if (reduce(evaluate(c.base_word * c.word)) != reduce(evaluate(omega4_word(F2, omega4_exponent(c))))) ++endpoint;
        worst_ratio = std::min(worst_ratio, c.avoided / static_cast<double>(c.base_length));
        certs.push_back(std::move(c));
    }
    rep.set(7, fails == 0 && inexact == 0 && over == 0 && !certs.empty(),
            std::to_string(certs.size()) + " F2 certificates (|h| <= 7, >= 3 carets, M=1, Q=4, delta=c/8M=" +
                fmt(p.effective_delta(F2)) + "): verify failures " + std::to_string(fails) +
                ", prefixes lacking exact distance " + std::to_string(inexact) + ", over budget " + std::to_string(over),
            {"worst avoided/|h| = " + fmt(worst_ratio) + "; " + fmt(clock.seconds(), 3) + " s"});
    rep.note(8, "F2: " + std::to_string(certs.size()) + " certificates, endpoint mismatches " + std::to_string(endpoint));
    if (endpoint) rep.set(8, false, "endpoint mismatch in F2 certificates");
    return certs;
}

GroupWord random_word(const GroupSpec& g, int len, std::mt19937_64& rng) {
    const auto gens = standard_generators(g);
    GroupWord w{g, {}};
    for (int k = 0; k < len; ++k) {
        GeneratorToken t = gens[rng() % gens.size()];
        t.exponent = rng() % 2 ? 1 : -1;
        w.append(t);
    }
    return free_reduce(w);
}

void braided_endpoints(Report& rep, long f2_endpoint_bad) {
    std::mt19937_64 rng(121);
    long bv_bad = 0, bv_fail = 0, bf_bad = 0, bf_fail = 0;
    int bv_made = 0, bf_made = 0;
    double bv_ratio = 0, bf_ratio = 0;
    {
        const GroupSpec G{Family::BV, 2};
        BraidedBall ball = build_braided_ball(G, 5);
        DetourParams p = desk_params(fit_braided_constants(ball));
        while (bv_made < 100) {
            GroupWord w = random_word(G, 3 + static_cast<int>(rng() % 4), rng);
            BraidedElement h = reduce_bv(evaluate_braided(w));
            if (h.leaf_count() < 4) continue;
            ++bv_made;
            DetourCertificate c = build_detour_bv(h, w, p, &ball);
            if (!c.pass) ++bv_fail;
            const BraidedElement end = evaluate_braided(c.base_word * c.word);
            if (!equal_bv(end, evaluate_braided(omega4_word(G, omega4_exponent(c))))) ++bv_bad;
            bv_ratio = std::max(bv_ratio, static_cast<double>(c.total_length) / std::pow(double(c.base_length), 4));
        }
    }
    {
        const GroupSpec G{Family::BF, 2};
        DetourParams p = desk_params(fit_braided_constants(build_braided_ball(G, 3)));
        while (bf_made < 100) {
            GroupWord w = random_word(G, 2 + static_cast<int>(rng() % 3), rng);
            BraidedElement h = reduce_bv(evaluate_braided(w));
            if (h.leaf_count() < 4) continue;
            ++bf_made;
            DetourCertificate c = build_detour_bf(h, w, p);
            if (!c.pass) ++bf_fail;
            const BraidedElement end = evaluate_braided(c.base_word * c.word);
            if (!equal_bv(end, evaluate_braided(omega4_word(G, omega4_exponent(c))))) ++bf_bad;
            bf_ratio = std::max(bf_ratio, static_cast<double>(c.total_length) / static_cast<double>(c.base_length));
        }
    }
    rep.note(8, "BV: 100 certificates (ball radius 5), endpoint mismatches " + std::to_string(bv_bad) +
                    ", certificates failing " + std::to_string(bv_fail) + ", max total/|h|^4 " + fmt(bv_ratio));
    rep.note(8, "BF: 100 certificates (constants from the radius-3 ball), endpoint mismatches " + std::to_string(bf_bad) +
                    ", certificates failing " + std::to_string(bf_fail) + ", max total/|h| " + fmt(bf_ratio));
    rep.set(8, f2_endpoint_bad == 0 && bv_bad == 0 && bf_bad == 0,
            "endpoint equals the omega4 element for every F2, BV and BF certificate");
}

void divergence_trend(Report& rep, const MetricConstants& k) {
    const ElementBall& b = f2_ball9();
    bool ok = true;
    for (double delta : {0.25, 0.5}) {
        ProfileReport r = divergence_profile(2, 8, delta, b, 6, 20000, 131);
        bool mono = true;
        std::size_t unreachable = 0;
        std::string row;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            unreachable += r.rows[i].unreachable;
            if (i && r.rows[i].div < r.rows[i - 1].div) mono = false;
            row += std::to_string(r.rows[i].m) + ":" + std::to_string(r.rows[i].div) + " ";
        }
        ok = ok && mono && unreachable == 0;
        rep.note(13, "delta=" + fmt(delta) + " Div " + row + "slope " + fmt(r.slope) + " intercept " + fmt(r.intercept) +
                         "; unreachable " + std::to_string(unreachable) + "; " + r.coverage + "; seed " +
                         std::to_string(r.seed));
    }
    // dominance on random pairs
    std::mt19937_64 rng(132);
    long checked = 0, violations = 0, skipped = 0;
    for (double delta : {0.25, 0.5}) {
        DetourParams p = desk_params(k);
        p.delta = delta;
        int tries = 0;
        while (tries < 150) {
            const std::uint32_t a = static_cast<std::uint32_t>(rng() % b.size()), c = static_cast<std::uint32_t>(rng() % b.size());
            if (b.dist[a] < 3 || b.dist[c] < 3 || b.dist[a] > 6 || b.dist[c] > 6) continue;
            if (b.elements[a].leaf_count() < 4 || b.elements[c].leaf_count() < 4) continue;
            ++tries;
            auto d = div_oracle(a, c, delta, b);
            DetourCertificate path = connect(b.elements[a], b.elements[c], p, &b);
            const double need = delta * std::min(b.dist[a], b.dist[c]);
            if (!d || path.avoided + kEps < need) {
                ++skipped;
                continue;
            }
            ++checked;
            if (*d > path.total_length) ++violations;
        }
    }
    ok = ok && violations == 0 && checked > 0;
    rep.set(13, ok,
            "Div(m) finite and nondecreasing for delta 1/4, 1/2 on m in [2,8]; dominance div <= connect length: " +
                std::to_string(checked) + " pairs, violations " + std::to_string(violations) + " (" +
                std::to_string(skipped) + " pairs where connect does not avoid the delta-ball)");
}

bool rejects(const std::function<void()>& f, ErrorKind kind) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

void negative_controls(Report& rep, const std::vector<DetourCertificate>& certs) {
    const ElementBall& b = f2_ball9();
    long tested = 0, accepted = 0;
    for (std::size_t i = 0; i < certs.size() && tested < 4 * 50; i += std::max<std::size_t>(1, certs.size() / 50)) {
        const DetourCertificate& c = certs[i];
        std::vector<DetourCertificate> bad(4, c);
        bad[0].avoided += 1;
        bad[1].total_length -= 1;
        bad[2].prefix_bounds[bad[2].prefix_bounds.size() / 2].bound += 3;
        // route through the identity: h·h^-1·h continues the original word
        GroupWord back = c.base_word.inverse() * c.base_word;
        bad[3].parts.insert(bad[3].parts.begin(), DetourPart{"detour", back});
        bad[3].word = back * c.word;
        for (auto& t : bad) {
            ++tested;
            if (verify_avoidance(t, &b)) ++accepted;
        }
    }
    const GroupSpec BF{Family::BF, 2};
    const bool bf_parse = rejects([] { parse_braided("BF | (.(.(..))) | b: 1 | (.(.(..)))"); }, ErrorKind::NotPure);
    DetourParams p = desk_params(MetricConstants{});
    p.constants.set("C1", 0.2, "assumed");
    p.constants.set("C2", 0.2, "assumed");
    p.constants.set("C4", 0.75, "assumed");
    const bool bf_build = rejects(
        [&] {
            build_detour_bf(parse_braided("BV | (.(.(.(..)))) | b: 1 | (.(.(.(..))))"), GroupWord::parse("s1", GroupSpec{Family::BV, 2}), p);
        },
        ErrorKind::NotPure);
    (void)BF;
    const bool t_make = rejects(
        [] {
            make_element(GroupTag::T, NaryTree::parse("(.(..))", Arity(2)), Perm{1, 0, 2}, NaryTree::parse("(.(..))", Arity(2)));
        },
        ErrorKind::PermKindMismatch);
    const bool t_parse = rejects([] { parse_element("T 2 | (.(..)) | [0 2 1] | (.(..))"); }, ErrorKind::ParseError);
    rep.set(14, accepted == 0 && bf_parse && bf_build && t_make && t_parse,
            std::to_string(tested) + " tampered certificates accepted " + std::to_string(accepted) +
                "; non-pure BF parse/build rejected " + (bf_parse && bf_build ? "yes" : "no") +
                "; non-cyclic T middles rejected " + (t_make && t_parse ? "yes" : "no"));
}

}  // namespace

void detour_criteria(Report& r) {
    const MetricConstants k = fit_constants(samples_of(f2_ball9()), F2);
    progress("criterion 7");
    std::vector<DetourCertificate> certs = certificates_f2(r, k);
    long f2_bad = 0;
    for (const auto& c : certs)
        if (reduce(evaluate(c.base_word * c.word)) != reduce(evaluate(omega4_word(F2, omega4_exponent(c))))) ++f2_bad;
    progress("criterion 8");
    braided_endpoints(r, f2_bad);
    progress("criterion 13");
    divergence_trend(r, k);
    progress("criterion 14");
    negative_controls(r, certs);
}

}  // namespace acc
