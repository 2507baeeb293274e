#include <sstream>

#include "doctest.h"
#include "thompson/divergence.hpp"
#include "thompson/error.hpp"

using namespace thompson;

namespace {
const GroupSpec F2{Family::F, 2};

DetourParams scaled(const MetricConstants& k) {
    DetourParams p;
    p.Q = 4;
    p.constants = k;
    return p;
}

const ElementBall& ball9() {
    static const ElementBall b = build_ball(F2, 9);
    return b;
}
}  // namespace

TEST_SUITE("divergence-lab") {
    TEST_CASE("detour certificate on a 3-caret element") {
        const ElementBall& b = ball9();
        DetourParams p = scaled(fit_constants(samples_of(b), F2));
        Element h = evaluate(GroupWord::parse("x0^2 x1 x2^-1", F2));
        DetourCertificate c = build_detour_fn(h, p, &b);
        CHECK(c.pass);
        CHECK(c.endpoint_ok);
        CHECK(c.total_length <= c.budget);
        CHECK(c.summary().find("PASS") != std::string::npos);
        // endpoint is the omega4 element
        const long long L = static_cast<long long>(std::ceil(p.Q * static_cast<double>(c.base_length)));
        CHECK(reduce(evaluate(c.base_word * c.word)) == reduce(evaluate(omega4_word(F2, L))));
        DetourCertificate back = certificate_from_json(to_json(c));
        CHECK(verify_avoidance(back, &b));
    }

    TEST_CASE("omega1 depends on the leaf-0 depth of the target") {
        const ElementBall& b = ball9();
        DetourParams p = scaled(fit_constants(samples_of(b), F2));
        // x0^-2 x1^-1 has a depth-1 leaf 0 in its target tree
        Element h = evaluate(GroupWord::parse("x1 x0^-2", F2));
        DetourCertificate c = build_detour_fn(h, p, &b);
        const bool depth1 = reduce(h).target().leaf_depths().front() == 1;
        CHECK(c.parts[1].word.empty() == !depth1);
        if (depth1) CHECK(c.parts[1].word.to_string() == "x0^2 x1^-1 x0^-1");
    }

    TEST_CASE("tampered certificates fail") {
        const ElementBall& b = ball9();
        DetourParams p = scaled(fit_constants(samples_of(b), F2));
        DetourCertificate c = build_detour_fn(evaluate(GroupWord::parse("x0^2 x1 x2^-1", F2)), p, &b);
        DetourCertificate t = c;
        t.avoided += 5;
        CHECK_FALSE(verify_avoidance(t, &b));
        t = c;
        t.word.tokens.insert(t.word.tokens.begin() + 3, {x_token(1, 1), x_token(1, -1)});
        CHECK_FALSE(verify_avoidance(t, &b));
    }

    TEST_CASE("parameter thresholds and preconditions") {
        DetourParams p = scaled(fit_constants(samples_of(build_ball(F2, 6)), F2));
        p.scaled = false;
        CHECK_THROWS_AS(p.validate(F2), Error);
        p.scaled = true;
        CHECK_THROWS_AS(build_detour_fn(evaluate(GroupWord::parse("x0", F2)), p, nullptr), Error);
        BraidedElement np = parse_braided("BV | (.(.(..))) | b: 1 | (.(.(..)))");
        CHECK_THROWS_AS(build_detour_bf(np, GroupWord::parse("s1", GroupSpec::parse("BF")), p), Error);
    }

    TEST_CASE("restricted BFS divergence values") {
        const ElementBall& b = ball9();
        const int frozen_quarter[] = {2, 4, 6, 14};
        const int frozen_half[] = {2, 10, 16, 18};
        for (int r = 1; r <= 4; ++r) {
            Element a = evaluate(x_power(F2, 0, r)), c = evaluate(x_power(F2, 0, -r));
            CHECK(div_oracle(a, c, 0.25, b) == frozen_quarter[r - 1]);
            CHECK(div_oracle(a, c, 0.5, b) == frozen_half[r - 1]);
        }
        Element id = identity_element(GroupTag::F, Arity(2));
        CHECK(div_oracle(id, id, 0.5, b) == 0);
        CHECK_THROWS_AS(div_oracle(id, evaluate(x_power(F2, 0, 12)), 0.5, b), Error);
    }

    TEST_CASE("divergence profile") {
        const ElementBall& b = ball9();
        ProfileReport r = divergence_profile(2, 6, 0.25, b, 1, 5000, 3);
        REQUIRE(r.rows.size() == 5);
        CHECK(r.rows[0].div == 2);
        for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].div >= r.rows[i - 1].div);
        std::ostringstream csv;
        write_profile_csv(csv, r);
        CHECK(csv.str().rfind("m,Div,pairs_checked\n2,2,", 0) == 0);
        CHECK(!r.coverage.empty());
    }

    TEST_CASE("connect swaps to the shorter base and passes") {
        const ElementBall& b = ball9();
        DetourParams p = scaled(fit_constants(samples_of(b), F2));
        Element g1 = evaluate(GroupWord::parse("x0 x1^2 x0^-1 x1", F2));
        Element g2 = evaluate(GroupWord::parse("x0^2 x1 x2^-1", F2));
        DetourCertificate c = connect(g1, g2, p, &b);
        CHECK(c.kind == "path");
        CHECK(c.pass);
        CHECK(c.base_length <= c.target_length);
    }
}
