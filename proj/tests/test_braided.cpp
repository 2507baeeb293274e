#include <random>

#include "doctest.h"
#include "thompson/braided.hpp"
#include "thompson/error.hpp"

using namespace thompson;

namespace {
BraidedElement bv(const char* w) { return evaluate_braided(GroupWord::parse(w, GroupSpec::parse("BV"))); }
}  // namespace

TEST_SUITE("braid-layer") {
    TEST_CASE("generators") {
        const GroupSpec g = GroupSpec::parse("BV");
        CHECK(crossing_count_K(reduce_bv(bv("x0"))) == 0);
        CHECK(crossing_count_K(reduce_bv(bv("s1"))) == 1);
        CHECK_FALSE(is_pure(reduce_bv(bv("s1")).braid()));
        CHECK(crossing_count_K(reduce_bv(bv("t1"))) == 1);
        CHECK(is_pure(reduce_bv(bv("t1^2")).braid()));
        CHECK(equal_bv(bv("x0 x0^-1"), identity_braided(Family::BV)));
        CHECK(max_pair_crossings(reduce_bv(bv("s1^3"))) == 3);
        CHECK_THROWS_AS(bv_generator(Family::BV, GeneratorToken{GenKind::C, 0, 0, 1}), Error);
        (void)g;
    }

    TEST_CASE("finite rewriting relations") {
        CHECK(equal_bv(bv("s2"), bv("x0^-1 s1 x1 s1^-1")));
        CHECK(equal_bv(bv("t2"), bv("x0^-1 t1 s1^-1")));
        CHECK(equal_bv(bv("s3"), bv("x0^-1 s2 x0")));
        CHECK(equal_bv(bv("t3"), bv("x0^-1 t2 x0")));
        const GroupWord w = GroupWord::parse("s3 t2^-1 x3", GroupSpec::parse("BV"));
        CHECK(equal_bv(evaluate_braided(rewrite_bv_to_finite(w)), evaluate_braided(w)));
    }

    TEST_CASE("group axioms and invariants on random diagrams") {
        std::mt19937_64 rng(31);
        for (int k = 0; k < 80; ++k) {
            const Family fam = k % 2 ? Family::BF : Family::BV;
            BraidedElement a = random_braided(fam, 4, 6, rng), b = random_braided(fam, 4, 6, rng),
                           c = random_braided(fam, 3, 5, rng);
            CHECK(equal_bv(compose_bv(compose_bv(a, b), c), compose_bv(a, compose_bv(b, c))));
            CHECK(equal_bv(compose_bv(a, invert_bv(a)), identity_braided(fam)));
            const BraidedElement r = reduce_bv(a);
            CHECK(max_pair_crossings(r) <= static_cast<int>(crossing_count_K(r)));
            CHECK(equal_bv(reduce_bv(expand_bv(r, rng() % r.leaf_count())), r));
            CHECK(equal_bv(evaluate_braided(block_form(r).word()), r));
            CHECK(parse_braided(to_string(r)) == r);
        }
    }

    TEST_CASE("BF purity and F elements in BV") {
        CHECK_THROWS_AS(parse_braided("BF | (.(..)) | b: 1 | (.(..))"), Error);
        CHECK_NOTHROW(parse_braided("BF | (.(..)) | b: 1 1 | (.(..))"));
        Element x0 = generator(GroupTag::F, Arity(2), "x0");
        BraidedElement f = from_element(Family::BV, x0);
        CHECK(crossing_count_K(f) == 0);
        BlockForm blk = block_form(f);
        CHECK(blk.w2.empty());
        CHECK(to_string(block_form(reduce_bv(bv("s1")))).find("s1") != std::string::npos);
    }

    TEST_CASE("leaf-count bounds") {
        std::mt19937_64 rng(32);
        for (int k = 0; k < 100; ++k) {
            BraidedElement g = reduce_bv(random_braided(Family::BV, 3 + static_cast<int>(k % 4), 6, rng));
            const std::size_t n = g.leaf_count();
            if (n < 4) continue;
            for (const char* w : {"x0", "x0^-1"}) {
                const std::size_t m = reduce_bv(compose_bv(g, bv(w))).leaf_count();
                CHECK(m + 1 >= n);
                CHECK(m <= n + 1);
            }
            for (const char* w : {"t1", "t1^-1"}) CHECK(reduce_bv(compose_bv(g, bv(w))).leaf_count() == n);
            for (const char* w : {"s1", "s1^-1"}) {
                const std::size_t m = reduce_bv(compose_bv(g, bv(w))).leaf_count();
                CHECK(m >= n);
                CHECK(m <= n + 1);
            }
        }
    }
}
