#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "thompson/braided.hpp"
#include "thompson/error.hpp"

using namespace thompson;

namespace {
BraidWord random_word(int strands, int len, std::mt19937_64& rng) {
    BraidWord b{strands, {}};
    for (int i = 0; i < len; ++i) {
        const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(strands - 1));
        b.letters.push_back(rng() % 2 ? k : -k);
    }
    return b;
}
}  // namespace

TEST_SUITE("braid-layer") {
    TEST_CASE("Artin relations and normal forms") {
        CHECK(braid_equal(BraidWord::parse("1 2 1", 3), BraidWord::parse("2 1 2", 3)));
        CHECK(braid_equal(BraidWord::parse("1 3", 4), BraidWord::parse("3 1", 4)));
        CHECK_FALSE(braid_equal(BraidWord::parse("1 2", 3), BraidWord::parse("2 1", 3)));
        CHECK(is_trivial(BraidWord::parse("1 -1 2 -2", 3)));
        CHECK_FALSE(is_trivial(BraidWord::parse("1 1", 2)));
        CHECK(garside_nf(BraidWord::parse("1 2 1", 3)).delta_power == 1);
    }

    TEST_CASE("normal form words and shortening") {
        std::mt19937_64 rng(21);
        for (int k = 0; k < 300; ++k) {
            BraidWord b = random_word(2 + static_cast<int>(k % 4), static_cast<int>(rng() % 12), rng);
            BraidWord w = word_of(garside_nf(b));
            CHECK(braid_equal(w, b));
            BraidWord s = shorten(b);
            CHECK(braid_equal(s, b));
            CHECK(s.size() <= b.size());
        }
    }

    TEST_CASE("rewriting oracle on three strands") {
        oracle::BraidOracleReport r = oracle::braid_rewrite_oracle(3, 6);
        CHECK(r.disagreements == 0);
        CHECK(r.nf_classes <= r.rewrite_classes);
        CHECK(oracle::handle_trivial({1, 2, 1, -2, -1, -2}));
        CHECK_FALSE(oracle::handle_trivial({1, 2, -1, -2}));
    }

    TEST_CASE("permutations and purity") {
        std::mt19937_64 rng(22);
        for (int k = 0; k < 200; ++k) {
            BraidWord a = random_word(4, 6, rng), b = random_word(4, 6, rng);
            Perm pa = permutation_of(a), pb = permutation_of(b), pab = permutation_of(a * b);
            for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pab[i] == pb[pa[i]]);
        }
        CHECK(is_pure(BraidWord::parse("1 1", 2)));
        CHECK_FALSE(is_pure(BraidWord::parse("1", 2)));
    }

    TEST_CASE("cabling permutes blocks") {
        std::mt19937_64 rng(23);
        for (int k = 0; k < 100; ++k) {
            BraidWord b = random_word(3, 5, rng);
            std::vector<int> widths{1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3),
                                    1 + static_cast<int>(rng() % 3)};
            BraidWord c = cable(b, widths);
            Perm p = permutation_of(b), q = permutation_of(c);
            // block i lands at the block position p[i], internal order kept
            std::vector<int> start(3, 0), dst_start(3, 0);
            for (int i = 1; i < 3; ++i) start[static_cast<std::size_t>(i)] = start[static_cast<std::size_t>(i - 1)] + widths[static_cast<std::size_t>(i - 1)];
            std::vector<int> w_at(3);
            for (int i = 0; i < 3; ++i) w_at[p[static_cast<std::size_t>(i)]] = widths[static_cast<std::size_t>(i)];
            for (int i = 1; i < 3; ++i) dst_start[static_cast<std::size_t>(i)] = dst_start[static_cast<std::size_t>(i - 1)] + w_at[static_cast<std::size_t>(i - 1)];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < widths[static_cast<std::size_t>(i)]; ++j)
                    CHECK(static_cast<int>(q[static_cast<std::size_t>(start[static_cast<std::size_t>(i)] + j)]) ==
                          dst_start[p[static_cast<std::size_t>(i)]] + j);
        }
        CHECK_THROWS_AS(cable(BraidWord::parse("1", 2), {1}), Error);
    }

    TEST_CASE("alpha and beta expansions") {
        CHECK(expand_alpha(1, 2).to_string() == "s1^2");
        CHECK(expand_beta(1, 2).to_string() == "t1^2");
        CHECK(expand_alpha(1, 3).to_string() == "s1 s2^2 s1^-1");
        CHECK_THROWS_AS(expand_alpha(2, 2), Error);
        for (int i = 1; i <= 5; ++i)
            for (int j = i + 1; j <= 5; ++j) CHECK(is_pure(evaluate_braided(expand_alpha(i, j)).braid()));
    }
}
