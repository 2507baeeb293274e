#pragma once

#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "thompson/braided.hpp"
#include "thompson/metrics.hpp"

namespace thompson {

using BraidedBall = Ball<BraidedElement>;
BraidedBall build_braided_ball(const GroupSpec& group, int radius, std::size_t cap_nodes = 5'000'000,
                               unsigned threads = 1);

// Fitted braided constants C1..C4 over a BV ball (identity excluded).
MetricConstants fit_braided_constants(const BraidedBall& ball);

struct DetourParams {
    double M = 1;
    double Q = 1;
    double delta = 0;  // 0: use c/(8M)
    double D = 0;      // braided budget factor; 0: (4M+2Q+2)/C2
    bool scaled = true;
    MetricConstants constants;

    double effective_delta(const GroupSpec& g) const;
    double lower_constant(const GroupSpec& g) const;  // c, or C2 for braided groups
    // Checks the thresholds on M and Q unless scaled; throws ExceedsCap on violation.
    void validate(const GroupSpec& g) const;
};

struct PrefixBound {
    long long position = 0;  // number of letters applied
    double bound = 0;        // exact distance when `exact`, else a lower bound
    bool exact = false;
};

struct DetourPart {
    std::string name;  // w1, rho, w2, w3, w4, w5
    GroupWord word;
};

struct DetourCertificate {
    std::string kind = "detour";  // or "path" for connect
    GroupSpec group;
    std::string base;        // printed h
    GroupWord base_word;     // word for h
    bool base_length_exact = false;
    long long base_length = 0;
    std::vector<DetourPart> parts;
    GroupWord word;          // concatenation of the parts
    std::vector<PrefixBound> prefix_bounds;
    long long total_length = 0;
    double budget = 0;
    double required = 0;     // δ|h|
    double avoided = 0;      // min prefix bound
    bool endpoint_ok = false;
    std::string endpoint;
    int ball_radius = -1;    // radius of the ball used for exact data; -1 if none
    std::string target;      // path certificates: g2
    long long target_length = 0;
    bool pass = false;
    DetourParams params;
    std::string summary() const;  // "avoided=R length=L budget=B PASS|FAIL"
};

std::string to_json(const DetourCertificate& c);
DetourCertificate certificate_from_json(const std::string& text);

// ball: source of exact lengths, geodesic words and prefix distances (may be null).
DetourCertificate build_detour_fn(const Element& h, const DetourParams& p, const ElementBall* ball);
DetourCertificate build_detour_bv(const BraidedElement& h, const GroupWord& w_h, const DetourParams& p,
                                  const BraidedBall* ball);
DetourCertificate build_detour_bf(const BraidedElement& h, const GroupWord& w_h, const DetourParams& p);

// x0^L x_{n-1}^-1 x0^{-L+1}
GroupWord omega4_word(const GroupSpec& g, long long L);

// Recomputes every prefix bound from scratch; a certificate passes when the
// stored data agrees with the recomputation, the endpoint algebra holds, the
// length is within budget and every prefix stays at distance ≥ δ|h|.
bool verify_avoidance(DetourCertificate& c, const ElementBall* ball);
bool verify_avoidance_braided(DetourCertificate& c, const BraidedBall* ball);

// Path g1 → g2: detour out of g1, bridge between the two ω4-elements, detour back into g2.
DetourCertificate connect(const Element& g1, const Element& g2, const DetourParams& p, const ElementBall* ball);

// Shortest a→b path inside the ball avoiding {v : |v| < δ·min(|a|,|b|)} when that radius is ≥ 1.
std::optional<int> div_oracle(std::uint32_t a, std::uint32_t b, double delta, const ElementBall& ball);
// Throws BallTooSmall when a or b lies outside the ball.
std::optional<int> div_oracle(const Element& a, const Element& b, double delta, const ElementBall& ball);

struct ProfileRow {
    int m = 0;
    int div = 0;
    std::size_t pairs_checked = 0;
    std::size_t unreachable = 0;
    std::size_t outside = 0;  // sampled a·w that left the ball
};
struct ProfileReport {
    double delta = 0;
    std::vector<ProfileRow> rows;
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;
    std::uint64_t seed = 0;
    std::string coverage;
};
// Pairs (a, a·w) with |a| ≤ inner and |w| = m; exhaustive up to pair_budget per m, then sampled.
ProfileReport divergence_profile(int m_lo, int m_hi, double delta, const ElementBall& ball, int inner,
                                 std::size_t pair_budget, std::uint64_t seed);
void write_profile_csv(std::ostream& out, const ProfileReport& r);

}  // namespace thompson
