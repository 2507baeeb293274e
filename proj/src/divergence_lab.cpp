#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "thompson/divergence.hpp"
#include "thompson/error.hpp"

namespace thompson {

using nlohmann::json;

std::string to_json(const DetourCertificate& c) {
    json j;
    j["kind"] = c.kind;
    j["group"] = c.group.to_string();
    j["base"] = c.base;
    j["base_word"] = c.base_word.to_string();
    j["base_length"] = c.base_length;
    j["base_length_exact"] = c.base_length_exact;
    j["parts"] = json::array();
    for (const auto& p : c.parts) j["parts"].push_back({{"name", p.name}, {"word", p.word.to_string()}});
    j["word"] = c.word.to_string();
    j["prefix_bounds"] = json::array();
    for (const auto& b : c.prefix_bounds) j["prefix_bounds"].push_back({b.position, b.bound, b.exact});
    j["total_length"] = c.total_length;
    j["budget"] = c.budget;
    j["required"] = c.required;
    j["avoided"] = c.avoided;
    j["endpoint_ok"] = c.endpoint_ok;
    j["endpoint"] = c.endpoint;
    j["ball_radius"] = c.ball_radius;
    if (c.kind == "path") {
        j["target"] = c.target;
        j["target_length"] = c.target_length;
    }
    j["pass"] = c.pass;
    json params{{"M", c.params.M}, {"Q", c.params.Q}, {"delta", c.params.delta}, {"D", c.params.D},
                {"scaled", c.params.scaled}};
    for (const auto& [name, k] : c.params.constants.values)
        params["constants"][name] = {{"value", k.value}, {"provenance", k.provenance}, {"witness", k.witness}};
    j["params"] = params;
    return j.dump(2);
}

DetourCertificate certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, "invalid certificate JSON");
    }
    try {
        DetourCertificate c;
        c.kind = j.at("kind").get<std::string>();
        c.group = GroupSpec::parse(j.at("group").get<std::string>());
        c.base = j.at("base").get<std::string>();
        c.base_word = GroupWord::parse(j.at("base_word").get<std::string>(), c.group);
        c.base_length = j.at("base_length").get<long long>();
        c.base_length_exact = j.at("base_length_exact").get<bool>();
        for (const auto& p : j.at("parts"))
            c.parts.push_back({p.at("name").get<std::string>(), GroupWord::parse(p.at("word").get<std::string>(), c.group)});
        c.word = GroupWord::parse(j.at("word").get<std::string>(), c.group);
        for (const auto& b : j.at("prefix_bounds"))
            c.prefix_bounds.push_back({b.at(0).get<long long>(), b.at(1).get<double>(), b.at(2).get<bool>()});
        c.total_length = j.at("total_length").get<long long>();
        c.budget = j.at("budget").get<double>();
        c.required = j.at("required").get<double>();
        c.avoided = j.at("avoided").get<double>();
        c.endpoint_ok = j.at("endpoint_ok").get<bool>();
        c.endpoint = j.at("endpoint").get<std::string>();
        c.ball_radius = j.value("ball_radius", -1);
        if (c.kind == "path") {
            c.target = j.at("target").get<std::string>();
            c.target_length = j.at("target_length").get<long long>();
        }
        c.pass = j.at("pass").get<bool>();
        const auto& p = j.at("params");
        c.params.M = p.at("M").get<double>();
        c.params.Q = p.at("Q").get<double>();
        c.params.delta = p.at("delta").get<double>();
        c.params.D = p.value("D", 0.0);
        c.params.scaled = p.at("scaled").get<bool>();
        if (p.contains("constants"))
            for (const auto& [name, k] : p.at("constants").items())
                c.params.constants.set(name, k.at("value").get<double>(), k.at("provenance").get<std::string>(),
                                       k.value("witness", std::string()));
        return c;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("malformed certificate: ") + e.what());
    }
}

std::optional<int> div_oracle(std::uint32_t a, std::uint32_t b, double delta, const ElementBall& ball) {
    if (a >= ball.size() || b >= ball.size()) throw Error(ErrorKind::BallTooSmall, "vertex outside the ball");
    const double rad = delta * std::min(ball.dist[a], ball.dist[b]);
    auto excluded = [&](std::size_t v) { return rad >= 1 && ball.dist[v] < rad; };
    if (excluded(a) || excluded(b)) return std::nullopt;
    if (a == b) return 0;
    std::vector<int> seen(ball.size(), -1);
    std::vector<std::uint32_t> queue{a};
    seen[a] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        for (std::size_t g = 0; g < ball.gens.size(); ++g) {
            const std::int32_t u = ball.neighbour(v, g);
            if (u < 0 || seen[static_cast<std::size_t>(u)] >= 0 || excluded(static_cast<std::size_t>(u))) continue;
            seen[static_cast<std::size_t>(u)] = seen[v] + 1;
            if (static_cast<std::uint32_t>(u) == b) return seen[b];
            queue.push_back(static_cast<std::uint32_t>(u));
        }
    }
    return std::nullopt;
}

std::optional<int> div_oracle(const Element& a, const Element& b, double delta, const ElementBall& ball) {
    auto ia = ball.find_key(key(a));
    auto ib = ball.find_key(key(b));
    if (!ia || !ib) throw Error(ErrorKind::BallTooSmall, "element outside the enumerated ball");
    return div_oracle(*ia, *ib, delta, ball);
}

namespace {

// Endpoint of the walk from a along the geodesic of w; -1 when it leaves the ball.
std::int64_t walk(const ElementBall& ball, std::uint32_t a, std::uint32_t w) {
    std::vector<std::int16_t> path;
    for (std::int32_t v = static_cast<std::int32_t>(w); ball.parent[static_cast<std::size_t>(v)] >= 0;
         v = ball.parent[static_cast<std::size_t>(v)])
        path.push_back(ball.via[static_cast<std::size_t>(v)]);
    std::int64_t cur = a;
    for (auto it = path.rbegin(); it != path.rend() && cur >= 0; ++it)
        cur = ball.neighbour(static_cast<std::size_t>(cur), static_cast<std::size_t>(*it));
    return cur;
}

}  // namespace

ProfileReport divergence_profile(int m_lo, int m_hi, double delta, const ElementBall& ball, int inner,
                                 std::size_t pair_budget, std::uint64_t seed) {
    if (m_hi > ball.radius || m_lo < 0 || m_lo > m_hi) throw Error(ErrorKind::BallTooSmall, "ball does not cover m range");
    ProfileReport rep;
    rep.delta = delta;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> starts;
    for (std::uint32_t i = 0; i < ball.size(); ++i)
        if (ball.dist[i] <= inner) starts.push_back(i);
    int running = 0;
    std::size_t checked = 0;
    std::ostringstream cov;
    for (int m = m_lo; m <= m_hi; ++m) {
        std::vector<std::uint32_t> sphere;
        for (std::uint32_t i = 0; i < ball.size(); ++i)
            if (ball.dist[i] == m) sphere.push_back(i);
        const std::size_t total = starts.size() * sphere.size();
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        if (total <= pair_budget) {
            for (auto a : starts)
                for (auto w : sphere) pairs.emplace_back(a, w);
        } else {
            std::uniform_int_distribution<std::size_t> pa(0, starts.size() - 1), pw(0, sphere.size() - 1);
            for (std::size_t k = 0; k < pair_budget; ++k) pairs.emplace_back(starts[pa(rng)], sphere[pw(rng)]);
        }
        ProfileRow row;
        row.m = m;
        for (auto [a, w] : pairs) {
            const std::int64_t b = walk(ball, a, w);
            if (b < 0) {
                ++row.outside;
                continue;
            }
            ++checked;
            auto d = div_oracle(a, static_cast<std::uint32_t>(b), delta, ball);
            if (!d) {
                ++row.unreachable;
                continue;
            }
            running = std::max(running, *d);
        }
        row.div = running;
        row.pairs_checked = checked;
        rep.rows.push_back(row);
        cov << (m == m_lo ? "" : "; ") << "m=" << m << (total <= pair_budget ? " exhaustive " : " sampled ")
            << pairs.size() << "/" << total;
    }
    rep.coverage = cov.str();
    const double k = static_cast<double>(rep.rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rep.rows) {
        sx += r.m;
        sy += r.div;
        sxx += static_cast<double>(r.m) * r.m;
        sxy += static_cast<double>(r.m) * r.div;
    }
    const double den = k * sxx - sx * sx;
    rep.slope = den != 0 ? (k * sxy - sx * sy) / den : 0;
    rep.intercept = k > 0 ? (sy - rep.slope * sx) / k : 0;
    for (const auto& r : rep.rows) rep.residuals.push_back(r.div - (rep.slope * r.m + rep.intercept));
    return rep;
}

void write_profile_csv(std::ostream& out, const ProfileReport& r) {
    out << "m,Div,pairs_checked\n";
    for (const auto& row : r.rows) out << row.m << "," << row.div << "," << row.pairs_checked << "\n";
}

}  // namespace thompson
