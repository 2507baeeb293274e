#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thompson/divergence.hpp"
#include "thompson/error.hpp"

using namespace thompson;

namespace {

struct Config {
    std::string group = "F2";
    std::string gens = "standard";
    int radius = -1;
    std::size_t cap_nodes = 5'000'000;
    double M = 1, Q = 4, delta = 0;
    bool scaled = false;
    std::uint64_t seed = 1;
    std::string out;
    std::string dot;
    unsigned threads = 1;
    int exact = -1;
    bool bounds = false;
};

// Either a tree-pair element or a braided diagram, plus the word it was read from.
struct Value {
    std::optional<Element> tree;
    std::optional<BraidedElement> braid;
    std::optional<GroupWord> word;
};

Value read_value(const std::string& text, const GroupSpec& g) {
    Value v;
    const auto start = text.find_first_not_of(" \t");
    const std::string head = start == std::string::npos ? "" : text.substr(start, 2);
    if (text.find('|') != std::string::npos) {
        if (head == "BV" || head == "BF") {
            v.braid = parse_braided(text);
        } else {
            v.tree = parse_element(text);
        }
        return v;
    }
    v.word = GroupWord::parse(text, g);
    if (g.braided()) {
        v.braid = evaluate_braided(*v.word);
    } else {
        v.tree = evaluate(*v.word);
    }
    return v;
}

std::string print(const Value& v) { return v.tree ? to_string(*v.tree) : to_string(*v.braid); }

int default_radius(const GroupSpec& g) {
    switch (g.family) {
        case Family::F: return g.n == 2 ? 9 : 6;
        case Family::T: return 7;
        case Family::V: return 6;
        case Family::BV: return 4;
        case Family::BF: return 2;
    }
    return 4;
}

int cmd_elem(const Config& cfg, const std::string& action, const std::vector<std::string>& args) {
    const GroupSpec g = GroupSpec::parse(cfg.group);
    auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw Error(ErrorKind::NameOutOfScope, "elem " + action + " expects " + std::to_string(k) + " argument(s)");
    };
    if (action == "parse") {
        need(1);
        std::cout << print(read_value(args[0], g)) << "\n";
    } else if (action == "print" || action == "reduce") {
        need(1);
        Value v = read_value(args[0], g);
        std::cout << (v.tree ? to_string(reduce(*v.tree)) : to_string(reduce_bv(*v.braid))) << "\n";
    } else if (action == "mul") {
        need(2);
        Value a = read_value(args[0], g), b = read_value(args[1], g);
        if (a.tree && b.tree) {
            std::cout << to_string(compose(*a.tree, *b.tree)) << "\n";
        } else if (a.braid && b.braid) {
            std::cout << to_string(compose_bv(*a.braid, *b.braid)) << "\n";
        } else {
            throw Error(ErrorKind::GroupMismatch, "cannot multiply a tree pair by a braided diagram");
        }
    } else if (action == "inv") {
        need(1);
        Value v = read_value(args[0], g);
        std::cout << (v.tree ? to_string(reduce(invert(*v.tree))) : to_string(reduce_bv(invert_bv(*v.braid)))) << "\n";
    } else if (action == "pcq") {
        need(1);
        Value v = read_value(args[0], g);
        std::cout << (v.tree ? to_string(pcq_factorize(*v.tree)) : to_string(block_form(*v.braid))) << "\n";
    } else if (action == "branches") {
        need(1);
        Value v = read_value(args[0], g);
        if (!v.tree) throw Error(ErrorKind::GroupMismatch, "branches are defined for tree pairs");
        for (const auto& b : branches(*v.tree)) std::cout << b.src.to_string() << " -> " << b.dst.to_string() << "\n";
    } else if (action == "support") {
        need(1);
        Value v = read_value(args[0], g);
        if (!v.tree) throw Error(ErrorKind::GroupMismatch, "support is defined for tree pairs");
        Support s = support(*v.tree);
        if (s.empty()) std::cout << "empty";
        for (std::size_t i = 0; i < s.intervals.size(); ++i) std::cout << (i ? " " : "") << s.intervals[i].to_string();
        std::cout << "\n";
    } else if (action == "apply") {
        need(2);
        Value v = read_value(args[0], g);
        if (!v.tree) throw Error(ErrorKind::GroupMismatch, "apply is defined for tree pairs");
        Rational x;
        try {
            x = Rational(args[1]);
        } catch (const std::exception&) {
            throw ParseError(0, "expected a rational p/q");
        }
        std::cout << thompson::apply(*v.tree, x).str() << "\n";
    } else {
        throw Error(ErrorKind::NameOutOfScope, "unknown elem action " + action);
    }
    return 0;
}

std::vector<GeneratorToken> generating_set(const Config& cfg, const GroupSpec& g, const Element& e) {
    if (cfg.gens == "standard") return standard_generators(g);
    if (cfg.gens != "infinite") throw Error(ErrorKind::NameOutOfScope, "--gens is standard or infinite");
    // Enough x_k to reach every caret of e; c0 and pi0 as in the standard set.
    std::vector<GeneratorToken> out;
    const int top = static_cast<int>(std::max(e.source().leaf_count(), e.target().leaf_count())) + g.n;
    for (int k = 0; k <= top; ++k) out.push_back({GenKind::X, k, 0, 1});
    for (const auto& t : standard_generators(g))
        if (t.kind != GenKind::X) out.push_back(t);
    return out;
}

int cmd_len(const Config& cfg, const std::string& literal) {
    const GroupSpec g = GroupSpec::parse(cfg.group);
    Value v = read_value(literal, g);
    if (cfg.exact >= 0) {
        std::optional<int> len;
        if (v.tree) {
            len = bfs_word_length(*v.tree, generating_set(cfg, g, *v.tree), cfg.exact, cfg.cap_nodes);
        } else {
            BraidedBall b = build_braided_ball(g, cfg.exact, cfg.cap_nodes, cfg.threads);
            if (auto i = b.find_key(key_bv(*v.braid))) len = b.dist[*i];
        }
        if (!len) {
            std::cout << "> " << cfg.exact << "\n";
            throw Error(ErrorKind::ExceedsCap, "word length exceeds cap " + std::to_string(cfg.exact));
        }
        std::cout << *len << "\n";
    }
    if (cfg.bounds) {
        const int r = cfg.radius >= 0 ? cfg.radius : std::min(default_radius(g), 6);
        if (v.tree) {
            MetricConstants k = fit_constants(samples_of(build_ball(g, r, cfg.cap_nodes, cfg.threads)), g);
            CaretBounds b = caret_bounds(*v.tree, k);
            std::cout << "lower=" << b.lower;
            if (b.upper) std::cout << " upper=" << *b.upper;
            std::cout << "\n" << k.report();
        } else {
            MetricConstants k = fit_braided_constants(build_braided_ball(g, r, cfg.cap_nodes, cfg.threads));
            const BraidedElement e = reduce_bv(*v.braid);
            const double N = static_cast<double>(e.leaf_count());
            const double s = static_cast<double>(max_pair_crossings(e));
            const double K = static_cast<double>(crossing_count_K(e));
            std::cout << "lower=" << k.get("C2") * std::max(N, s) << " upper=" << k.get("C3") * (N + N * K) << "\n"
                      << k.report();
        }
    }
    if (cfg.exact < 0 && !cfg.bounds) throw Error(ErrorKind::NameOutOfScope, "len needs --exact CAP or --bounds");
    return 0;
}

DetourParams params_of(const Config& cfg) {
    DetourParams p;
    p.M = cfg.M;
    p.Q = cfg.Q;
    p.delta = cfg.delta;
    p.scaled = cfg.scaled;
    return p;
}

int emit(const Config& cfg, const DetourCertificate& c) {
    if (!cfg.out.empty()) {
        auto j = nlohmann::json::parse(to_json(c));
        j["seed"] = cfg.seed;
        std::ofstream f(cfg.out);
        f << j.dump(2) << "\n";
    }
    std::cout << c.summary() << "\n";
    return c.pass ? 0 : 4;
}

struct Balls {
    std::optional<ElementBall> tree;
    std::optional<BraidedBall> braid;
};

Balls balls_for(const Config& cfg, const GroupSpec& g, int radius) {
    Balls b;
    if (radius < 0) return b;
    if (g.braided()) {
        b.braid = build_braided_ball(g, radius, cfg.cap_nodes, cfg.threads);
    } else {
        b.tree = build_ball(g, radius, cfg.cap_nodes, cfg.threads);
    }
    return b;
}

void fit_into(DetourParams& p, const Balls& b, const GroupSpec& g) {
    p.constants = b.tree ? fit_constants(samples_of(*b.tree), g) : fit_braided_constants(*b.braid);
}

DetourCertificate build_one(const Config& cfg, const GroupSpec& g, const Value& v, const DetourParams& p,
                            const Balls& b) {
    if (v.tree) return build_detour_fn(*v.tree, p, b.tree ? &*b.tree : nullptr);
    if (g.family == Family::BF) {
        if (!is_pure(v.braid->braid())) throw Error(ErrorKind::NotPure, "BF detour needs a pure diagram");
        if (!v.word) throw Error(ErrorKind::TokenOutOfScope, "BF detours need a word over Sigma_BF");
        return build_detour_bf(*v.braid, *v.word, p);
    }
    GroupWord w = v.word ? *v.word : rewrite_bv_to_finite(block_form(*v.braid).word());
    (void)cfg;
    return build_detour_bv(*v.braid, w, p, b.braid ? &*b.braid : nullptr);
}

int cmd_detour(const Config& cfg, const std::string& action, const std::vector<std::string>& args) {
    if (action == "verify") {
        if (args.size() != 1) throw Error(ErrorKind::NameOutOfScope, "detour verify expects a certificate file");
        std::ifstream f(args[0]);
        if (!f) throw Error(ErrorKind::NameOutOfScope, "cannot read " + args[0]);
        std::stringstream ss;
        ss << f.rdbuf();
        DetourCertificate c = certificate_from_json(ss.str());
        Balls b = balls_for(cfg, c.group, c.ball_radius);
        const bool ok = c.group.braided() ? verify_avoidance_braided(c, b.braid ? &*b.braid : nullptr)
                                          : verify_avoidance(c, b.tree ? &*b.tree : nullptr);
        std::cout << c.summary() << "\n";
        return ok ? 0 : 4;
    }
    const GroupSpec g = GroupSpec::parse(cfg.group);
    Balls b = balls_for(cfg, g, cfg.radius >= 0 ? cfg.radius : default_radius(g));
    DetourParams p = params_of(cfg);
    fit_into(p, b, g);
    if (action == "build") {
        if (args.size() != 1) throw Error(ErrorKind::NameOutOfScope, "detour build expects one element");
        return emit(cfg, build_one(cfg, g, read_value(args[0], g), p, b));
    }
    if (action == "connect") {
        if (args.size() != 2) throw Error(ErrorKind::NameOutOfScope, "detour connect expects two elements");
        Value a = read_value(args[0], g), c = read_value(args[1], g);
        if (!a.tree || !c.tree) throw Error(ErrorKind::GroupMismatch, "connect is implemented for F_n, T_n, V_n");
        return emit(cfg, connect(*a.tree, *c.tree, p, b.tree ? &*b.tree : nullptr));
    }
    throw Error(ErrorKind::NameOutOfScope, "unknown detour action " + action);
}

int cmd_ball(const Config& cfg) {
    const GroupSpec g = GroupSpec::parse(cfg.group);
    if (cfg.gens != "standard") throw Error(ErrorKind::NameOutOfScope, "balls use the standard generating set");
    const int r = cfg.radius >= 0 ? cfg.radius : 3;
    std::ostringstream csv;
    if (g.braided()) {
        BraidedBall b = build_braided_ball(g, r, cfg.cap_nodes, cfg.threads);
        write_ball_csv(csv, b.shell_counts());
        if (!cfg.dot.empty()) {
            std::ofstream d(cfg.dot);
            write_ball_dot(d, b, std::min(r, 3));
        }
    } else {
        ElementBall b = build_ball(g, r, cfg.cap_nodes, cfg.threads);
        write_ball_csv(csv, b.shell_counts());
        if (!cfg.dot.empty()) {
            std::ofstream d(cfg.dot);
            write_ball_dot(d, b, std::min(r, 3));
        }
    }
    if (cfg.out.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream(cfg.out) << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thompson: Thompson-like groups, word metrics and detour certificates"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--group", cfg.group, "F2|F3|T2|V2|BV|BF (any arity after F/T/V)");
    app.add_option("--gens", cfg.gens, "standard|infinite");
    app.add_option("--radius", cfg.radius, "ball radius");
    app.add_option("--cap-nodes", cfg.cap_nodes, "node cap for ball searches");
    app.add_option("--M", cfg.M);
    app.add_option("--Q", cfg.Q);
    app.add_option("--delta", cfg.delta, "0 uses c/(8M)");
    app.add_flag("--scaled", cfg.scaled, "allow M, Q below the thresholds");
    app.add_option("--seed", cfg.seed);
    app.add_option("--out", cfg.out, "output file");
    app.add_option("--threads", cfg.threads);

    std::string action;
    std::vector<std::string> args;
    auto* elem = app.add_subcommand("elem", "element arithmetic");
    elem->add_option("action", action, "parse|print|mul|inv|reduce|pcq|branches|support|apply")->required();
    elem->add_option("args", args);
    auto* len = app.add_subcommand("len", "word length");
    std::string literal;
    len->add_option("element", literal)->required();
    len->add_option("--exact", cfg.exact, "breadth-first search up to this length");
    len->add_flag("--bounds", cfg.bounds, "caret bounds with fitted constants");
    auto* detour = app.add_subcommand("detour", "detour certificates");
    detour->add_option("action", action, "build|verify|connect")->required();
    detour->add_option("args", args);
    auto* ball = app.add_subcommand("ball", "Cayley ball shell counts");
    ball->add_option("--dot", cfg.dot, "write a DOT graph of the first shells");
    for (auto* sc : {elem, len, detour, ball}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*elem) return cmd_elem(cfg, action, args);
        if (*len) return cmd_len(cfg, literal);
        if (*detour) return cmd_detour(cfg, action, args);
        if (*ball) return cmd_ball(cfg);
    } catch (const ParseError& e) {
        std::cout << "error: " << e.what() << "\nParseError\n";
        return 2;
    } catch (const Error& e) {
        std::cout << "error: " << e.what() << "\n" << e.name() << "\n";
        return 3;
    }
    return 0;
}
