#include "thompson/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "thompson/error.hpp"

namespace thompson {

BraidWord BraidWord::parse(std::string_view text, int strands) {
    BraidWord b{strands, {}};
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        int v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc()) throw ParseError(pos, "expected signed Artin index");
        if (v == 0 || std::abs(v) >= strands)
            throw ParseError(pos, "Artin index out of range for " + std::to_string(strands) + " strands");
        b.letters.push_back(v);
        pos = static_cast<std::size_t>(ptr - text.data());
    }
    return b;
}

std::string BraidWord::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) s += (i ? " " : "") + std::to_string(letters[i]);
    return s;
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.strands != b.strands) throw Error(ErrorKind::WidthMismatch, "braid strand counts differ");
    BraidWord r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

BraidWord inverse(const BraidWord& b) {
    BraidWord r{b.strands, {}};
    for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
}

BraidWord free_reduce(const BraidWord& b) {
    BraidWord r{b.strands, {}};
    for (int l : b.letters) {
        if (!r.letters.empty() && r.letters.back() == -l) {
            r.letters.pop_back();
        } else {
            r.letters.push_back(l);
        }
    }
    return r;
}

Perm permutation_of(const BraidWord& b) {
    // at[p] = strand currently at position p
    Perm at(static_cast<std::size_t>(b.strands));
    for (std::size_t i = 0; i < at.size(); ++i) at[i] = static_cast<std::uint32_t>(i);
    for (int l : b.letters) {
        const auto k = static_cast<std::size_t>(std::abs(l));
        std::swap(at[k - 1], at[k]);
    }
    return inverse_perm(at);
}

bool is_pure(const BraidWord& b) { return is_identity_perm(permutation_of(b)); }

namespace {

Perm identity_of(int m) {
    Perm p(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint32_t>(i);
    return p;
}

Perm delta_of(int m) {
    Perm p(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint32_t>(static_cast<std::size_t>(m) - 1 - i);
    return p;
}

Perm tau(const Perm& a) {
    const std::size_t m = a.size();
    Perm r(m);
    for (std::size_t j = 0; j < m; ++j) r[j] = static_cast<std::uint32_t>(m - 1 - a[m - 1 - j]);
    return r;
}

// σ_i with i in 1..m-1, as a simple element.
Perm transposition(int m, int i) {
    Perm p = identity_of(m);
    std::swap(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
    return p;
}

// Make (a, b) left-weighted; returns true when something moved.
bool left_weight(Perm& a, Perm& b) {
    bool changed = false;
    for (bool again = true; again;) {
        again = false;
        Perm ainv = inverse_perm(a);
        for (std::size_t i = 1; i < b.size(); ++i) {
            const bool starts_b = b[i - 1] > b[i];
            const bool finishes_a = ainv[i - 1] > ainv[i];
            if (!starts_b || finishes_a) continue;
            // a := a σ_i, b := σ_i^-1 b
            for (auto& v : a) {
                if (v == i - 1) {
                    v = static_cast<std::uint32_t>(i);
                } else if (v == i) {
                    v = static_cast<std::uint32_t>(i - 1);
                }
            }
            std::swap(b[i - 1], b[i]);
            changed = again = true;
            break;
        }
    }
    return changed;
}

}  // namespace

GarsideNF garside_nf(const BraidWord& w) {
    const int m = w.strands;
    GarsideNF nf{m, 0, {}};
    if (m <= 1) return nf;
    // Factors with the parity of Δ^-1 moves seen when each was inserted.
    std::vector<std::pair<Perm, int>> raw;
    int flips = 0;
    for (int l : w.letters) {
        const int k = std::abs(l);
        if (l > 0) {
            raw.emplace_back(transposition(m, k), flips);
        } else {
            // σ_k^-1 = Y Δ^-1 with Y = σ_k^-1 Δ; the Δ^-1 then moves to the front.
            Perm s = transposition(m, k);
            Perm y(s.size());
            for (std::size_t j = 0; j < s.size(); ++j) y[j] = static_cast<std::uint32_t>(static_cast<std::size_t>(m) - 1 - s[j]);
            raw.emplace_back(y, flips);
            ++flips;
            --nf.delta_power;
        }
    }
    std::vector<Perm> f;
    f.reserve(raw.size());
    for (auto& [p, at] : raw) f.push_back(((flips - at) % 2) ? tau(p) : p);

    const Perm id = identity_of(m);
    const Perm delta = delta_of(m);
    // Append factors one at a time, restoring left-weightedness leftwards.
    std::vector<Perm> out;
    for (auto& x : f) {
        if (x == id) continue;
        out.push_back(std::move(x));
        for (std::size_t j = out.size() - 1; j > 0; --j)
            if (!left_weight(out[j - 1], out[j])) break;
        out.erase(std::remove(out.begin(), out.end(), id), out.end());
    }
    std::size_t lead = 0;
    while (lead < out.size() && out[lead] == delta) ++lead;
    nf.delta_power += static_cast<int>(lead);
    nf.factors.assign(out.begin() + static_cast<std::ptrdiff_t>(lead), out.end());
    return nf;
}

std::string GarsideNF::to_string() const {
    std::string s = "D^" + std::to_string(delta_power);
    for (const auto& p : factors) {
        s += " [";
        for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
        s += "]";
    }
    return s;
}

bool braid_equal(const BraidWord& a, const BraidWord& b) {
    return a.strands == b.strands && garside_nf(a) == garside_nf(b);
}

bool is_trivial(const BraidWord& b) {
    GarsideNF nf = garside_nf(b);
    return nf.delta_power == 0 && nf.factors.empty();
}

namespace {

// Bubble sort towards a[j] = final position of the strand starting at j.
void simple_word(const Perm& a, std::vector<int>& out) {
    std::vector<std::uint32_t> at(a.size());
    for (std::size_t i = 0; i < at.size(); ++i) at[i] = static_cast<std::uint32_t>(i);
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t p = 0; p + 1 < at.size(); ++p)
            if (a[at[p]] > a[at[p + 1]]) {
                std::swap(at[p], at[p + 1]);
                out.push_back(static_cast<int>(p) + 1);
                moved = true;
            }
    }
}

}  // namespace

BraidWord word_of(const GarsideNF& nf) {
    BraidWord w{nf.strands, {}};
    if (nf.strands <= 1) return w;
    std::vector<int> delta;
    simple_word(delta_of(nf.strands), delta);
    if (nf.delta_power < 0) {
        std::reverse(delta.begin(), delta.end());
        for (int& l : delta) l = -l;
    }
    for (int r = 0; r < std::abs(nf.delta_power); ++r) w.letters.insert(w.letters.end(), delta.begin(), delta.end());
    for (const auto& f : nf.factors) simple_word(f, w.letters);
    return w;
}

BraidWord shorten(const BraidWord& b) {
    BraidWord r = free_reduce(b);
    if (r.letters.size() < 3) return r;
    BraidWord n = word_of(garside_nf(r));
    return n.letters.size() < r.letters.size() ? n : r;
}

namespace {

void positive_block(std::vector<int>& out, int s, int p, int q) {
    for (int i = p - 1; i >= 0; --i)
        for (int t = 0; t < q; ++t) out.push_back(s + i + t + 1);
}

}  // namespace

BraidWord cable(const BraidWord& b, const std::vector<int>& widths) {
    if (static_cast<int>(widths.size()) != b.strands) throw Error(ErrorKind::WidthMismatch, "one width per strand required");
    for (int w : widths)
        if (w < 1) throw Error(ErrorKind::WidthMismatch, "widths must be positive");
    std::vector<int> w = widths;
    BraidWord out{0, {}};
    for (int x : w) out.strands += x;
    for (int l : b.letters) {
        const auto k = static_cast<std::size_t>(std::abs(l));
        int s = 0;
        for (std::size_t i = 0; i + 1 < k; ++i) s += w[i];
        const int p = w[k - 1];
        const int q = w[k];
        if (l > 0) {
            positive_block(out.letters, s, p, q);
        } else {
            std::vector<int> blk;
            positive_block(blk, s, q, p);
            for (auto it = blk.rbegin(); it != blk.rend(); ++it) out.letters.push_back(-*it);
        }
        std::swap(w[k - 1], w[k]);
    }
    return out;
}

BraidWord delete_strand(const BraidWord& b, int s) {
    if (s < 0 || s >= b.strands) throw Error(ErrorKind::WidthMismatch, "no such strand");
    BraidWord out{b.strands - 1, {}};
    int pos = s;
    for (int l : b.letters) {
        const int k = std::abs(l);
        if (pos == k - 1) {
            pos = k;
        } else if (pos == k) {
            pos = k - 1;
        } else {
            const int nk = pos < k - 1 ? k - 1 : k;
            out.letters.push_back(l > 0 ? nk : -nk);
        }
    }
    return out;
}

int max_pair_crossings(const BraidWord& b) {
    std::vector<int> at(static_cast<std::size_t>(b.strands));
    for (std::size_t i = 0; i < at.size(); ++i) at[i] = static_cast<int>(i);
    std::map<std::pair<int, int>, int> count;
    int best = 0;
    for (int l : b.letters) {
        const auto k = static_cast<std::size_t>(std::abs(l));
        auto key = std::minmax(at[k - 1], at[k]);
        best = std::max(best, ++count[{key.first, key.second}]);
        std::swap(at[k - 1], at[k]);
    }
    return best;
}

}  // namespace thompson
