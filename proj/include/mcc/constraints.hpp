#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "host.hpp"
#include "template.hpp"

namespace mcc {

// A finite set of colourings of a pattern host G_N.  Members are colour
// vectors in the pattern's unit order.
struct ForbiddenFamily {
    host_ptr pattern;
    int N = 0;  // index of the pattern in its host sequence
    int k = 0;
    std::vector<std::vector<std::uint8_t>> members;

    ForbiddenFamily() = default;
    ForbiddenFamily(host_ptr pat, int N_, int k_, std::vector<std::vector<std::uint8_t>> ms)
        : pattern(std::move(pat)), N(N_), k(k_), members(std::move(ms)) {
        check_k(k);
        for (auto& m : members) {
            if (m.size() != pattern->num_units()) throw std::invalid_argument("member size does not match pattern host");
            for (auto c : m)
                if (c < 1 || c > k) throw std::invalid_argument("member colour outside 1..k");
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }
    // Complete-graph family on K_N.
    static ForbiddenFamily on_complete(int N, int k, std::vector<std::vector<std::uint8_t>> ms) {
        return ForbiddenFamily(complete_host(N), N, k, std::move(ms));
    }
    Colouring member(std::size_t i) const { return Colouring(pattern, k, members[i]); }
};

// Forb(F) on one concrete host: a list of scopes (the images of G_N) and the
// forbidden colour tuples, both in pattern unit order.
struct ConstraintSystem {
    host_ptr host;
    int k = 0;
    int arity = 0;
    std::vector<std::uint32_t> scopes;    // num_scopes * arity
    std::vector<std::uint8_t> patterns;   // num_patterns * arity

    std::size_t units() const { return host->num_units(); }
    std::size_t num_scopes() const { return arity ? scopes.size() / arity : 0; }
    std::size_t num_patterns() const { return arity ? patterns.size() / arity : 0; }
    const std::uint32_t* scope(std::size_t s) const { return scopes.data() + s * arity; }
    const std::uint8_t* pattern(std::size_t p) const { return patterns.data() + p * arity; }
};

inline ConstraintSystem compile(const ForbiddenFamily& F, const host_ptr& host) {
    ConstraintSystem cs;
    cs.host = host;
    cs.k = F.k;
    cs.arity = static_cast<int>(F.pattern->num_units());
    if (F.pattern->r != host->r) throw std::invalid_argument("pattern and host uniformity differ");
    if (F.members.empty() || cs.arity == 0) {
        cs.arity = 0;
        return cs;
    }
    for (auto& m : F.members) cs.patterns.insert(cs.patterns.end(), m.begin(), m.end());
    for_each_embedding(*F.pattern, *host, [&](const std::vector<int>& phi) {
        auto u = embedding_units(*F.pattern, *host, phi);
        cs.scopes.insert(cs.scopes.end(), u.begin(), u.end());
        return true;
    });
    return cs;
}

// Does the colour tuple on scope s (read through `colour_of`) equal pattern p?
template <class Get>
bool scope_matches(const ConstraintSystem& cs, std::size_t s, std::size_t p, Get&& colour_of) {
    const auto* sc = cs.scope(s);
    const auto* pt = cs.pattern(p);
    for (int j = 0; j < cs.arity; ++j)
        if (colour_of(sc[j]) != pt[j]) return false;
    return true;
}

inline bool satisfies(const ConstraintSystem& cs, const std::vector<std::uint8_t>& colours) {
    for (std::size_t s = 0; s < cs.num_scopes(); ++s)
        for (std::size_t p = 0; p < cs.num_patterns(); ++p)
            if (scope_matches(cs, s, p, [&](std::uint32_t u) { return colours[u]; })) return false;
    return true;
}

// Number of (scope, pattern) pairs with the pattern realisable in t, and the
// number of scopes carrying at least one.
struct BadCount {
    std::uint64_t pairs = 0;
    std::uint64_t sets = 0;
};

inline BadCount bad_count(const ConstraintSystem& cs, const std::vector<palette>& pal) {
    BadCount b;
    for (std::size_t s = 0; s < cs.num_scopes(); ++s) {
        const auto* sc = cs.scope(s);
        std::uint64_t here = 0;
        for (std::size_t p = 0; p < cs.num_patterns(); ++p) {
            const auto* pt = cs.pattern(p);
            bool ok = true;
            for (int j = 0; j < cs.arity && ok; ++j) ok = pal[sc[j]] & colour_bit(pt[j]);
            here += ok;
        }
        b.pairs += here;
        b.sets += here > 0;
    }
    return b;
}

}  // namespace mcc
