#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "errors.hpp"
#include "search.hpp"
#include "template.hpp"

namespace mcc {

enum class property_kind { forb_family, predicate, symmetric_closure };

// An order-hereditary property of k-colourings on a host sequence.
struct Property {
    std::string id;
    std::string description;
    int k = 2;
    HostSequence hosts;
    property_kind kind = property_kind::forb_family;
    int order = 0;                  // N for families, m for predicates
    ForbiddenFamily family;         // forb_family / symmetric_closure
    std::function<bool(const Colouring&)> predicate;  // predicate kind, colourings of K_j, j <= m
    std::vector<int> monotone_colours;
    // below[c-1]: colours <= c in the partial order the property is
    // downward closed under (empty: no order)
    std::vector<palette> below;

    // Forbidden family that defines P_n for host index n.
    ForbiddenFamily family_at(int n) const {
        if (kind != property_kind::predicate) return family;
        int j = std::min(n, order);
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->by_order.find(j);
        if (it != cache_->by_order.end()) return it->second;
        auto F = non_members(j);
        cache_->by_order.emplace(j, F);
        return F;
    }

    host_ptr host(int n) const { return hosts.at(n); }

    bool is_down_set(palette p) const {
        if (below.empty()) return true;
        for (int c : palette_colours(p))
            if ((below[c - 1] & p) != below[c - 1]) return false;
        return true;
    }

    Property() : cache_(std::make_shared<Cache>()) {}

private:
    struct Cache {
        std::mutex mu;
        std::map<int, ForbiddenFamily> by_order;
    };
    std::shared_ptr<Cache> cache_;

    ForbiddenFamily non_members(int j) const {
        auto h = complete_host(j);
        std::size_t m = h->num_units();
        double total = std::pow(static_cast<double>(k), static_cast<double>(m));
        if (total > 4e6) throw resource_limit("predicate compilation at order " + std::to_string(j) + " too large");
        std::vector<std::vector<std::uint8_t>> bad;
        std::vector<std::uint8_t> cs(m, 1);
        while (true) {
            if (!predicate(Colouring(h, k, cs))) bad.push_back(cs);
            std::size_t e = 0;
            while (e < m && cs[e] == k) cs[e++] = 1;
            if (e == m) break;
            ++cs[e];
        }
        return ForbiddenFamily(h, j, k, std::move(bad));
    }
};

inline ConstraintSystem compile(const Property& P, int n) {
    auto F = P.family_at(n);
    return compile(F, P.host(n));
}

// Order on colours where i sits below everything else.
inline std::vector<palette> bottom_order(int k, int i) {
    std::vector<palette> b(k);
    for (int c = 1; c <= k; ++c) b[c - 1] = colour_bit(c) | colour_bit(i);
    return b;
}

inline Property make_family_property(std::string id, ForbiddenFamily F, HostSequence hosts = {},
                                     std::vector<int> monotone = {}, std::vector<palette> below = {}) {
    Property P;
    P.id = std::move(id);
    P.k = F.k;
    P.hosts = hosts;
    P.kind = property_kind::forb_family;
    P.order = F.N;
    P.family = std::move(F);
    P.monotone_colours = std::move(monotone);
    if (below.empty() && P.monotone_colours.size() == 1) below = bottom_order(P.k, P.monotone_colours[0]);
    P.below = std::move(below);
    return P;
}

// Predicate properties live on complete hosts; `pred` must be order-hereditary
// and is consulted on every colouring of K_j for j <= m.
inline Property make_predicate_property(std::string id, int k, int m, std::function<bool(const Colouring&)> pred,
                                        std::vector<int> monotone = {}, std::vector<palette> below = {}) {
    Property P;
    P.id = std::move(id);
    P.k = k;
    P.kind = property_kind::predicate;
    P.order = m;
    P.predicate = std::move(pred);
    P.monotone_colours = std::move(monotone);
    if (below.empty() && P.monotone_colours.size() == 1) below = bottom_order(k, P.monotone_colours[0]);
    P.below = std::move(below);
    return P;
}

// Closes F under all vertex permutations of K_N.
inline ForbiddenFamily symmetric_closure(const ForbiddenFamily& F) {
    if (F.pattern->kind != host_kind::complete) throw std::invalid_argument("symmetric closure needs a complete pattern");
    int N = F.pattern->num_vertices();
    std::vector<int> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::uint8_t>> out;
    do {
        for (auto& m : F.members) {
            std::vector<std::uint8_t> c(m.size());
            for (int i = 0; i < N; ++i)
                for (int j = i + 1; j < N; ++j) c[pair_index(N, i, j)] = m[pair_index(N, perm[i], perm[j])];
            out.push_back(std::move(c));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return ForbiddenFamily(F.pattern, F.N, F.k, std::move(out));
}

inline Property symmetric_closure(const Property& P) {
    Property Q = P;
    if (P.kind == property_kind::predicate) {
        Q.family = symmetric_closure(P.family_at(P.order));
        Q.order = Q.family.N;
    } else {
        Q.family = symmetric_closure(P.family);
    }
    Q.kind = property_kind::symmetric_closure;
    Q.id = P.id + "-sym";
    return Q;
}

inline bool violates(const Colouring& c, const ForbiddenFamily& F) {
    if (c.k != F.k) throw std::invalid_argument("colour counts differ");
    return !satisfies(compile(F, c.host), c.colours);
}

// Sequence index of a host built by HostSequence::at.
inline int host_index(const HostGraph& h) { return h.kind == host_kind::multipartite ? h.params[1] : h.params[0]; }

namespace detail {
inline int index_in(const Property& P, const HostGraph& h) {
    int n = host_index(h);
    if (!P.host(n)->same_as(h)) throw std::invalid_argument("host is not in the property's host sequence");
    return n;
}
}  // namespace detail

inline bool in_property(const Colouring& c, const Property& P) {
    if (c.k != P.k) throw std::invalid_argument("colour counts differ");
    return satisfies(compile(P, detail::index_in(P, *c.host)), c.colours);
}

inline std::uint64_t bad_pairs(const Template& t, const ForbiddenFamily& F) {
    if (t.k != F.k) throw std::invalid_argument("colour counts differ");
    return bad_count(compile(F, t.host), t.palettes).pairs;
}

inline std::uint64_t bad_sets(const Template& t, const ForbiddenFamily& F) {
    if (t.k != F.k) throw std::invalid_argument("colour counts differ");
    return bad_count(compile(F, t.host), t.palettes).sets;
}

inline bool template_in_property(const Template& t, const Property& P) {
    if (t.k != P.k) throw std::invalid_argument("colour counts differ");
    return bad_count(compile(P, detail::index_in(P, *t.host)), t.palettes).pairs == 0;
}

// ---------------------------------------------------------------- speed

inline std::vector<palette> singleton_candidates(int k) {
    std::vector<palette> c;
    for (int i = 1; i <= k; ++i) c.push_back(colour_bit(i));
    return c;
}

struct SpeedResult {
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
};

// Visits every member of P_n as a colour vector.
inline SpeedResult for_each_member(const Property& P, int n, const std::function<bool(const std::vector<std::uint8_t>&)>& f,
                                   std::uint64_t budget = 10'000'000'000ULL) {
    auto cs = compile(P, n);
    PaletteSearch s;
    s.cs = &cs;
    s.candidates = singleton_candidates(P.k);
    s.budget = budget;
    std::vector<std::uint8_t> col(cs.units());
    auto r = s.enumerate([&](const std::vector<int>& ch) {
        for (std::size_t e = 0; e < ch.size(); ++e) col[e] = static_cast<std::uint8_t>(ch[e] + 1);
        return f(col);
    });
    if (!r.complete) throw resource_limit("speed enumeration budget exceeded", r.leaves);
    return {r.leaves, r.nodes};
}

inline SpeedResult speed_detail(const Property& P, int n, std::uint64_t budget = 10'000'000'000ULL) {
    auto cs = compile(P, n);
    PaletteSearch s;
    s.cs = &cs;
    s.candidates = singleton_candidates(P.k);
    s.budget = budget;
    auto r = s.enumerate(nullptr);
    if (!r.complete) throw resource_limit("speed enumeration budget exceeded", r.leaves);
    return {r.leaves, r.nodes};
}

inline std::uint64_t speed(const Property& P, int n, std::uint64_t budget = 10'000'000'000ULL) {
    return speed_detail(P, n, budget).count;
}

// ---------------------------------------------------------------- encodings

enum class encoded_kind { digraph, orgraph, tournament, multigraph };

// data[i][j] is the arc indicator i->j for the directed kinds and the edge
// weight (symmetric) for multigraphs.  Vertices are 0-based here.
struct EncodedObject {
    encoded_kind kind = encoded_kind::digraph;
    int n = 0;
    int max_weight = 0;
    std::vector<std::vector<int>> data;

    bool operator==(const EncodedObject&) const = default;
};

inline int encoded_colours(encoded_kind kind, int d = 0) { return kind == encoded_kind::multigraph ? d + 1 : 4; }

inline Colouring encode(const EncodedObject& x) {
    auto h = complete_host(x.n);
    int k = encoded_colours(x.kind, x.max_weight);
    std::vector<std::uint8_t> cs;
    for (int i = 0; i < x.n; ++i)
        for (int j = i + 1; j < x.n; ++j) {
            int c;
            if (x.kind == encoded_kind::multigraph) {
                int w = x.data[i][j];
                if (w < 0 || w > x.max_weight || x.data[j][i] != w) throw malformed_encoding("bad multigraph weight");
                c = w + 1;
            } else {
                bool f = x.data[i][j], b = x.data[j][i];
                c = 1 + f + 2 * b;
                if (x.kind == encoded_kind::tournament && c != 2 && c != 3) throw malformed_encoding("tournament needs one arc per pair");
                if (x.kind == encoded_kind::orgraph && c == 4) throw malformed_encoding("orgraph has a double edge");
            }
            cs.push_back(static_cast<std::uint8_t>(c));
        }
    return Colouring(h, k, std::move(cs));
}

inline EncodedObject decode(const Colouring& c, encoded_kind kind, int d = 0) {
    if (c.host->kind != host_kind::complete) throw std::invalid_argument("decode needs a complete host");
    EncodedObject x;
    x.kind = kind;
    x.n = c.host->num_vertices();
    x.max_weight = kind == encoded_kind::multigraph ? d : 0;
    x.data.assign(x.n, std::vector<int>(x.n, 0));
    for (int i = 0; i < x.n; ++i)
        for (int j = i + 1; j < x.n; ++j) {
            int col = c.at(i, j);
            if (kind == encoded_kind::multigraph) {
                if (col > d + 1) throw malformed_encoding("colour above max weight");
                x.data[i][j] = x.data[j][i] = col - 1;
                continue;
            }
            if (col > 4 || (kind == encoded_kind::tournament && (col == 1 || col == 4)) ||
                (kind == encoded_kind::orgraph && col == 4))
                throw malformed_encoding("colour " + std::to_string(col) + " not allowed for this kind");
            x.data[i][j] = (col - 1) & 1;
            x.data[j][i] = (col - 1) >> 1 & 1;
        }
    return x;
}

// ---------------------------------------------------------------- colouring number

// Every graph on ell vertices whose vertices split into r (possibly empty)
// parts, part i a clique iff v[i], edges between parts arbitrary.  Graphs are
// 2-colourings of K_ell, colour 2 = edge.
inline std::set<std::vector<std::uint8_t>> universal_class_graphs(int r, const std::vector<int>& v, int ell,
                                                                   std::uint64_t budget = 50'000'000) {
    if (static_cast<int>(v.size()) != r) throw std::invalid_argument("v must have length r");
    std::set<std::vector<std::uint8_t>> out;
    std::size_t m = static_cast<std::size_t>(ell) * (ell - 1) / 2;
    std::vector<int> part(ell, 0);
    std::uint64_t work = 0;
    while (true) {
        std::vector<std::size_t> cross;
        std::vector<std::uint8_t> base(m, 1);
        for (int i = 0; i < ell; ++i)
            for (int j = i + 1; j < ell; ++j) {
                auto e = pair_index(ell, i, j);
                if (part[i] == part[j]) base[e] = v[part[i]] ? 2 : 1;
                else cross.push_back(e);
            }
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << cross.size()); ++mask) {
            if (++work > budget) throw resource_limit("universal class generation budget exceeded", out.size());
            auto g = base;
            for (std::size_t b = 0; b < cross.size(); ++b) g[cross[b]] = (mask >> b & 1) ? 2 : 1;
            out.insert(std::move(g));
        }
        int i = 0;
        while (i < ell && part[i] == r - 1) part[i++] = 0;
        if (i == ell) break;
        ++part[i];
    }
    return out;
}

inline bool universal_class_contained(const Property& P, int r, const std::vector<int>& v, int ell) {
    if (P.k != 2) throw std::invalid_argument("colouring number needs a graph property (k = 2)");
    auto cs = compile(P, ell);
    for (const auto& g : universal_class_graphs(r, v, ell))
        if (!satisfies(cs, g)) return false;
    return true;
}

struct ChiResult {
    int r = 0;
    std::vector<int> v;
};

inline ChiResult chi_c_lower_bound_detail(const Property& P, int r_max, int ell) {
    for (int r = r_max; r >= 1; --r)
        for (std::uint32_t bits = 0; bits < (1u << r); ++bits) {
            std::vector<int> v(r);
            for (int i = 0; i < r; ++i) v[i] = bits >> i & 1;
            if (universal_class_contained(P, r, v, ell)) return {r, v};
        }
    return {};
}

inline int chi_c_lower_bound(const Property& P, int r_max, int ell) { return chi_c_lower_bound_detail(P, r_max, ell).r; }

}  // namespace mcc
