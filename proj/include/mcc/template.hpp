#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "host.hpp"
#include "rng.hpp"

namespace mcc {

using palette = std::uint64_t;  // bit c-1 set <=> colour c allowed
using big_int = boost::multiprecision::cpp_int;

constexpr int max_colours = 32;

inline palette full_palette(int k) { return k >= 64 ? ~palette(0) : (palette(1) << k) - 1; }
inline palette colour_bit(int c) { return palette(1) << (c - 1); }
inline int palette_size(palette p) { return std::popcount(p); }

inline std::vector<int> palette_colours(palette p) {
    std::vector<int> out;
    for (int c = 1; p; ++c, p >>= 1)
        if (p & 1) out.push_back(c);
    return out;
}

inline palette palette_of(const std::vector<int>& colours) {
    palette p = 0;
    for (int c : colours) {
        if (c < 1 || c > 64) throw std::invalid_argument("colour out of range");
        p |= colour_bit(c);
    }
    return p;
}

inline void check_k(int k) {
    if (k < 1 || k > max_colours) throw std::invalid_argument("colour count k must lie in 1..32");
}

struct Colouring {
    host_ptr host;
    int k = 0;
    std::vector<std::uint8_t> colours;  // per unit, values 1..k

    Colouring() = default;
    Colouring(host_ptr h, int k_, std::vector<std::uint8_t> cs) : host(std::move(h)), k(k_), colours(std::move(cs)) {
        check_k(k);
        if (colours.size() != host->num_units()) throw std::invalid_argument("colouring size does not match host");
        for (auto c : colours)
            if (c < 1 || c > k) throw std::invalid_argument("colour outside 1..k");
    }
    static Colouring constant(host_ptr h, int k, int c) {
        std::size_t m = h->num_units();
        return Colouring(std::move(h), k, std::vector<std::uint8_t>(m, static_cast<std::uint8_t>(c)));
    }
    std::size_t size() const { return colours.size(); }
    int operator[](std::size_t e) const { return colours[e]; }
    // colour of edge {i,j}
    int at(int i, int j) const {
        int e = host->edge_index(i, j);
        if (e < 0) throw std::invalid_argument("not an edge");
        return colours[e];
    }
    bool operator==(const Colouring& o) const { return k == o.k && host->same_as(*o.host) && colours == o.colours; }
};

struct Template {
    host_ptr host;
    int k = 0;
    std::vector<palette> palettes;

    Template() = default;
    Template(host_ptr h, int k_, std::vector<palette> ps) : host(std::move(h)), k(k_), palettes(std::move(ps)) {
        check_k(k);
        if (palettes.size() != host->num_units()) throw std::invalid_argument("template size does not match host");
        for (auto p : palettes)
            if (p == 0 || (p & ~full_palette(k))) throw std::invalid_argument("palette empty or outside [k]");
    }
    static Template constant(host_ptr h, int k, palette p) {
        std::size_t m = h->num_units();
        return Template(std::move(h), k, std::vector<palette>(m, p));
    }
    static Template full(host_ptr h, int k) { return constant(std::move(h), k, full_palette(k)); }
    explicit Template(const Colouring& c) : host(c.host), k(c.k) {
        palettes.reserve(c.size());
        for (auto x : c.colours) palettes.push_back(colour_bit(x));
    }
    std::size_t size() const { return palettes.size(); }
    palette operator[](std::size_t e) const { return palettes[e]; }
    palette at(int i, int j) const {
        int e = host->edge_index(i, j);
        if (e < 0) throw std::invalid_argument("not an edge");
        return palettes[e];
    }
    bool operator==(const Template& o) const { return k == o.k && host->same_as(*o.host) && palettes == o.palettes; }
};

inline double log_k(double x, int k) { return std::log(x) / std::log(static_cast<double>(k)); }

inline double entropy(const Template& t) {
    if (t.k == 1) return 0.0;
    double s = 0;
    for (auto p : t.palettes) s += std::log(static_cast<double>(palette_size(p)));
    return s / std::log(static_cast<double>(t.k));
}

inline big_int realisation_count(const Template& t) {
    big_int r = 1;
    for (auto p : t.palettes) r *= palette_size(p);
    return r;
}

namespace detail {
inline void same_shape(const HostGraph& a, const HostGraph& b, int ka, int kb) {
    if (ka != kb) throw std::invalid_argument("colour counts differ");
    if (!a.same_as(b)) throw std::invalid_argument("hosts differ");
}

inline std::vector<int> check_subset(const HostGraph& h, std::vector<int> A) {
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i] < 0 || A[i] >= h.num_vertices()) throw std::invalid_argument("vertex subset not inside host");
        if (i && A[i] <= A[i - 1]) throw std::invalid_argument("vertex subset must be strictly increasing");
    }
    return A;
}
}  // namespace detail

// t|_A on K_|A| for a K_n template; vertices of A are 0-based and increasing.
inline Template restrict(const Template& t, const std::vector<int>& A) {
    if (t.host->kind != host_kind::complete) throw std::invalid_argument("restrict by vertex set needs a complete host");
    detail::check_subset(*t.host, A);
    if (A.size() < 2) throw std::invalid_argument("restriction needs at least two vertices");
    int m = static_cast<int>(A.size());
    std::vector<palette> ps;
    ps.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) ps.push_back(t.at(A[i], A[j]));
    return Template(complete_host(m), t.k, std::move(ps));
}

inline Colouring restrict(const Colouring& c, const std::vector<int>& A) {
    if (c.host->kind != host_kind::complete) throw std::invalid_argument("restrict by vertex set needs a complete host");
    detail::check_subset(*c.host, A);
    if (A.size() < 2) throw std::invalid_argument("restriction needs at least two vertices");
    int m = static_cast<int>(A.size());
    std::vector<std::uint8_t> cs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) cs.push_back(static_cast<std::uint8_t>(c.at(A[i], A[j])));
    return Colouring(complete_host(m), c.k, std::move(cs));
}

// Pull t back along an embedding phi of `small` into t's host.
inline Template restrict(const Template& t, const host_ptr& small, const std::vector<int>& phi) {
    auto u = embedding_units(*small, *t.host, phi);
    std::vector<palette> ps;
    for (auto x : u) {
        if (x >= t.size()) throw std::invalid_argument("map is not an embedding");
        ps.push_back(t.palettes[x]);
    }
    return Template(small, t.k, std::move(ps));
}

inline bool is_subtemplate(const Template& s, const Template& t) {
    if (s.k != t.k) throw std::invalid_argument("colour counts differ");
    if (s.host->r != t.host->r) throw std::invalid_argument("host uniformity differs");
    if (s.host->same_as(*t.host)) {
        for (std::size_t e = 0; e < s.size(); ++e)
            if (s.palettes[e] & ~t.palettes[e]) return false;
        return true;
    }
    bool found = false;
    for_each_embedding(*s.host, *t.host, [&](const std::vector<int>& phi) {
        auto u = embedding_units(*s.host, *t.host, phi);
        for (std::size_t e = 0; e < u.size(); ++e)
            if (s.palettes[e] & ~t.palettes[u[e]]) return true;
        found = true;
        return false;
    });
    return found;
}

inline bool realises(const Colouring& c, const Template& t) {
    detail::same_shape(*c.host, *t.host, c.k, t.k);
    for (std::size_t e = 0; e < c.size(); ++e)
        if (!(t.palettes[e] & colour_bit(c.colours[e]))) return false;
    return true;
}

inline Colouring sample_realisation(const Template& t, std::uint64_t seed) {
    counter_rng rng(seed);
    std::vector<std::uint8_t> cs(t.size());
    for (std::size_t e = 0; e < t.size(); ++e) {
        auto cols = palette_colours(t.palettes[e]);
        cs[e] = static_cast<std::uint8_t>(cols[rng.below(cols.size())]);
    }
    return Colouring(t.host, t.k, std::move(cs));
}

inline std::size_t edit_distance(const Template& s, const Template& t) {
    detail::same_shape(*s.host, *t.host, s.k, t.k);
    std::size_t d = 0;
    for (std::size_t e = 0; e < s.size(); ++e) d += s.palettes[e] != t.palettes[e];
    return d;
}

inline std::size_t edit_distance(const Colouring& c, const Template& t) {
    detail::same_shape(*c.host, *t.host, c.k, t.k);
    std::size_t d = 0;
    for (std::size_t e = 0; e < c.size(); ++e) d += !(t.palettes[e] & colour_bit(c.colours[e]));
    return d;
}

inline std::size_t edit_distance(const Colouring& a, const Colouring& b) {
    detail::same_shape(*a.host, *b.host, a.k, b.k);
    std::size_t d = 0;
    for (std::size_t e = 0; e < a.size(); ++e) d += a.colours[e] != b.colours[e];
    return d;
}

template <class X>
std::size_t edit_distance(const X& x, const std::vector<Template>& family) {
    if (family.empty()) throw std::invalid_argument("edit distance against an empty family");
    std::size_t best = static_cast<std::size_t>(-1);
    for (const auto& t : family) best = std::min(best, edit_distance(x, t));
    return best;
}

inline Template meet(const Template& t, const Template& u) {
    detail::same_shape(*t.host, *u.host, t.k, u.k);
    std::vector<palette> ps(t.size());
    for (std::size_t e = 0; e < t.size(); ++e) {
        ps[e] = t.palettes[e] & u.palettes[e];
        if (!ps[e]) throw empty_meet(e);
    }
    return Template(t.host, t.k, std::move(ps));
}

}  // namespace mcc
