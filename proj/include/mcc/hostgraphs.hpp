#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "extremal.hpp"
#include "host.hpp"
#include "properties.hpp"
#include "template.hpp"

namespace mcc {

struct EmbeddingStats {
    int N = 0, n = 0;
    big_int count = 0;
    // ordered pairs (self-pairs included) sharing >= 2 edges / vertices;
    // I and J are half of these
    big_int ordered_I = 0;
    big_int ordered_J = 0;
    double I = 0, J = 0;
    double ratio = 0;         // e(G_n) I / count^2
    double vertex_ratio = 0;  // v(G_n) J / count^2
};

namespace detail {
inline big_int overlapping_ordered_pairs(const std::vector<std::vector<std::uint32_t>>& items, std::size_t universe) {
    std::vector<std::vector<std::uint32_t>> by(universe);
    for (std::uint32_t a = 0; a < items.size(); ++a)
        for (auto x : items[a]) by[x].push_back(a);
    big_int total = 0;
    std::vector<std::uint32_t> shared(items.size(), 0), touched;
    for (std::uint32_t a = 0; a < items.size(); ++a) {
        touched.clear();
        for (auto x : items[a])
            for (auto b : by[x])
                if (shared[b]++ == 0) touched.push_back(b);
        std::uint64_t here = 0;
        for (auto b : touched) {
            here += shared[b] >= 2;
            shared[b] = 0;
        }
        total += here;
    }
    return total;
}
}  // namespace detail

inline EmbeddingStats overlap_statistics(const HostSequence& seq, int N, int n, std::uint64_t budget = 50'000'000) {
    auto small = seq.at(N), big = seq.at(n);
    EmbeddingStats st;
    st.N = N;
    st.n = n;
    std::vector<std::vector<std::uint32_t>> edge_sets, vertex_sets;
    for_each_embedding(*small, *big, [&](const std::vector<int>& phi) {
        if (edge_sets.size() >= budget) throw resource_limit("embedding enumeration budget exceeded", edge_sets.size());
        std::vector<std::uint32_t> es;
        for (auto [a, b] : small->edges()) es.push_back(static_cast<std::uint32_t>(big->edge_index(phi[a], phi[b])));
        edge_sets.push_back(std::move(es));
        vertex_sets.emplace_back(phi.begin(), phi.end());
        return true;
    });
    st.count = edge_sets.size();
    st.ordered_I = detail::overlapping_ordered_pairs(edge_sets, big->num_edges());
    st.ordered_J = detail::overlapping_ordered_pairs(vertex_sets, static_cast<std::size_t>(big->num_vertices()));
    st.I = static_cast<double>(st.ordered_I) / 2;
    st.J = static_cast<double>(st.ordered_J) / 2;
    double c2 = static_cast<double>(st.count) * static_cast<double>(st.count);
    if (c2 > 0) {
        st.ratio = static_cast<double>(big->num_edges()) * st.I / c2;
        st.vertex_ratio = static_cast<double>(big->num_vertices()) * st.J / c2;
    }
    return st;
}

struct GoodnessTable {
    std::vector<EmbeddingStats> rows;
    std::string trend;  // "strictly decreasing", "nonincreasing" or "not monotone"
};

inline GoodnessTable goodness_diagnostic(const HostSequence& seq, int N, int n_from, int n_to) {
    GoodnessTable g;
    bool strict = true, weak = true;
    for (int n = n_from; n <= n_to; ++n) {
        g.rows.push_back(overlap_statistics(seq, N, n));
        if (g.rows.size() > 1) {
            double a = g.rows[g.rows.size() - 2].ratio, b = g.rows.back().ratio;
            strict = strict && b < a;
            weak = weak && b <= a;
        }
    }
    g.trend = strict ? "strictly decreasing" : weak ? "nonincreasing" : "not monotone";
    return g;
}

// Q_N -> Q_n placing the N free coordinates B (1-based, increasing) and
// fixing the others to `fixed` (in coordinate order).  Coordinate x_1 is the
// most significant bit of the vertex index.
inline std::vector<int> subcube_map(int n, const std::vector<int>& B, const std::vector<int>& fixed) {
    int N = static_cast<int>(B.size());
    if (static_cast<int>(fixed.size()) != n - N) throw std::invalid_argument("fixed values must cover the other coordinates");
    std::vector<int> is_free(n + 1, 0);
    for (std::size_t i = 0; i < B.size(); ++i) {
        if (B[i] < 1 || B[i] > n || (i && B[i] <= B[i - 1])) throw std::invalid_argument("B must be increasing in 1..n");
        is_free[B[i]] = 1;
    }
    std::vector<int> phi(std::size_t(1) << N);
    for (int y = 0; y < (1 << N); ++y) {
        int x = 0, fi = 0, bi = 0;
        for (int c = 1; c <= n; ++c) {
            int bit = is_free[c] ? (y >> (N - 1 - bi++) & 1) : fixed[fi++];
            x |= bit << (n - c);
        }
        phi[y] = x;
    }
    return phi;
}

// ---------------------------------------------------------------- path DP

// Exact ex(P_n, P) for a property on the path sequence whose forbidden
// colourings live on at most two consecutive edges.
inline ExtremalResult path_extremal_dp(const Property& P, int n) {
    if (P.hosts.kind != host_kind::path || P.family.N > 3) throw std::invalid_argument("path DP needs a path property with N <= 3");
    auto host = P.host(n);
    const std::size_t E = host->num_edges();
    auto cand = palette_candidates(P, true);
    std::vector<double> score;
    for (auto p : cand) score.push_back(log_k(palette_size(p), P.k));
    const std::size_t C = cand.size();
    const auto& F = P.family;
    auto single_ok = [&](palette p) {
        if (F.N != 2) return true;
        for (auto& m : F.members)
            if (p & colour_bit(m[0])) return false;
        return true;
    };
    auto pair_ok = [&](palette p, palette q) {
        if (F.N != 3) return true;
        for (auto& m : F.members)
            if ((p & colour_bit(m[0])) && (q & colour_bit(m[1]))) return false;
        return true;
    };
    ExtremalResult out;
    if (E == 0) {
        out.witness = Template(host, P.k, {});
        out.proved = true;
        return out;
    }
    const double NEG = -1e300;
    std::vector<std::vector<double>> best(E, std::vector<double>(C, NEG));
    std::vector<std::vector<int>> from(E, std::vector<int>(C, -1));
    for (std::size_t c = 0; c < C; ++c)
        if (single_ok(cand[c])) best[0][c] = score[c];
    for (std::size_t e = 1; e < E; ++e)
        for (std::size_t c = 0; c < C; ++c) {
            if (!single_ok(cand[c])) continue;
            for (std::size_t b = 0; b < C; ++b) {
                ++out.nodes;
                if (best[e - 1][b] <= NEG || !pair_ok(cand[b], cand[c])) continue;
                double v = best[e - 1][b] + score[c];
                if (v > best[e][c] + 1e-12) {
                    best[e][c] = v;
                    from[e][c] = static_cast<int>(b);
                }
            }
        }
    int arg = -1;
    for (std::size_t c = 0; c < C; ++c)
        if (best[E - 1][c] > NEG && (arg < 0 || best[E - 1][c] > best[E - 1][arg] + 1e-12)) arg = static_cast<int>(c);
    if (arg < 0) throw infeasible("property is empty at this order");
    std::vector<palette> ps(E);
    for (std::size_t e = E; e-- > 0;) {
        ps[e] = cand[arg];
        arg = from[e][arg];
    }
    out.witness = Template(host, P.k, std::move(ps));
    out.value = entropy(out.witness);
    out.proved = true;
    return out;
}

// ex(G_n, P): the path DP for path properties, branch and bound otherwise.
inline ExtremalResult extremal_entropy_host(const Property& P, int n, const ExtremalOptions& opt = {}) {
    if (P.hosts.kind == host_kind::path && P.family.N <= 3 && P.kind != property_kind::predicate) return path_extremal_dp(P, n);
    return extremal_entropy(P, n, opt);
}

}  // namespace mcc
