#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcc {

enum class host_kind { complete, hypercube_edges, hypercube_vertices, grid, multipartite, path };

inline std::string to_string(host_kind k) {
    switch (k) {
        case host_kind::complete: return "complete";
        case host_kind::hypercube_edges: return "hypercube-edges";
        case host_kind::hypercube_vertices: return "hypercube-vertices";
        case host_kind::grid: return "grid";
        case host_kind::multipartite: return "multipartite";
        case host_kind::path: return "path";
    }
    return "?";
}

inline host_kind host_kind_from_string(const std::string& s) {
    for (auto k : {host_kind::complete, host_kind::hypercube_edges, host_kind::hypercube_vertices,
                   host_kind::grid, host_kind::multipartite, host_kind::path})
        if (to_string(k) == s) return k;
    if (s == "hypercube") return host_kind::hypercube_edges;
    throw std::invalid_argument("unknown host kind '" + s + "'");
}

// A graph on vertices 0..v-1 (linear order = index order) whose coloured
// units are either its edges (r = 2) or its vertices (r = 1).
class HostGraph {
public:
    host_kind kind;
    std::vector<int> params;
    int r = 2;

    int num_vertices() const { return nv_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_units() const { return r == 2 ? edges_.size() : static_cast<std::size_t>(nv_); }

    // -1 if uv is not an edge
    int edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= nv_ || u == v) return -1;
        if (dense_) return index_[static_cast<std::size_t>(u) * nv_ + v];
        auto it = sparse_.find({u, v});
        return it == sparse_.end() ? -1 : it->second;
    }
    bool adjacent(int u, int v) const { return edge_index(u, v) >= 0; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }

    std::string name() const {
        std::string s = to_string(kind) + "(";
        for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
        return s + ")";
    }

    bool same_as(const HostGraph& o) const { return kind == o.kind && params == o.params; }

    HostGraph(host_kind k, std::vector<int> p, int nv, std::vector<std::pair<int, int>> es, int r_)
        : kind(k), params(std::move(p)), r(r_), nv_(nv), edges_(std::move(es)) {
        for (auto& e : edges_)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        adj_.assign(nv_, {});
        dense_ = static_cast<std::size_t>(nv_) * nv_ <= (std::size_t(1) << 22);
        if (dense_) index_.assign(static_cast<std::size_t>(nv_) * nv_, -1);
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            auto [u, v] = edges_[i];
            if (u < 0 || v >= nv_ || u == v) throw std::invalid_argument("edge out of range");
            if (dense_) index_[static_cast<std::size_t>(u) * nv_ + v] = static_cast<int>(i);
            else sparse_[{u, v}] = static_cast<int>(i);
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

private:
    int nv_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    bool dense_ = true;
    std::vector<int> index_;
    std::map<std::pair<int, int>, int> sparse_;
};

using host_ptr = std::shared_ptr<const HostGraph>;

// Lexicographic index of edge {i,j}, i<j, in K_n.
inline std::size_t pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline host_ptr build_host(host_kind kind, const std::vector<int>& params) {
    auto need = [&](std::size_t c) {
        if (params.size() != c) throw std::invalid_argument(to_string(kind) + " expects " + std::to_string(c) + " parameter(s)");
        for (int p : params)
            if (p < 0) throw std::invalid_argument("negative host parameter");
    };
    std::vector<std::pair<int, int>> es;
    switch (kind) {
        case host_kind::complete: {
            need(1);
            int n = params[0];
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
            return std::make_shared<HostGraph>(kind, params, n, es, 2);
        }
        case host_kind::hypercube_edges:
        case host_kind::hypercube_vertices: {
            need(1);
            int n = params[0];
            if (n > 20) throw std::invalid_argument("hypercube dimension too large");
            int nv = 1 << n;
            for (int x = 0; x < nv; ++x)
                for (int b = 0; b < n; ++b)
                    if (!(x >> b & 1)) es.emplace_back(x, x | (1 << b));
            return std::make_shared<HostGraph>(kind, params, nv, es, kind == host_kind::hypercube_edges ? 2 : 1);
        }
        case host_kind::grid: {
            need(2);
            int a = params[0], b = params[1];
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < b; ++j) {
                    if (j + 1 < b) es.emplace_back(i * b + j, i * b + j + 1);
                    if (i + 1 < a) es.emplace_back(i * b + j, (i + 1) * b + j);
                }
            return std::make_shared<HostGraph>(kind, params, a * b, es, 2);
        }
        case host_kind::multipartite: {
            need(2);
            int q = params[0], n = params[1];
            int nv = q * n;
            for (int u = 0; u < nv; ++u)
                for (int v = u + 1; v < nv; ++v)
                    if (u / n != v / n) es.emplace_back(u, v);
            return std::make_shared<HostGraph>(kind, params, nv, es, 2);
        }
        case host_kind::path: {
            need(1);
            int n = params[0];
            for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
            return std::make_shared<HostGraph>(kind, params, n, es, 2);
        }
    }
    throw std::invalid_argument("bad host kind");
}

// K_n is requested constantly, so keep one instance per n.
inline host_ptr complete_host(int n) {
    static std::mutex mu;
    static std::map<int, host_ptr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& h = cache[n];
    if (!h) h = build_host(host_kind::complete, {n});
    return h;
}

// Host sequence: the family G_1, G_2, ... a property lives on.  For grids the
// sequence index n gives the n x n grid, for multipartite hosts K_q(n).
struct HostSequence {
    host_kind kind = host_kind::complete;
    int q = 0;  // multipartite part count

    host_ptr at(int n) const {
        switch (kind) {
            case host_kind::complete: return complete_host(n);
            case host_kind::grid: return build_host(kind, {n, n});
            case host_kind::multipartite: return build_host(kind, {q, n});
            default: return build_host(kind, {n});
        }
    }
    bool operator==(const HostSequence&) const = default;
};

// Calls f(phi) for every order-preserving injection phi: V(small) -> V(big)
// mapping edges to edges.  Returning false from f stops the walk.
inline void for_each_embedding(const HostGraph& small, const HostGraph& big,
                               const std::function<bool(const std::vector<int>&)>& f) {
    const int N = small.num_vertices(), V = big.num_vertices();
    if (N > V) return;
    std::vector<std::vector<int>> back(N);  // earlier neighbours
    for (auto [a, b] : small.edges()) back[b].push_back(a);
    std::vector<int> phi(N, -1);
    bool stop = false;
    std::function<void(int)> go = [&](int i) {
        if (stop) return;
        if (i == N) {
            if (!f(phi)) stop = true;
            return;
        }
        int lo = i ? phi[i - 1] + 1 : 0, hi = V - (N - i);
        auto ok = [&](int v) {
            for (int j : back[i])
                if (!big.adjacent(phi[j], v)) return false;
            return true;
        };
        if (!back[i].empty()) {
            // candidates from the neighbourhood of the earliest mapped neighbour
            const auto& nb = big.neighbours(phi[back[i].front()]);
            for (auto it = std::lower_bound(nb.begin(), nb.end(), lo); it != nb.end() && *it <= hi; ++it) {
                if (!ok(*it)) continue;
                phi[i] = *it;
                go(i + 1);
                if (stop) return;
            }
        } else {
            for (int v = lo; v <= hi; ++v) {
                phi[i] = v;
                go(i + 1);
                if (stop) return;
            }
        }
    };
    go(0);
}

// Unit indices of big hit by phi, listed in small's unit order.
inline std::vector<std::uint32_t> embedding_units(const HostGraph& small, const HostGraph& big,
                                                  const std::vector<int>& phi) {
    std::vector<std::uint32_t> u;
    if (small.r == 1) {
        u.assign(phi.begin(), phi.end());
    } else {
        u.reserve(small.num_edges());
        for (auto [a, b] : small.edges()) u.push_back(static_cast<std::uint32_t>(big.edge_index(phi[a], phi[b])));
    }
    return u;
}

inline std::vector<std::vector<int>> embeddings(const HostGraph& small, const HostGraph& big) {
    if (small.kind != big.kind) throw std::invalid_argument("embedding between different host kinds");
    std::vector<std::vector<int>> out;
    for_each_embedding(small, big, [&](const std::vector<int>& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

}  // namespace mcc
