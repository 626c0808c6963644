#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "extremal.hpp"
#include "properties.hpp"
#include "rng.hpp"
#include "template.hpp"

namespace mcc {

// Vertex (u, c) of the constraint hypergraph has id u*k + (c-1).
struct ConstraintHypergraph {
    int r = 0;
    int k = 0;
    std::size_t units = 0;
    std::vector<std::uint32_t> edges;  // num_edges * r, each edge sorted

    std::size_t num_vertices() const { return units * static_cast<std::size_t>(k); }
    std::size_t num_edges() const { return r ? edges.size() / r : 0; }
    const std::uint32_t* edge(std::size_t i) const { return edges.data() + i * r; }
    static std::uint32_t vertex(std::size_t unit, int colour, int k) {
        return static_cast<std::uint32_t>(unit * k + (colour - 1));
    }
};

struct HypergraphBuild {
    ConstraintHypergraph H;
    host_ptr host;
    int N = 0;
    // N = 2 (single-unit patterns): no hypergraph is needed, the forbidden
    // colours are simply removed from every palette
    std::optional<Template> direct;
};

inline HypergraphBuild build_constraint_hypergraph(const Property& P, int n) {
    auto cs = compile(P, n);
    HypergraphBuild b;
    b.host = cs.host;
    b.N = P.family_at(n).N;
    b.H.k = P.k;
    b.H.units = cs.units();
    b.H.r = cs.arity;
    if (cs.arity == 1) {
        std::vector<palette> ps(cs.units(), full_palette(P.k));
        for (std::size_t s = 0; s < cs.num_scopes(); ++s)
            for (std::size_t p = 0; p < cs.num_patterns(); ++p) ps[cs.scope(s)[0]] &= ~colour_bit(cs.pattern(p)[0]);
        for (auto p : ps)
            if (!p) throw infeasible("property is empty at this order");
        b.direct = Template(cs.host, P.k, std::move(ps));
        return b;
    }
    std::vector<std::uint32_t> e(cs.arity);
    for (std::size_t s = 0; s < cs.num_scopes(); ++s)
        for (std::size_t p = 0; p < cs.num_patterns(); ++p) {
            for (int j = 0; j < cs.arity; ++j) e[j] = ConstraintHypergraph::vertex(cs.scope(s)[j], cs.pattern(p)[j], P.k);
            std::sort(e.begin(), e.end());
            b.H.edges.insert(b.H.edges.end(), e.begin(), e.end());
        }
    return b;
}

inline double binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    double b = 1;
    for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
    return b;
}

// The keep-probability used for K_n hosts.
inline double sparsification_probability(double eps1, int N, int n, int k) {
    double e = 2 * binomial(N, 2) - 3;
    return eps1 / (24 * std::pow(static_cast<double>(k), e) * binomial(N, 3) * binomial(n - 3, N - 3));
}

struct SparsifyStats {
    double p = 1;
    double p_formula = 1;
    bool clipped = false;
    bool skipped = false;
    std::size_t e_H = 0, e_H1 = 0, e_H2 = 0;
    std::uint64_t overlapping_pairs = 0;  // Y_{H'}
    bool F1 = true;  // e(H') >= p e(H) / 2
    bool F2 = true;  // Y_{H'} <= (eps1/8) p C(n,N)
};

inline std::uint64_t overlapping_pairs(const ConstraintHypergraph& H, std::vector<std::pair<std::size_t, std::size_t>>* out = nullptr) {
    std::vector<std::vector<std::size_t>> by_vertex(H.num_vertices());
    for (std::size_t i = 0; i < H.num_edges(); ++i)
        for (int j = 0; j < H.r; ++j) by_vertex[H.edge(i)[j]].push_back(i);
    std::uint64_t count = 0;
    std::vector<int> shared(H.num_edges(), 0);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < H.num_edges(); ++i) {
        touched.clear();
        for (int j = 0; j < H.r; ++j)
            for (auto f : by_vertex[H.edge(i)[j]])
                if (f > i && shared[f]++ == 0) touched.push_back(f);
        std::sort(touched.begin(), touched.end());
        for (auto f : touched) {
            if (shared[f] >= 2) {
                ++count;
                if (out) out->emplace_back(i, f);
            }
            shared[f] = 0;
        }
    }
    return count;
}

inline ConstraintHypergraph linearize(const ConstraintHypergraph& H, std::uint64_t* pairs = nullptr) {
    std::vector<std::pair<std::size_t, std::size_t>> ov;
    auto y = overlapping_pairs(H, &ov);
    if (pairs) *pairs = y;
    std::vector<char> dead(H.num_edges(), 0);
    for (auto [a, b] : ov)
        if (!dead[a] && !dead[b]) dead[b] = 1;
    ConstraintHypergraph L = H;
    L.edges.clear();
    for (std::size_t i = 0; i < H.num_edges(); ++i)
        if (!dead[i]) L.edges.insert(L.edges.end(), H.edge(i), H.edge(i) + H.r);
    return L;
}

inline ConstraintHypergraph sparsify(const ConstraintHypergraph& H, double p, std::uint64_t seed) {
    ConstraintHypergraph S = H;
    S.edges.clear();
    counter_rng rng(seed);
    for (std::size_t i = 0; i < H.num_edges(); ++i)
        if (p >= 1 || rng.bernoulli(p)) S.edges.insert(S.edges.end(), H.edge(i), H.edge(i) + H.r);
    return S;
}

// Keeps each hyperedge with probability p (skipped: p = 1), then deletes the
// later edge of every overlapping pair.  F3 is checked later, per container.
inline ConstraintHypergraph sparsify_and_linearize(const ConstraintHypergraph& H, double eps1, std::uint64_t seed, int N, int n,
                                                   SparsifyStats* stats = nullptr, bool skip = false) {
    SparsifyStats st;
    st.e_H = H.num_edges();
    st.p_formula = sparsification_probability(eps1, N, n, H.k);
    st.p = skip ? 1.0 : st.p_formula;
    st.skipped = skip;
    if (st.p > 1 || st.p < 0) {
        st.clipped = true;
        st.p = std::clamp(st.p, 0.0, 1.0);
    }
    auto S = sparsify(H, st.p, seed);
    st.e_H1 = S.num_edges();
    auto L = linearize(S, &st.overlapping_pairs);
    st.e_H2 = L.num_edges();
    st.F1 = static_cast<double>(st.e_H1) >= st.p * st.e_H / 2;
    st.F2 = static_cast<double>(st.overlapping_pairs) <= eps1 / 8 * st.p * binomial(n, N);
    if (stats) *stats = st;
    return L;
}

// Containers as bitsets over V(H).
using vertex_set = std::vector<std::uint64_t>;

inline bool contains(const vertex_set& s, std::size_t v) { return s[v >> 6] >> (v & 63) & 1; }

inline std::size_t induced_edges(const ConstraintHypergraph& H, const vertex_set& C) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < H.num_edges(); ++i) {
        bool in = true;
        for (int j = 0; j < H.r && in; ++j) in = contains(C, H.edge(i)[j]);
        m += in;
    }
    return m;
}

struct ContainerFamily {
    std::vector<vertex_set> containers;
    std::uint64_t nodes = 0;
    std::size_t leaves = 0;  // before de-duplication
    double threshold = 0;    // delta * e(H)
    std::size_t max_induced = 0;
};

// Max-degree fingerprint branching.  At each node the max-degree vertex v of
// H[C] outside the fingerprint F either leaves C, or joins F; in the latter
// case every vertex completing an edge with F leaves C.  A node with
// e(H[C]) < delta e(H) (or no edges at all) is a container.
inline ContainerFamily compute_containers(const ConstraintHypergraph& H, double delta, std::uint64_t budget = 50'000'000) {
    const std::size_t V = H.num_vertices(), M = H.num_edges();
    const int r = H.r;
    ContainerFamily fam;
    fam.threshold = delta * static_cast<double>(M);
    std::vector<std::vector<std::uint32_t>> inc(V);
    for (std::size_t i = 0; i < M; ++i)
        for (int j = 0; j < r; ++j) inc[H.edge(i)[j]].push_back(static_cast<std::uint32_t>(i));
    std::vector<char> inC(V, 1), inF(V, 0), alive(M, 1);
    std::vector<int> deg(V, 0), fcount(M, 0);
    for (std::size_t v = 0; v < V; ++v) deg[v] = static_cast<int>(inc[v].size());
    std::size_t live = M;
    std::vector<std::uint32_t> killed;     // edge trail
    std::vector<std::uint32_t> removed;    // vertex trail
    std::set<vertex_set> out;

    auto remove_vertex = [&](std::uint32_t v) {
        inC[v] = 0;
        removed.push_back(v);
        for (auto f : inc[v]) {
            if (!alive[f]) continue;
            alive[f] = 0;
            --live;
            killed.push_back(f);
            for (int j = 0; j < r; ++j) --deg[H.edge(f)[j]];
        }
    };
    auto undo = [&](std::size_t vm, std::size_t em) {
        while (killed.size() > em) {
            auto f = killed.back();
            killed.pop_back();
            alive[f] = 1;
            ++live;
            for (int j = 0; j < r; ++j) ++deg[H.edge(f)[j]];
        }
        while (removed.size() > vm) {
            inC[removed.back()] = 1;
            removed.pop_back();
        }
    };

    std::function<void()> go = [&]() {
        if (++fam.nodes > budget) throw resource_limit("container recursion budget exceeded", out.size());
        if (live == 0 || static_cast<double>(live) < fam.threshold) {
            vertex_set C((V + 63) / 64, 0);
            for (std::size_t v = 0; v < V; ++v)
                if (inC[v]) C[v >> 6] |= std::uint64_t(1) << (v & 63);
            fam.max_induced = std::max(fam.max_induced, live);
            ++fam.leaves;
            out.insert(std::move(C));
            return;
        }
        std::uint32_t v = 0;
        int best = -1;
        for (std::size_t u = 0; u < V; ++u)
            if (inC[u] && !inF[u] && deg[u] > best) {
                best = deg[u];
                v = static_cast<std::uint32_t>(u);
            }
        // v not in the independent set
        std::size_t vm = removed.size(), em = killed.size();
        remove_vertex(v);
        go();
        undo(vm, em);
        // v in the fingerprint
        inF[v] = 1;
        std::vector<std::uint32_t> forced;
        for (auto f : inc[v]) {
            ++fcount[f];
            if (alive[f] && fcount[f] == r - 1)
                for (int j = 0; j < r; ++j) {
                    auto w = H.edge(f)[j];
                    if (!inF[w]) forced.push_back(w);
                }
        }
        for (auto w : forced)
            if (inC[w]) remove_vertex(w);
        go();
        undo(vm, em);
        for (auto f : inc[v]) --fcount[f];
        inF[v] = 0;
    };
    go();
    fam.containers.assign(out.begin(), out.end());
    return fam;
}

struct TemplateExtraction {
    std::vector<Template> templates;
    std::size_t dropped = 0;
};

// t(e) = {i : (e,i) in C}; containers leaving some unit without colours are
// dropped.
inline TemplateExtraction templates_from_containers(const std::vector<vertex_set>& Cs, const host_ptr& host, int k) {
    TemplateExtraction out;
    const std::size_t U = host->num_units();
    for (const auto& C : Cs) {
        std::vector<palette> ps(U, 0);
        bool proper = true;
        for (std::size_t u = 0; u < U && proper; ++u) {
            for (int c = 1; c <= k; ++c)
                if (contains(C, ConstraintHypergraph::vertex(u, c, k))) ps[u] |= colour_bit(c);
            proper = ps[u] != 0;
        }
        if (proper) out.templates.emplace_back(host, k, std::move(ps));
        else ++out.dropped;
    }
    return out;
}

inline std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n, double z = 1.959963984540054) {
    if (n == 0) return {0.0, 1.0};
    double ph = static_cast<double>(hits) / n, z2 = z * z, nn = static_cast<double>(n);
    double centre = (ph + z2 / (2 * nn)) / (1 + z2 / nn);
    double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

enum class coverage_mode { exact, sampled, automatic };

struct ContainerReport {
    std::size_t family_size = 0;
    std::size_t dropped = 0;
    double max_entropy = 0;
    std::vector<std::uint64_t> bad_sets;  // per template
    std::uint64_t max_bad_sets = 0;
    double eps = 0;
    double bad_set_bound = 0;  // eps * C(n,N)
    bool bad_sets_ok = true;
    bool coverage_exact = false;
    std::uint64_t checked = 0, covered = 0;
    double coverage = 0, coverage_lo = 0, coverage_hi = 1;
    std::optional<double> ex;
    double entropy_bound = 0;  // ex + eps C(n,2)
    bool entropy_ok = true;
    SparsifyStats sparsify;
    std::size_t F3_checked = 0, F3_failed = 0;
    std::uint64_t container_nodes = 0;
    std::size_t e_H = 0, v_H = 0;
};

namespace detail {
// covers[u*k + c-1] is the set of templates whose palette at u holds c
struct CoverIndex {
    std::size_t words = 0;
    int k = 0;
    std::vector<std::vector<std::uint64_t>> covers;

    CoverIndex(const std::vector<Template>& T, std::size_t units, int k_) : words((T.size() + 63) / 64), k(k_) {
        covers.assign(units * k, std::vector<std::uint64_t>(words, 0));
        for (std::size_t t = 0; t < T.size(); ++t)
            for (std::size_t u = 0; u < units; ++u)
                for (int c : palette_colours(T[t].palettes[u])) covers[u * k + c - 1][t >> 6] |= std::uint64_t(1) << (t & 63);
    }
    bool covered(const std::vector<std::uint8_t>& col) const {
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t x = ~std::uint64_t(0);
            for (std::size_t u = 0; u < col.size() && x; ++u) x &= covers[u * k + col[u] - 1][w];
            if (x) return true;
        }
        return false;
    }
};
}  // namespace detail

inline ContainerReport validate_container_family(const std::vector<Template>& T, const Property& P, int n, coverage_mode mode,
                                                 double eps, std::optional<double> ex = std::nullopt, int samples = 100'000,
                                                 std::uint64_t seed = 0, std::uint64_t exact_limit = 50'000'000) {
    if (T.empty()) throw std::invalid_argument("container family is empty");
    ContainerReport rep;
    auto cs = compile(P, n);
    rep.family_size = T.size();
    rep.eps = eps;
    rep.bad_set_bound = eps * static_cast<double>(cs.num_scopes());
    rep.max_entropy = 0;
    for (const auto& t : T) {
        auto b = bad_count(cs, t.palettes).sets;
        rep.bad_sets.push_back(b);
        rep.max_bad_sets = std::max(rep.max_bad_sets, b);
        rep.max_entropy = std::max(rep.max_entropy, entropy(t));
    }
    rep.bad_sets_ok = static_cast<double>(rep.max_bad_sets) < rep.bad_set_bound;
    rep.ex = ex;
    if (ex) {
        rep.entropy_bound = *ex + eps * static_cast<double>(cs.units());
        rep.entropy_ok = rep.max_entropy <= rep.entropy_bound + 1e-9;
    }
    // order by entropy so the widest templates are tried first
    std::vector<std::size_t> idx(T.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return entropy(T[a]) > entropy(T[b]); });
    std::vector<Template> sorted;
    sorted.reserve(T.size());
    for (auto i : idx) sorted.push_back(T[i]);
    detail::CoverIndex index(sorted, cs.units(), P.k);

    bool exact = mode == coverage_mode::exact;
    if (mode == coverage_mode::automatic) {
        double total = std::pow(static_cast<double>(P.k), static_cast<double>(cs.units()));
        exact = total <= 1e9;
    }
    if (exact) {
        for_each_member(P, n, [&](const std::vector<std::uint8_t>& c) {
            ++rep.checked;
            rep.covered += index.covered(c);
            return true;
        }, exact_limit * 4);
        rep.coverage_exact = true;
        rep.coverage = rep.checked ? static_cast<double>(rep.covered) / rep.checked : 1.0;
        rep.coverage_lo = rep.coverage_hi = rep.coverage;
    } else {
        for (const auto& c : sample_members(P, n, samples, seed)) {
            ++rep.checked;
            rep.covered += index.covered(c.colours);
        }
        rep.coverage = static_cast<double>(rep.covered) / rep.checked;
        std::tie(rep.coverage_lo, rep.coverage_hi) = wilson_interval(rep.covered, rep.checked);
    }
    return rep;
}

struct ContainerPipelineOptions {
    double delta = 0.1;
    double eps1 = 0.5;
    std::optional<double> eps;  // bad-set tolerance; default derived from delta
    std::uint64_t seed = 0;
    bool no_sparsify = false;
    coverage_mode coverage = coverage_mode::automatic;
    int samples = 100'000;
    bool with_ex = true;
    std::uint64_t budget = 50'000'000;
};

struct ContainerPipelineResult {
    ContainerReport report;
    std::vector<Template> templates;
};

inline ContainerPipelineResult run_container_pipeline(const Property& P, int n, const ContainerPipelineOptions& opt) {
    ContainerPipelineResult out;
    auto b = build_constraint_hypergraph(P, n);
    std::optional<double> ex;
    if (opt.with_ex) {
        auto r = extremal_entropy(P, n);
        if (r.proved) ex = r.value;
    }
    if (b.direct) {
        out.templates = {*b.direct};
        out.report = validate_container_family(out.templates, P, n, opt.coverage, opt.eps.value_or(opt.delta), ex, opt.samples, opt.seed);
        return out;
    }
    SparsifyStats st;
    auto L = sparsify_and_linearize(b.H, opt.eps1, opt.seed, b.N, n, &st, opt.no_sparsify);
    auto fam = compute_containers(L, opt.delta, opt.budget);
    auto ext = templates_from_containers(fam.containers, b.host, P.k);
    if (ext.templates.empty()) throw infeasible("every container left some edge without colours");
    // Each bad set of a template puts at least one edge of H inside its
    // container; with H'' = H that bounds the bad sets by delta e(H).
    double scopes = static_cast<double>(compile(P, n).num_scopes());
    double eps = opt.eps ? *opt.eps : (opt.no_sparsify ? opt.delta * b.H.num_edges() / scopes : opt.eps1);
    out.report = validate_container_family(ext.templates, P, n, opt.coverage, eps, ex, opt.samples, opt.seed);
    out.report.dropped = ext.dropped;
    out.report.sparsify = st;
    out.report.container_nodes = fam.nodes;
    out.report.e_H = b.H.num_edges();
    out.report.v_H = b.H.num_vertices();
    // F3 surrogate on the produced containers
    if (!opt.no_sparsify) {
        auto Hp = sparsify(b.H, st.p, opt.seed);  // H' again, same seed
        for (const auto& C : fam.containers) {
            double eh = static_cast<double>(induced_edges(b.H, C));
            if (eh < opt.eps1 * b.H.num_edges()) continue;
            ++out.report.F3_checked;
            if (static_cast<double>(induced_edges(Hp, C)) < opt.eps1 / 2 * Hp.num_edges()) ++out.report.F3_failed;
        }
    }
    out.templates = std::move(ext.templates);
    return out;
}

}  // namespace mcc
