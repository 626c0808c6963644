#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mcc/hostgraphs.hpp"
#include "mcc/registry.hpp"

using namespace mcc;

namespace {

// every increasing vertex map that sends edges to edges
std::vector<std::vector<int>> brute_embeddings(const HostGraph& s, const HostGraph& b) {
    std::vector<std::vector<int>> out;
    int N = s.num_vertices(), V = b.num_vertices();
    std::vector<int> phi(N);
    std::function<void(int, int)> go = [&](int i, int from) {
        if (i == N) {
            for (auto [u, v] : s.edges())
                if (!b.adjacent(phi[u], phi[v])) return;
            out.push_back(phi);
            return;
        }
        for (int x = from; x < V; ++x) {
            phi[i] = x;
            go(i + 1, x + 1);
        }
    };
    go(0, 0);
    return out;
}

std::set<int> image_edges(const HostGraph& s, const HostGraph& b, const std::vector<int>& phi) {
    std::set<int> e;
    for (auto [u, v] : s.edges()) e.insert(b.edge_index(phi[u], phi[v]));
    return e;
}

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(Build, Examples) {
    EXPECT_EQ(build_host(host_kind::hypercube_edges, {4})->num_edges(), 32u);
    auto k32 = build_host(host_kind::multipartite, {3, 2});
    EXPECT_EQ(k32->num_vertices(), 6);
    EXPECT_EQ(k32->num_edges(), 12u);
    EXPECT_EQ(build_host(host_kind::path, {5})->num_edges(), 4u);
    EXPECT_EQ(build_host(host_kind::grid, {3, 4})->num_edges(), 17u);
    auto qv = build_host(host_kind::hypercube_vertices, {3});
    EXPECT_EQ(qv->r, 1);
    EXPECT_EQ(qv->num_units(), 8u);
    EXPECT_THROW(build_host(host_kind::grid, {3}), std::invalid_argument);
    EXPECT_THROW(build_host(host_kind::path, {-1}), std::invalid_argument);
}

TEST(Build, HypercubeEdgeCounts) {
    for (int n = 1; n <= 8; ++n) {
        auto q = build_host(host_kind::hypercube_edges, {n});
        EXPECT_EQ(q->num_edges(), static_cast<std::size_t>(n) << (n - 1));
        for (auto [u, v] : q->edges()) EXPECT_EQ(std::popcount(static_cast<unsigned>(u ^ v)), 1);
    }
}

TEST(Build, GridRowMajor) {
    auto g = build_host(host_kind::grid, {2, 3});
    EXPECT_TRUE(g->adjacent(0, 1));
    EXPECT_TRUE(g->adjacent(0, 3));
    EXPECT_FALSE(g->adjacent(2, 3));
}

TEST(Embeddings, ClosedForms) {
    EXPECT_EQ(embeddings(*build_host(host_kind::hypercube_edges, {2}), *build_host(host_kind::hypercube_edges, {4})).size(), 24u);
    EXPECT_EQ(embeddings(*complete_host(3), *complete_host(5)).size(), 10u);
    EXPECT_EQ(embeddings(*build_host(host_kind::path, {3}), *build_host(host_kind::path, {6})).size(), 4u);
    for (int n = 2; n <= 6; ++n)
        for (int N = 1; N <= std::min(n, 3); ++N) {
            auto c = embeddings(*build_host(host_kind::hypercube_edges, {N}), *build_host(host_kind::hypercube_edges, {n})).size();
            EXPECT_EQ(static_cast<double>(c), binom(n, N) * std::pow(2.0, n - N)) << N << " " << n;
        }
    for (int n = 3; n <= 9; ++n)
        for (int N = 2; N <= 4; ++N) EXPECT_EQ(static_cast<double>(embeddings(*complete_host(N), *complete_host(n)).size()), binom(n, N));
}

TEST(Embeddings, MatchBruteForce) {
    std::vector<std::pair<host_ptr, host_ptr>> cases = {
        {build_host(host_kind::path, {3}), build_host(host_kind::path, {6})},
        {build_host(host_kind::hypercube_edges, {2}), build_host(host_kind::hypercube_edges, {4})},
        {build_host(host_kind::grid, {2, 2}), build_host(host_kind::grid, {3, 3})},
        {build_host(host_kind::multipartite, {3, 1}), build_host(host_kind::multipartite, {3, 2})},
        {complete_host(3), complete_host(6)},
    };
    for (auto& [s, b] : cases) {
        auto got = embeddings(*s, *b);
        auto want = brute_embeddings(*s, *b);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, want) << s->name() << " in " << b->name();
    }
}

TEST(Embeddings, KindMismatch) {
    EXPECT_THROW(embeddings(*complete_host(3), *build_host(host_kind::path, {5})), std::invalid_argument);
}

TEST(Overlap, HypercubeN2n4) {
    auto st = overlap_statistics({host_kind::hypercube_edges}, 2, 4);
    EXPECT_EQ(st.count, 24);
    EXPECT_EQ(st.I, 12.0);
    EXPECT_NEAR(st.ratio, 32.0 * 12 / (24.0 * 24), 1e-12);
}

TEST(Overlap, BruteForcePairs) {
    struct Case {
        HostSequence seq;
        int N, n;
    };
    for (auto c : {Case{{host_kind::complete}, 3, 6}, Case{{host_kind::hypercube_edges}, 2, 5}, Case{{host_kind::path}, 3, 8},
                   Case{{host_kind::grid}, 2, 3}}) {
        auto s = c.seq.at(c.N), b = c.seq.at(c.n);
        auto em = brute_embeddings(*s, *b);
        std::uint64_t I2 = 0, J2 = 0;
        for (auto& x : em)
            for (auto& y : em) {
                auto ex = image_edges(*s, *b, x), ey = image_edges(*s, *b, y);
                int se = 0, sv = 0;
                for (int e : ex) se += ey.count(e);
                std::set<int> vx(x.begin(), x.end());
                for (int v : y) sv += vx.count(v);
                I2 += se >= 2;
                J2 += sv >= 2;
            }
        auto st = overlap_statistics(c.seq, c.N, c.n);
        EXPECT_EQ(st.count, em.size());
        EXPECT_EQ(st.ordered_I, I2) << b->name();
        EXPECT_EQ(st.ordered_J, J2) << b->name();
        EXPECT_NEAR(st.I, I2 / 2.0, 1e-9);
    }
}

TEST(Overlap, TrianglesInK6) {
    // two distinct triangles share at most one edge; pairs sharing two vertices
    // are the self-pairs plus C(n,2)(n-2)(n-3) ordered pairs through an edge
    auto st = overlap_statistics({host_kind::complete}, 3, 6);
    EXPECT_EQ(st.ordered_I, 20);
    EXPECT_EQ(st.ordered_J, 20 + 15 * 4 * 3);
}

TEST(Goodness, HypercubeDecreasing) {
    auto g = goodness_diagnostic({host_kind::hypercube_edges}, 2, 4, 10);
    EXPECT_EQ(g.trend, "strictly decreasing");
    for (auto& r : g.rows) EXPECT_NEAR(r.ratio, 2.0 / (r.n - 1), 1e-12);
}

TEST(Goodness, CompleteDecreasing) {
    auto g = goodness_diagnostic({host_kind::complete}, 3, 4, 12);
    EXPECT_EQ(g.trend, "strictly decreasing");
}

TEST(Goodness, PathNotGood) {
    auto g = goodness_diagnostic({host_kind::path}, 3, 6, 14);
    // e(P_n) I / binom^2 = (n-1) / (2(n-2)), which tends to 1/2, not 0
    for (auto& r : g.rows) {
        EXPECT_GE(r.ratio, 0.1) << r.n;
        EXPECT_NEAR(r.ratio, (r.n - 1) / (2.0 * (r.n - 2)), 1e-12);
    }
}

TEST(Subcube, MapIsEmbeddingAndRestricts) {
    counter_rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng.below(3)), N = 1 + static_cast<int>(rng.below(n - 1));
        std::vector<int> coords(n);
        for (int i = 0; i < n; ++i) coords[i] = i + 1;
        for (int i = n - 1; i > 0; --i) std::swap(coords[i], coords[rng.below(i + 1)]);
        std::vector<int> B(coords.begin(), coords.begin() + N);
        std::sort(B.begin(), B.end());
        std::vector<int> fixed(n - N);
        for (auto& f : fixed) f = static_cast<int>(rng.below(2));
        auto phi = subcube_map(n, B, fixed);
        auto small = build_host(host_kind::hypercube_vertices, {N}), big = build_host(host_kind::hypercube_vertices, {n});
        auto all = embeddings(*small, *big);
        EXPECT_NE(std::find(all.begin(), all.end(), phi), all.end());
        // a vertex template pulled back along phi reads the sub-cube directly
        std::vector<palette> ps(big->num_units());
        for (auto& p : ps) p = 1 + rng.below(3);
        Template t(big, 2, ps);
        auto r = restrict(t, small, phi);
        for (int y = 0; y < (1 << N); ++y) {
            int x = 0, bi = 0, fi = 0;
            for (int c = 1; c <= n; ++c) {
                bool free = std::find(B.begin(), B.end(), c) != B.end();
                x = 2 * x + (free ? (y >> (N - 1 - bi++) & 1) : fixed[fi++]);
            }
            EXPECT_EQ(r.palettes[y], t.palettes[x]);
        }
    }
}

TEST(Subcube, Embeddings) {
    // every order-preserving embedding of Q_N arises from a unique (B, fixed)
    for (int n = 2; n <= 5; ++n)
        for (int N = 1; N <= n; ++N) {
            auto all = embeddings(*build_host(host_kind::hypercube_edges, {N}), *build_host(host_kind::hypercube_edges, {n}));
            std::set<std::vector<int>> from_maps;
            for (std::uint32_t Bm = 0; Bm < (1u << n); ++Bm) {
                if (std::popcount(Bm) != N) continue;
                std::vector<int> B;
                for (int c = 1; c <= n; ++c)
                    if (Bm >> (c - 1) & 1) B.push_back(c);
                for (std::uint32_t f = 0; f < (1u << (n - N)); ++f) {
                    std::vector<int> fixed(n - N);
                    for (int i = 0; i < n - N; ++i) fixed[i] = f >> i & 1;
                    from_maps.insert(subcube_map(n, B, fixed));
                }
            }
            EXPECT_EQ(std::set<std::vector<int>>(all.begin(), all.end()), from_maps);
        }
}

TEST(HostExtremal, PathDPMatchesSearch) {
    const auto& P = builtin("path-3colour");
    for (int n = 1; n <= 10; ++n) {
        auto dp = path_extremal_dp(P, n);
        auto bb = extremal_entropy(P, n);
        EXPECT_TRUE(bb.proved);
        EXPECT_NEAR(dp.value, bb.value, 1e-12) << n;
        // one edge carries no constraint, so n = 2 is the full palette
        double closed = n == 2 ? 1.0 : std::ceil((n - 1) / 2.0) * std::log(2.0) / std::log(3.0);
        EXPECT_NEAR(dp.value, closed, 1e-12);
        EXPECT_TRUE(template_in_property(dp.witness, P));
    }
    EXPECT_NEAR(extremal_entropy_host(P, 7).value, 1.89279, 1e-5);
}

TEST(HostExtremal, PathSpeed) {
    const auto& P = builtin("path-3colour");
    for (int n = 2; n <= 10; ++n) EXPECT_EQ(speed(P, n), 3ull << (n - 2));
}

TEST(HostExtremal, EveryThirdLayer) {
    const auto& P = builtin("q2-free-vertex");
    auto h = P.host(3);
    std::vector<palette> ps(8);
    for (int x = 0; x < 8; ++x) ps[x] = std::popcount(static_cast<unsigned>(x)) % 3 == 0 ? colour_bit(1) : full_palette(2);
    Template t(h, 2, ps);
    EXPECT_EQ(entropy(t), 6.0);
    EXPECT_TRUE(template_in_property(t, P));
    auto ex = extremal_entropy(P, 3);
    EXPECT_GE(ex.value / 8, 2.0 / 3 - 1e-12);
}

TEST(HostExtremal, TrivialPropertyGivesAllUnits) {
    auto F = ForbiddenFamily(build_host(host_kind::grid, {2, 2}), 2, 2, {});
    auto P = make_family_property("trivial-grid", F, HostSequence{host_kind::grid});
    for (int n = 2; n <= 3; ++n) EXPECT_NEAR(extremal_entropy(P, n).value, P.host(n)->num_edges(), 1e-12);
}

TEST(HostExtremal, HypercubeAveraging) {
    const auto& Pv = builtin("q2-free-vertex");
    double prev = 2;
    for (int n = 1; n <= 4; ++n) {
        double d = extremal_entropy(Pv, n).value / std::pow(2.0, n);
        EXPECT_LE(d, prev + 1e-12) << n;
        prev = d;
    }
    const auto& Pe = builtin("q2-free-edge");
    prev = 2;
    for (int n = 1; n <= 3; ++n) {
        double d = extremal_entropy(Pe, n).value / (n * std::pow(2.0, n - 1));
        EXPECT_LE(d, prev + 1e-12) << n;
        prev = d;
    }
}
