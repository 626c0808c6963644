#include <gtest/gtest.h>

#include <cmath>

#include "mcc/containers.hpp"
#include "mcc/registry.hpp"

using namespace mcc;

namespace {

ConstraintHypergraph single_edge(int r) {
    ConstraintHypergraph H;
    H.r = r;
    H.k = 1;
    H.units = static_cast<std::size_t>(r) + 2;
    for (int j = 0; j < r; ++j) H.edges.push_back(static_cast<std::uint32_t>(j));
    return H;
}

bool independent(const ConstraintHypergraph& H, std::uint64_t mask) {
    for (std::size_t i = 0; i < H.num_edges(); ++i) {
        bool all = true;
        for (int j = 0; j < H.r && all; ++j) all = mask >> H.edge(i)[j] & 1;
        if (all) return false;
    }
    return true;
}

bool inside(std::uint64_t mask, const vertex_set& C) { return (mask & ~C[0]) == 0; }

}  // namespace

TEST(Hypergraph, RainbowN4) {
    auto b = build_constraint_hypergraph(builtin("rainbow-k3"), 4);
    EXPECT_FALSE(b.direct);
    EXPECT_EQ(b.H.num_vertices(), 18u);
    EXPECT_EQ(b.H.num_edges(), 24u);
    EXPECT_EQ(b.H.r, 3);
}

TEST(Hypergraph, MonochromaticTriangle) {
    auto P = make_family_property("mono", ForbiddenFamily::on_complete(3, 2, {{1, 1, 1}}));
    EXPECT_EQ(build_constraint_hypergraph(P, 4).H.num_edges(), 4u);
    EXPECT_EQ(build_constraint_hypergraph(P, 3).H.num_edges(), 1u);
}

TEST(Hypergraph, EdgeBounds) {
    for (const char* id : {"rainbow-k3", "triangle-free", "dk3", "multigraph-3-5", "inc-path-2"})
        for (int n = 3; n <= 6; ++n) {
            const auto& P = builtin(id);
            auto b = build_constraint_hypergraph(P, n);
            double sets = binomial(n, 3);
            EXPECT_GE(static_cast<double>(b.H.num_edges()), sets);
            EXPECT_LE(static_cast<double>(b.H.num_edges()), std::pow(P.k, 3.0) * sets);
            for (std::size_t i = 0; i < b.H.num_edges(); ++i) {
                // one vertex per host edge of the triple
                std::set<std::uint32_t> units;
                for (int j = 0; j < 3; ++j) units.insert(b.H.edge(i)[j] / P.k);
                EXPECT_EQ(units.size(), 3u);
            }
        }
}

TEST(Hypergraph, DirectForSingleUnitPatterns) {
    auto b = build_constraint_hypergraph(builtin("empty-graph"), 4);
    ASSERT_TRUE(b.direct);
    EXPECT_EQ(b.direct->palettes, Template::constant(complete_host(4), 2, colour_bit(1)).palettes);
}

TEST(Hypergraph, MembersAreIndependent) {
    const auto& P = builtin("rainbow-k3");
    auto b = build_constraint_hypergraph(P, 6);
    for (const auto& c : sample_members(P, 6, 500, 3)) {
        std::set<std::uint32_t> I;
        for (std::size_t u = 0; u < c.size(); ++u) I.insert(ConstraintHypergraph::vertex(u, c.colours[u], 3));
        for (std::size_t i = 0; i < b.H.num_edges(); ++i) {
            int in = 0;
            for (int j = 0; j < 3; ++j) in += I.count(b.H.edge(i)[j]);
            ASSERT_LT(in, 3);
        }
    }
}

TEST(Sparsify, Probability) {
    EXPECT_NEAR(sparsification_probability(0.5, 3, 6, 2), 0.5 / (24 * 8), 1e-15);
    EXPECT_NEAR(sparsification_probability(0.5, 3, 6, 2), 0.0026042, 1e-7);
}

TEST(Sparsify, ClippedAndDeterministic) {
    auto b = build_constraint_hypergraph(builtin("rainbow-k3"), 5);
    SparsifyStats st;
    auto L = sparsify_and_linearize(b.H, 1e6, 1, 3, 5, &st);
    EXPECT_TRUE(st.clipped);
    EXPECT_EQ(st.p, 1.0);
    EXPECT_EQ(L.edges, linearize(b.H).edges);
    auto a1 = sparsify_and_linearize(b.H, 0.5, 9, 3, 5), a2 = sparsify_and_linearize(b.H, 0.5, 9, 3, 5);
    EXPECT_EQ(a1.edges, a2.edges);
}

TEST(Sparsify, LinearizeRemovesOverlaps) {
    auto b = build_constraint_hypergraph(builtin("triangle-free"), 5);
    // add a copy of edge 0 with one vertex changed so it overlaps in two
    auto H = b.H;
    std::vector<std::uint32_t> e(H.edge(0), H.edge(0) + 3);
    e[2] ^= 1;  // other colour of the last unit
    std::sort(e.begin(), e.end());
    H.edges.insert(H.edges.end(), e.begin(), e.end());
    std::uint64_t y = 0;
    auto L = linearize(H, &y);
    EXPECT_EQ(y, 1u);
    EXPECT_EQ(L.num_edges(), H.num_edges() - 1);
    EXPECT_EQ(overlapping_pairs(L), 0u);
}

TEST(Containers, NoEdges) {
    ConstraintHypergraph H;
    H.r = 3;
    H.k = 2;
    H.units = 4;
    auto fam = compute_containers(H, 0.1);
    ASSERT_EQ(fam.containers.size(), 1u);
    for (std::size_t v = 0; v < 8; ++v) EXPECT_TRUE(contains(fam.containers[0], v));
}

TEST(Containers, SingleEdge) {
    for (int r = 2; r <= 4; ++r) {
        auto H = single_edge(r);
        auto fam = compute_containers(H, 0.5);
        ASSERT_EQ(fam.containers.size(), static_cast<std::size_t>(r));
        std::set<int> missing;
        for (auto& C : fam.containers) {
            int out = 0, which = -1;
            for (std::size_t v = 0; v < H.num_vertices(); ++v)
                if (!contains(C, v)) ++out, which = static_cast<int>(v);
            EXPECT_EQ(out, 1);
            missing.insert(which);
        }
        EXPECT_EQ(missing.size(), static_cast<std::size_t>(r));
    }
}

TEST(Containers, PostconditionsOnRainbowN4) {
    auto b = build_constraint_hypergraph(builtin("rainbow-k3"), 4);
    const auto& H = b.H;
    ASSERT_EQ(overlapping_pairs(H), 0u);
    for (double delta : {0.1, 0.3, 0.6}) {
        auto fam = compute_containers(H, delta);
        for (auto& C : fam.containers) {
            auto m = induced_edges(H, C);
            EXPECT_TRUE(m == 0 || m < delta * H.num_edges());
        }
        // every independent set of H sits in some container
        for (std::uint64_t mask = 0; mask < (1u << 18); ++mask) {
            if (!independent(H, mask)) continue;
            bool ok = false;
            for (auto& C : fam.containers)
                if (inside(mask, C)) {
                    ok = true;
                    break;
                }
            ASSERT_TRUE(ok) << "delta " << delta << " mask " << mask;
        }
    }
}

TEST(Containers, Budget) {
    auto b = build_constraint_hypergraph(builtin("rainbow-k3"), 6);
    EXPECT_THROW(compute_containers(b.H, 0.01, 100), resource_limit);
}

TEST(Extraction, Examples) {
    auto h = complete_host(3);
    const int k = 3;
    std::size_t V = h->num_units() * k;
    vertex_set full((V + 63) / 64, 0);
    for (std::size_t v = 0; v < V; ++v) full[0] |= std::uint64_t(1) << v;
    auto missing = full;
    for (int c = 1; c <= k; ++c) missing[0] &= ~(std::uint64_t(1) << ConstraintHypergraph::vertex(1, c, k));
    Colouring col(h, k, {2, 3, 1});
    vertex_set single((V + 63) / 64, 0);
    for (std::size_t u = 0; u < 3; ++u) single[0] |= std::uint64_t(1) << ConstraintHypergraph::vertex(u, col.colours[u], k);
    auto ex = templates_from_containers({full, missing, single}, h, k);
    EXPECT_EQ(ex.dropped, 1u);
    ASSERT_EQ(ex.templates.size(), 2u);
    EXPECT_EQ(ex.templates[0].palettes, Template::full(h, k).palettes);
    EXPECT_EQ(ex.templates[1].palettes, Template(col).palettes);
    EXPECT_EQ(entropy(ex.templates[1]), 0.0);
}

TEST(Validate, CompleteTemplate) {
    const auto& P = builtin("rainbow-k3");
    auto rep = validate_container_family({Template::full(complete_host(5), 3)}, P, 5, coverage_mode::exact, 0.1);
    EXPECT_EQ(rep.coverage, 1.0);
    EXPECT_EQ(rep.checked, 6129u);
    EXPECT_EQ(rep.max_bad_sets, 10u);
    EXPECT_FALSE(rep.bad_sets_ok);
    EXPECT_THROW(validate_container_family({}, P, 5, coverage_mode::exact, 0.1), std::invalid_argument);
}

TEST(Validate, SampledCoverageInterval) {
    const auto& P = builtin("rainbow-k3");
    auto h = complete_host(6);
    std::vector<Template> pairs;
    for (palette p : {3, 5, 6}) pairs.push_back(Template::constant(h, 3, p));
    auto rep = validate_container_family(pairs, P, 6, coverage_mode::sampled, 0.1, std::nullopt, 20000, 4);
    // exact share of P_6 inside the three 2-colour templates: 3*2^15 - 3 members over 210987
    double truth = (3.0 * 32768 - 3) / 210987;
    EXPECT_LE(rep.coverage_lo, truth);
    EXPECT_GE(rep.coverage_hi, truth);
    EXPECT_FALSE(rep.coverage_exact);
}

TEST(Validate, WilsonInterval) {
    auto [lo, hi] = wilson_interval(50, 100);
    EXPECT_NEAR(lo, 0.4038, 1e-4);
    EXPECT_NEAR(hi, 0.5962, 1e-4);
    auto [l1, h1] = wilson_interval(100, 100);
    EXPECT_EQ(h1, 1.0);
    EXPECT_LT(l1, 1.0);
}

TEST(Pipeline, RainbowN5NoSparsify) {
    ContainerPipelineOptions o;
    o.no_sparsify = true;
    o.coverage = coverage_mode::exact;
    auto r = run_container_pipeline(builtin("rainbow-k3"), 5, o);
    const auto& R = r.report;
    EXPECT_EQ(R.coverage, 1.0);
    EXPECT_EQ(R.checked, 6129u);
    EXPECT_TRUE(R.bad_sets_ok);
    EXPECT_TRUE(R.entropy_ok);
    EXPECT_NEAR(R.eps, 0.1 * 60 / 10, 1e-12);
}

TEST(Pipeline, SparsifiedStillCovers) {
    ContainerPipelineOptions o;
    o.coverage = coverage_mode::exact;
    o.seed = 7;
    for (const char* id : {"rainbow-k3", "triangle-free"}) {
        auto r = run_container_pipeline(builtin(id), 5, o);
        EXPECT_EQ(r.report.coverage, 1.0) << id;
        EXPECT_FALSE(r.report.sparsify.skipped);
        EXPECT_LE(r.report.sparsify.e_H2, r.report.sparsify.e_H1);
        EXPECT_LE(r.report.sparsify.e_H1, r.report.e_H);
        auto again = run_container_pipeline(builtin(id), 5, o);
        EXPECT_EQ(again.report.family_size, r.report.family_size);
    }
}

TEST(Pipeline, DirectCase) {
    ContainerPipelineOptions o;
    o.coverage = coverage_mode::exact;
    auto r = run_container_pipeline(builtin("empty-graph"), 5, o);
    EXPECT_EQ(r.templates.size(), 1u);
    EXPECT_EQ(r.report.coverage, 1.0);
    EXPECT_EQ(r.report.max_entropy, 0.0);
}
