#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "mcc/graphon.hpp"

using namespace mcc;

namespace {

StepGraphon random_graphon(int parts, int k, counter_rng& rng) {
    std::vector<double> w(parts);
    double s = 0;
    for (auto& x : w) s += (x = 0.2 + rng.uniform());
    for (auto& x : w) x /= s;
    StepGraphon W(k, w, std::vector<double>(static_cast<std::size_t>(parts) * parts * k, 0.0));
    for (int a = 0; a < parts; ++a)
        for (int b = a; b < parts; ++b) {
            std::vector<double> p(k);
            double t = 0;
            for (auto& x : p) t += (x = rng.uniform());
            for (int c = 0; c < k; ++c) W.at(a, b, c) = W.at(b, a, c) = p[c] / t;
        }
    return W;
}

// sup over unions of refined cells S, T of sum_c |int_{SxT} (U_c - W_c)|,
// by listing every pair of cell subsets
double brute_dk(const StepGraphon& U, const StepGraphon& W) {
    std::vector<double> b;
    for (double x : U.boundaries()) b.push_back(x);
    for (double x : W.boundaries()) b.push_back(x);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }), b.end());
    int m = static_cast<int>(b.size()) - 1;
    auto part_of = [](const StepGraphon& G, double x) {
        auto bd = G.boundaries();
        std::size_t a = 0;
        while (a + 2 < bd.size() && bd[a + 1] <= x) ++a;
        return a;
    };
    std::vector<std::size_t> pu(m), pw(m);
    std::vector<double> len(m);
    for (int j = 0; j < m; ++j) {
        double mid = 0.5 * (b[j] + b[j + 1]);
        pu[j] = part_of(U, mid);
        pw[j] = part_of(W, mid);
        len[j] = b[j + 1] - b[j];
    }
    double best = 0;
    for (int S = 0; S < (1 << m); ++S)
        for (int T = 0; T < (1 << m); ++T) {
            double tot = 0;
            for (int c = 0; c < U.k; ++c) {
                double s = 0;
                for (int x = 0; x < m; ++x)
                    if (S >> x & 1)
                        for (int y = 0; y < m; ++y)
                            if (T >> y & 1) s += len[x] * len[y] * (U.at(pu[x], pu[y], c) - W.at(pw[x], pw[y], c));
                tot += std::abs(s);
            }
            best = std::max(best, tot);
        }
    return best;
}

// classical cut norm of U_1 - W_1 (k = 2), again by listing S and T
double classical_cut_norm(const StepGraphon& U, const StepGraphon& W) {
    StepGraphon u1 = U, w1 = W;
    // reuse brute_dk on single-colour copies: sum over one colour only
    u1.k = w1.k = 1;
    u1.cells.clear();
    w1.cells.clear();
    for (std::size_t a = 0; a < U.parts(); ++a)
        for (std::size_t b = 0; b < U.parts(); ++b) u1.cells.push_back(U.at(a, b, 0));
    for (std::size_t a = 0; a < W.parts(); ++a)
        for (std::size_t b = 0; b < W.parts(); ++b) w1.cells.push_back(W.at(a, b, 0));
    return brute_dk(u1, w1);
}

}  // namespace

TEST(FromTemplate, Examples) {
    auto h = complete_host(4);
    auto z = from_template(Template::constant(h, 3, colour_bit(2)));
    EXPECT_NEAR(entropy_graphon(z), 0.0, 1e-12);
    EXPECT_NEAR(entropy_graphon(from_template(Template::full(complete_host(2), 2))), 0.5, 1e-12);
    Colouring G(complete_host(3), 3, {1, 3, 2});
    auto WG = from_colouring(G);
    WG.validate();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            int hot = a == b ? 1 : G.at(a, b);
            for (int c = 1; c <= 3; ++c) EXPECT_EQ(WG.at(a, b, c - 1), c == hot ? 1.0 : 0.0);
        }
}

TEST(Validate, Invariants) {
    EXPECT_THROW(StepGraphon(2, {0.5, 0.4}, std::vector<double>(8, 0.5)).validate(), std::invalid_argument);
    StepGraphon asym(2, {0.5, 0.5}, {1, 0, 1, 0, 0, 1, 0, 1});
    EXPECT_THROW(asym.validate(), std::invalid_argument);
    EXPECT_NO_THROW(constant_graphon({0.2, 0.8}).validate());
}

TEST(Average, Examples) {
    counter_rng rng(3);
    Colouring G(complete_host(4), 2, {1, 2, 2, 1, 2, 1});
    auto WG = from_colouring(G);
    EXPECT_EQ(average_graphon(WG, 4).cells, WG.cells);
    auto c = constant_graphon({0.3, 0.7});
    auto ac = average_graphon(c, 5);
    for (std::size_t i = 0; i < ac.cells.size(); i += 2) {
        EXPECT_NEAR(ac.cells[i], 0.3, 1e-12);
        EXPECT_NEAR(ac.cells[i + 1], 0.7, 1e-12);
    }
    // two halves averaged onto quarters: each quarter cell copies its block
    StepGraphon two(2, {0.5, 0.5}, {1, 0, 0.5, 0.5, 0.5, 0.5, 0, 1});
    auto a4 = average_graphon(two, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int col = 0; col < 2; ++col) EXPECT_NEAR(a4.at(i, j, col), two.at(i / 2, j / 2, col), 1e-12);
    // misaligned: thirds onto halves by overlap integration
    StepGraphon three(1, {1.0 / 3, 1.0 / 3, 1.0 / 3}, std::vector<double>(9, 1.0));
    EXPECT_NO_THROW(average_graphon(three, 2).validate(1e-12));
}

TEST(CutDistance, Examples) {
    counter_rng rng(1);
    auto W = random_graphon(3, 3, rng);
    EXPECT_NEAR(cut_distance(W, W), 0.0, 1e-12);
    EXPECT_NEAR(cut_distance(constant_graphon({1, 0, 0}), constant_graphon({0, 1, 0})), 2.0, 1e-12);
    EXPECT_NEAR(cut_distance(constant_graphon({1, 0, 0}), constant_graphon({0, 1, 0}), cut_metric::l1), 2.0, 1e-12);
}

TEST(CutDistance, TwiceClassicalCutNorm) {
    counter_rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        auto U = random_graphon(3, 2, rng), W = random_graphon(3, 2, rng);
        EXPECT_NEAR(cut_distance(U, W), 2 * classical_cut_norm(U, W), 1e-9);
    }
}

TEST(CutDistance, MatchesBruteForce) {
    counter_rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 2 + static_cast<int>(rng.below(3));
        auto U = random_graphon(1 + static_cast<int>(rng.below(3)), k, rng), W = random_graphon(1 + static_cast<int>(rng.below(3)), k, rng);
        auto r = cut_distance_detail(U, W);
        EXPECT_TRUE(r.exact);
        EXPECT_NEAR(r.value, brute_dk(U, W), 1e-9);
        EXPECT_LE(r.value, cut_distance(U, W, cut_metric::l1) + 1e-12);
    }
}

TEST(CutDistance, MetricAxioms) {
    counter_rng rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        int k = 2 + static_cast<int>(rng.below(2));
        auto A = random_graphon(1 + static_cast<int>(rng.below(3)), k, rng);
        auto B = random_graphon(1 + static_cast<int>(rng.below(3)), k, rng);
        auto C = random_graphon(1 + static_cast<int>(rng.below(3)), k, rng);
        double ab = cut_distance(A, B), ba = cut_distance(B, A), bc = cut_distance(B, C), ac = cut_distance(A, C);
        ASSERT_NEAR(ab, ba, 1e-9);
        ASSERT_NEAR(cut_distance(A, A), 0.0, 1e-9);
        ASSERT_LE(ac, ab + bc + 1e-9);
    }
}

TEST(CutDistance, DisjointQuarterBound) {
    counter_rng rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        auto U = random_graphon(2, 3, rng), W = random_graphon(3, 3, rng);
        EXPECT_GE(disjoint_dk_lower(U, W), cut_distance(U, W) / 4 - 1e-12);
    }
}

TEST(CutDistance, LargeRefinementIsBracketed) {
    counter_rng rng(10);
    auto U = random_graphon(14, 2, rng), W = random_graphon(13, 2, rng);
    auto r = cut_distance_detail(U, W, 1);
    EXPECT_FALSE(r.exact);
    EXPECT_LE(r.lower, r.upper + 1e-12);
    EXPECT_LE(r.upper, cut_distance(U, W, cut_metric::l1) + 1e-12);
    EXPECT_GT(r.lower, 0.0);
}

TEST(Delta, PermutationsAndIdentity) {
    counter_rng rng(11);
    for (int m = 2; m <= 6; ++m) {
        auto W = to_equipartition(random_graphon(1, 2, rng), 1);
        StepGraphon E(2, std::vector<double>(m, 1.0 / m), std::vector<double>(static_cast<std::size_t>(m) * m * 2));
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b) {
                double p = rng.uniform();
                E.at(a, b, 0) = E.at(b, a, 0) = p;
                E.at(a, b, 1) = E.at(b, a, 1) = 1 - p;
            }
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        auto P = permute_parts(E, perm);
        EXPECT_NEAR(delta_cut_upper(E, P, m).value, 0.0, 1e-12);
        EXPECT_NEAR(delta_cut_upper(E, E, m).value, 0.0, 1e-12);
        EXPECT_LE(delta_cut_upper(E, W, m).value, cut_distance(E, W) + 1e-12);
    }
}

TEST(Delta, AnnealingAboveEight) {
    counter_rng rng(12);
    int m = 10;
    StepGraphon E(2, std::vector<double>(m, 1.0 / m), std::vector<double>(static_cast<std::size_t>(m) * m * 2));
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            double p = rng.uniform();
            E.at(a, b, 0) = E.at(b, a, 0) = p;
            E.at(a, b, 1) = E.at(b, a, 1) = 1 - p;
        }
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    auto r = delta_cut_upper(E, permute_parts(E, perm), m, 3);
    EXPECT_FALSE(r.exhaustive);
    EXPECT_LE(r.value, cut_distance(E, permute_parts(E, perm)) + 1e-12);
}

TEST(Entropy, Examples) {
    EXPECT_NEAR(entropy_graphon(constant_graphon({1.0 / 3, 1.0 / 3, 1.0 / 3})), 1.0, 1e-12);
    EXPECT_NEAR(entropy_graphon(from_colouring(Colouring::constant(complete_host(4), 3, 2))), 0.0, 1e-12);
    EXPECT_NEAR(entropy_graphon(constant_graphon({0.5, 0.5, 0})), std::log(2.0) / std::log(3.0), 1e-12);
    EXPECT_NEAR(entropy_graphon(constant_graphon({0.5, 0.5, 0})), 0.63093, 1e-5);
}

TEST(Entropy, TemplateGraphonMatchesTemplateEntropy) {
    // off-diagonal mass is n(n-1)/n^2 of the square, and each pair appears twice
    counter_rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.below(5));
        std::vector<palette> ps(n * (n - 1) / 2);
        for (auto& p : ps) p = 1 + rng.below(7);
        Template t(complete_host(n), 3, ps);
        EXPECT_NEAR(entropy_graphon(from_template(t)), 2 * entropy(t) / (n * n), 1e-12);
    }
}

TEST(WeakReg, Examples) {
    counter_rng rng(6);
    auto W = random_graphon(4, 3, rng);
    auto full = weak_regularity(W, 4);
    EXPECT_NEAR(full.distance, 0.0, 1e-12);
    auto one = weak_regularity(W, 1);
    std::vector<double> avg(3, 0.0);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            for (int c = 0; c < 3; ++c) avg[c] += W.weights[a] * W.weights[b] * W.at(a, b, c);
    for (std::size_t i = 0; i < one.E.cells.size(); ++i) EXPECT_NEAR(one.E.cells[i], avg[i % 3], 1e-12);
}

TEST(WeakReg, EntropyDoesNotDrop) {
    counter_rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto W = random_graphon(6, 3, rng);
        for (int m = 1; m <= 6; ++m) {
            auto r = weak_regularity(W, m);
            r.E.validate(1e-9);
            int classes = *std::max_element(r.labels.begin(), r.labels.end()) + 1;
            EXPECT_LE(classes, m);
            EXPECT_GE(entropy_graphon(r.E), entropy_graphon(W) - 1e-12);
            EXPECT_NEAR(r.distance, cut_distance(W, r.E), 1e-12);
        }
    }
}

TEST(Sample, Examples) {
    auto W = constant_graphon({0, 0, 1});
    auto s = sample(W, 6, sample_mode::G, 1);
    ASSERT_TRUE(s.G);
    EXPECT_EQ(s.G->colours, Colouring::constant(complete_host(6), 3, 3).colours);
    counter_rng rng(1);
    auto V = random_graphon(3, 3, rng);
    auto a = sample(V, 10, sample_mode::G, 42), b = sample(V, 10, sample_mode::G, 42);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.G->colours, b.G->colours);
    auto h = sample(V, 5, sample_mode::H, 42);
    EXPECT_FALSE(h.G);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) EXPECT_NEAR(std::accumulate(h.h(i, j), h.h(i, j) + 3, 0.0), 1.0, 1e-12);
}

TEST(Sample, DistributionMatchesHomDensity) {
    StepGraphon W(2, {0.4, 0.6}, {0.9, 0.1, 0.3, 0.7, 0.3, 0.7, 0.2, 0.8});
    const int draws = 200000;
    std::map<std::vector<std::uint8_t>, int> freq;
    for (int s = 0; s < draws; ++s) ++freq[sample(W, 3, sample_mode::G, static_cast<std::uint64_t>(s)).G->colours];
    double total = 0;
    for (int code = 0; code < 8; ++code) {
        std::vector<std::uint8_t> F = {static_cast<std::uint8_t>(1 + (code & 1)), static_cast<std::uint8_t>(1 + (code >> 1 & 1)),
                                       static_cast<std::uint8_t>(1 + (code >> 2 & 1))};
        double t = hom_density(indicator_graph(Colouring(complete_host(3), 2, F)), W);
        total += t;
        double sigma = std::sqrt(draws * t * (1 - t));
        EXPECT_LE(std::abs(freq[F] - draws * t), 4 * sigma) << code;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(HomDensity, Examples) {
    DecoratedGraph edge{2, {{0, 1, {0, 1, 0}}}};
    EXPECT_NEAR(hom_density(edge, constant_graphon({0.2, 0.5, 0.3})), 0.5, 1e-12);
    DecoratedGraph tri{3, {{0, 1, {1, 0}}, {0, 2, {1, 0}}, {1, 2, {1, 0}}}};
    EXPECT_NEAR(hom_density(tri, constant_graphon({1, 0})), 1.0, 1e-12);
    StepGraphon W(2, {0.25, 0.75}, {0.6, 0.4, 0.2, 0.8, 0.2, 0.8, 0.5, 0.5});
    DecoratedGraph e1{2, {{0, 1, {1, 0}}}};
    double hand = 0.25 * 0.25 * 0.6 + 2 * 0.25 * 0.75 * 0.2 + 0.75 * 0.75 * 0.5;
    EXPECT_NEAR(hom_density(e1, W), hand, 1e-12);
}

TEST(Neighbourhood, Examples) {
    auto W = constant_graphon({0.5, 0.5});
    EXPECT_EQ(neighborhood_count(W, 2.0, 3, neighbourhood_metric::dk).count, 8u);
    Colouring G(complete_host(3), 2, {1, 2, 2});
    auto WG = from_colouring(G);
    EXPECT_GE(neighborhood_count(WG, 0.0, 3, neighbourhood_metric::dk).count, 1u);
    std::uint64_t expect = 0;
    for (int code = 0; code < 8; ++code) {
        Colouring H(complete_host(3), 2, {static_cast<std::uint8_t>(1 + (code & 1)), static_cast<std::uint8_t>(1 + (code >> 1 & 1)),
                                          static_cast<std::uint8_t>(1 + (code >> 2 & 1))});
        expect += brute_dk(from_colouring(H), W) <= 0.3 + 1e-12;
    }
    EXPECT_EQ(neighborhood_count(W, 0.3, 3, neighbourhood_metric::dk).count, expect);
    auto dl = neighborhood_count(W, 0.3, 3, neighbourhood_metric::deltak);
    EXPECT_TRUE(dl.lower_bound);
    EXPECT_GE(dl.count, expect);
    EXPECT_THROW(neighborhood_count(constant_graphon({0.3, 0.3, 0.4}), 0.1, 8, neighbourhood_metric::dk), resource_limit);
}

TEST(Convergence, SampleEntropy) {
    counter_rng rng(14);
    auto W = random_graphon(3, 3, rng);
    double ent = entropy_graphon(W), prev = 1e9;
    for (int n : {50, 100, 200}) {
        double err = 0;
        for (int s = 0; s < 20; ++s) {
            auto se = sample_entropy(W, n, 1000 * n + s);
            EXPECT_GE(se.slack, 0.0);
            err += std::abs(se.conditional - ent);
        }
        err /= 20;
        EXPECT_LT(err, prev) << n;
        prev = err;
    }
}

TEST(Convergence, SampledGraphsApproachW) {
    StepGraphon W(2, {0.5, 0.5}, {0.8, 0.2, 0.3, 0.7, 0.3, 0.7, 0.1, 0.9});
    double prev = 1e9;
    for (int n : {4, 8, 16}) {
        double mean = 0;
        for (int s = 0; s < 10; ++s) mean += cut_distance(sorted_sample_graphon(sample(W, n, sample_mode::G, 77 * n + s)), W);
        mean /= 10;
        EXPECT_LT(mean, prev) << n;
        prev = mean;
    }
}
