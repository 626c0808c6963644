#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "rng.hpp"
#include "template.hpp"

namespace mcc {

// k-decorated step graphon: part weights and one probability vector over
// [k] per (ordered) pair of parts.  Colours are 0-based in `cells`.
struct StepGraphon {
    int k = 0;
    std::vector<double> weights;
    std::vector<double> cells;  // m * m * k

    StepGraphon() = default;
    StepGraphon(int k_, std::vector<double> w, std::vector<double> c) : k(k_), weights(std::move(w)), cells(std::move(c)) {
        if (k < 1) throw std::invalid_argument("k must be positive");
        if (cells.size() != parts() * parts() * static_cast<std::size_t>(k))
            throw std::invalid_argument("cell array does not match the parts");
    }

    std::size_t parts() const { return weights.size(); }
    double& at(std::size_t a, std::size_t b, int c) { return cells[(a * parts() + b) * k + c]; }
    double at(std::size_t a, std::size_t b, int c) const { return cells[(a * parts() + b) * k + c]; }
    const double* cell(std::size_t a, std::size_t b) const { return cells.data() + (a * parts() + b) * k; }

    // throws on a broken invariant
    void validate(double tol = 1e-12) const {
        double s = 0;
        for (double w : weights) {
            if (!(w > 0)) throw std::invalid_argument("part weights must be positive");
            s += w;
        }
        if (std::abs(s - 1) > tol) throw std::invalid_argument("part weights must sum to 1");
        for (std::size_t a = 0; a < parts(); ++a)
            for (std::size_t b = 0; b < parts(); ++b) {
                double t = 0;
                for (int c = 0; c < k; ++c) {
                    if (at(a, b, c) < -tol) throw std::invalid_argument("negative cell entry");
                    if (std::abs(at(a, b, c) - at(b, a, c)) > tol) throw std::invalid_argument("cells are not symmetric");
                    t += at(a, b, c);
                }
                if (std::abs(t - 1) > tol) throw std::invalid_argument("cell is not a probability vector");
            }
    }

    std::vector<double> boundaries() const {
        std::vector<double> b(1, 0.0);
        for (double w : weights) b.push_back(b.back() + w);
        b.back() = 1.0;
        return b;
    }
};

inline StepGraphon constant_graphon(const std::vector<double>& p) {
    return StepGraphon(static_cast<int>(p.size()), {1.0}, p);
}

inline StepGraphon from_template(const Template& t) {
    if (t.host->kind != host_kind::complete) throw std::invalid_argument("from_template needs a K_n template");
    int n = t.host->num_vertices();
    StepGraphon W(t.k, std::vector<double>(n, 1.0 / n), std::vector<double>(static_cast<std::size_t>(n) * n * t.k, 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) {
                W.at(a, b, 0) = 1.0;
                continue;
            }
            palette p = t.at(a, b);
            double share = 1.0 / palette_size(p);
            for (int c : palette_colours(p)) W.at(a, b, c - 1) = share;
        }
    return W;
}

inline StepGraphon from_colouring(const Colouring& c) { return from_template(Template(c)); }

// ---------------------------------------------------------------- refinement

namespace detail {
// parent[j] = part of W holding refined cell j
inline std::vector<std::size_t> parents(const std::vector<double>& fine, const std::vector<double>& coarse) {
    std::vector<std::size_t> p;
    std::size_t a = 0;
    for (std::size_t j = 0; j + 1 < fine.size(); ++j) {
        double mid = 0.5 * (fine[j] + fine[j + 1]);
        while (a + 2 < coarse.size() && coarse[a + 1] <= mid) ++a;
        p.push_back(a);
    }
    return p;
}

inline StepGraphon pull_back(const StepGraphon& W, const std::vector<double>& bounds) {
    auto par = parents(bounds, W.boundaries());
    std::size_t m = par.size();
    std::vector<double> w(m), cells(m * m * W.k);
    for (std::size_t j = 0; j < m; ++j) w[j] = bounds[j + 1] - bounds[j];
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (int c = 0; c < W.k; ++c) cells[(a * m + b) * W.k + c] = W.at(par[a], par[b], c);
    return StepGraphon(W.k, std::move(w), std::move(cells));
}
}  // namespace detail

// U and W rewritten over the common refinement of their parts.
inline std::pair<StepGraphon, StepGraphon> refine(const StepGraphon& U, const StepGraphon& W, double tol = 1e-12) {
    if (U.k != W.k) throw std::invalid_argument("colour counts differ");
    auto bu = U.boundaries(), bw = W.boundaries();
    std::vector<double> all(bu);
    all.insert(all.end(), bw.begin(), bw.end());
    std::sort(all.begin(), all.end());
    std::vector<double> b;
    for (double x : all)
        if (b.empty() || x - b.back() > tol) b.push_back(x);
    b.back() = 1.0;
    return {detail::pull_back(U, b), detail::pull_back(W, b)};
}

inline StepGraphon average_graphon(const StepGraphon& W, int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    auto bw = W.boundaries();
    // overlap[i][a] = |I_i ∩ part a|
    std::vector<std::vector<double>> ov(n, std::vector<double>(W.parts(), 0.0));
    for (int i = 0; i < n; ++i) {
        double lo = static_cast<double>(i) / n, hi = static_cast<double>(i + 1) / n;
        for (std::size_t a = 0; a < W.parts(); ++a) ov[i][a] = std::max(0.0, std::min(hi, bw[a + 1]) - std::max(lo, bw[a]));
    }
    StepGraphon A(W.k, std::vector<double>(n, 1.0 / n), std::vector<double>(static_cast<std::size_t>(n) * n * W.k, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (std::size_t a = 0; a < W.parts(); ++a) {
                if (ov[i][a] == 0) continue;
                for (std::size_t b = 0; b < W.parts(); ++b) {
                    double m = ov[i][a] * ov[j][b] * n * n;
                    if (m == 0) continue;
                    for (int c = 0; c < W.k; ++c) A.at(i, j, c) += m * W.at(a, b, c);
                }
            }
    return A;
}

// ---------------------------------------------------------------- metrics

enum class cut_metric { dk, l1 };

struct CutResult {
    double value = 0;  // exact value, or the lower bound when !exact
    double lower = 0, upper = 0;
    bool exact = true;
    std::vector<double> weights;  // refined parts
    std::vector<int> S, T;        // optimal (or best found) sets of refined parts
};

namespace detail {

// a[i][x*m+y] = w_x w_y (U_i - W_i)(x,y) on a common refinement
struct Discrepancy {
    std::size_t m = 0;
    int k = 0;
    std::vector<double> w;
    std::vector<std::vector<double>> a;

    Discrepancy(const StepGraphon& U, const StepGraphon& W) {
        if (U.k > 16) throw std::invalid_argument("cut distance supports k <= 16");
        auto [u, v] = refine(U, W);
        m = u.parts();
        k = u.k;
        w = u.weights;
        a.assign(k, std::vector<double>(m * m));
        for (int i = 0; i < k; ++i)
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y) a[i][x * m + y] = w[x] * w[y] * (u.at(x, y, i) - v.at(x, y, i));
    }

    // best T for the column sums g[i][y] = sum_{x in S} a[i][x][y]
    double best_T(const std::vector<std::vector<double>>& g, std::vector<int>* T = nullptr) const {
        double best = 0;
        std::uint32_t arg = 0;
        for (std::uint32_t sg = 0; sg < (1u << k); ++sg) {
            double s = 0;
            for (std::size_t y = 0; y < m; ++y) {
                double v = 0;
                for (int i = 0; i < k; ++i) v += (sg >> i & 1) ? -g[i][y] : g[i][y];
                if (v > 0) s += v;
            }
            if (s > best) {
                best = s;
                arg = sg;
            }
        }
        if (T) {
            T->assign(m, 0);
            for (std::size_t y = 0; y < m; ++y) {
                double v = 0;
                for (int i = 0; i < k; ++i) v += (arg >> i & 1) ? -g[i][y] : g[i][y];
                (*T)[y] = v > 0;
            }
        }
        return best;
    }

    std::vector<std::vector<double>> column_sums(const std::vector<int>& S) const {
        std::vector<std::vector<double>> g(k, std::vector<double>(m, 0.0));
        for (std::size_t x = 0; x < m; ++x)
            if (S[x])
                for (int i = 0; i < k; ++i)
                    for (std::size_t y = 0; y < m; ++y) g[i][y] += a[i][x * m + y];
        return g;
    }

    double objective(const std::vector<double>& s, const std::vector<double>& t) const {
        double tot = 0;
        for (int i = 0; i < k; ++i) {
            double v = 0;
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y) v += s[x] * t[y] * a[i][x * m + y];
            tot += std::abs(v);
        }
        return tot;
    }

    double l1() const {
        double s = 0;
        for (int i = 0; i < k; ++i)
            for (double v : a[i]) s += std::abs(v);
        return s;
    }

    // sum_i ||D_i||_op, each bounding |int_{SxT} D_i|
    double spectral_bound() const {
        double s = 0;
        for (int i = 0; i < k; ++i) {
            Eigen::MatrixXd M(m, m);
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y) M(x, y) = a[i][x * m + y] / std::sqrt(w[x] * w[y]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
            s += es.eigenvalues().cwiseAbs().maxCoeff();
        }
        return s;
    }
};

inline CutResult exact_dk(const Discrepancy& D) {
    CutResult r;
    r.weights = D.w;
    const std::size_t m = D.m;
    std::vector<std::vector<double>> g(D.k, std::vector<double>(m, 0.0));
    std::vector<int> S(m, 0);
    double best = 0;
    std::uint64_t best_mask = 0, mask = 0;
    const std::uint64_t total = std::uint64_t(1) << m;
    for (std::uint64_t step = 1; step < total; ++step) {
        int x = std::countr_zero(step);  // Gray code flip
        mask ^= std::uint64_t(1) << x;
        S[x] ^= 1;
        if ((step & 1023) == 0) {
            g = D.column_sums(S);
        } else {
            double sign = S[x] ? 1.0 : -1.0;
            for (int i = 0; i < D.k; ++i)
                for (std::size_t y = 0; y < m; ++y) g[i][y] += sign * D.a[i][x * m + y];
        }
        double v = D.best_T(g);
        if (v > best) {
            best = v;
            best_mask = mask;
        }
    }
    r.S.assign(m, 0);
    for (std::size_t x = 0; x < m; ++x) r.S[x] = best_mask >> x & 1;
    // recompute the winner from scratch
    r.value = D.best_T(D.column_sums(r.S), &r.T);
    r.lower = r.upper = r.value;
    return r;
}

// alternating best responses from a few seeded starts
inline CutResult local_dk(const Discrepancy& D, std::uint64_t seed, int starts = 32) {
    CutResult r;
    r.weights = D.w;
    r.exact = false;
    counter_rng rng(seed);
    double best = -1;
    for (int s = 0; s < starts; ++s) {
        std::vector<int> S(D.m), T;
        for (auto& x : S) x = static_cast<int>(rng.below(2));
        double v = -1;
        for (int it = 0; it < 100; ++it) {
            double nv = D.best_T(D.column_sums(S), &T);
            std::vector<int> S2;
            nv = std::max(nv, D.best_T(D.column_sums(T), &S2));  // D is symmetric
            if (nv <= v + 1e-15) break;
            v = nv;
            S = S2;
        }
        if (v > best) {
            best = v;
            r.S = S;
            r.T = T;
        }
    }
    r.value = r.lower = std::max(0.0, best);
    return r;
}

}  // namespace detail

inline constexpr std::size_t exact_cut_cells = 24;

inline CutResult cut_distance_detail(const StepGraphon& U, const StepGraphon& W, std::uint64_t seed = 0) {
    detail::Discrepancy D(U, W);
    if (D.m <= exact_cut_cells) return detail::exact_dk(D);
    auto r = detail::local_dk(D, seed);
    r.upper = std::min(D.l1(), D.spectral_bound());
    return r;
}

inline double cut_distance(const StepGraphon& U, const StepGraphon& W, cut_metric metric = cut_metric::dk) {
    if (metric == cut_metric::l1) return detail::Discrepancy(U, W).l1();
    return cut_distance_detail(U, W).value;
}

inline double cut_distance_upper(const StepGraphon& U, const StepGraphon& W) { return cut_distance_detail(U, W).upper; }

// Best dk objective over disjoint S, T, each refined cell going to S, to T,
// to neither, or split evenly between them (4^m choices, m <= 10).
inline double disjoint_dk_lower(const StepGraphon& U, const StepGraphon& W) {
    detail::Discrepancy D(U, W);
    if (D.m > 10) throw resource_limit("disjoint search limited to 10 refined cells");
    std::vector<double> s(D.m), t(D.m);
    double best = 0;
    std::uint64_t total = std::uint64_t(1) << (2 * D.m);
    for (std::uint64_t code = 0; code < total; ++code) {
        for (std::size_t x = 0; x < D.m; ++x) {
            int o = code >> (2 * x) & 3;
            s[x] = o == 1 ? 1.0 : o == 3 ? 0.5 : 0.0;
            t[x] = o == 2 ? 1.0 : o == 3 ? 0.5 : 0.0;
        }
        best = std::max(best, D.objective(s, t));
    }
    return best;
}

// ---------------------------------------------------------------- delta

inline StepGraphon to_equipartition(const StepGraphon& W, int m, double tol = 1e-12) {
    for (double b : W.boundaries()) {
        double x = b * m;
        if (std::abs(x - std::round(x)) > tol * m) throw std::invalid_argument("part boundaries are not on the 1/m grid");
    }
    std::vector<double> grid(m + 1);
    for (int j = 0; j <= m; ++j) grid[j] = static_cast<double>(j) / m;
    return detail::pull_back(W, grid);
}

inline StepGraphon permute_parts(const StepGraphon& W, const std::vector<int>& perm) {
    std::size_t m = W.parts();
    StepGraphon P(W.k, std::vector<double>(m), std::vector<double>(W.cells.size()));
    for (std::size_t a = 0; a < m; ++a) {
        P.weights[a] = W.weights[perm[a]];
        for (std::size_t b = 0; b < m; ++b)
            for (int c = 0; c < W.k; ++c) P.at(a, b, c) = W.at(perm[a], perm[b], c);
    }
    return P;
}

struct DeltaResult {
    double value = 0;
    bool exhaustive = true;
    std::vector<int> perm;
};

// min over part permutations of the m-equipartition; an upper bound on delta.
inline DeltaResult delta_cut_upper(const StepGraphon& U, const StepGraphon& W, int m, std::uint64_t seed = 0) {
    auto u = to_equipartition(U, m), w = to_equipartition(W, m);
    DeltaResult r;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    r.perm = perm;
    r.value = cut_distance(u, w);
    if (m <= 8) {
        while (std::next_permutation(perm.begin(), perm.end())) {
            double d = cut_distance(u, permute_parts(w, perm));
            if (d < r.value) {
                r.value = d;
                r.perm = perm;
            }
        }
        return r;
    }
    r.exhaustive = false;
    counter_rng rng(seed);
    double cur = r.value, temp = 0.1;
    for (int it = 0; it < 4000; ++it, temp *= 0.999) {
        auto cand = perm;
        std::swap(cand[rng.below(m)], cand[rng.below(m)]);
        double d = cut_distance(u, permute_parts(w, cand));
        if (d < cur || rng.uniform() < std::exp((cur - d) / temp)) {
            perm = cand;
            cur = d;
            if (d < r.value) {
                r.value = d;
                r.perm = cand;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- entropy

inline double h_k(const double* p, int k) {
    if (k == 1) return 0.0;
    double s = 0;
    for (int c = 0; c < k; ++c)
        if (p[c] > 0) s -= p[c] * std::log(p[c]);
    return s / std::log(static_cast<double>(k));
}

inline double entropy_graphon(const StepGraphon& W) {
    double s = 0;
    for (std::size_t a = 0; a < W.parts(); ++a)
        for (std::size_t b = 0; b < W.parts(); ++b) s += W.weights[a] * W.weights[b] * h_k(W.cell(a, b), W.k);
    return s;
}

// E[W|S] for the partition of W's parts given by labels (class per part),
// expressed on W's own parts.
inline StepGraphon conditional_expectation(const StepGraphon& W, const std::vector<int>& labels) {
    if (labels.size() != W.parts()) throw std::invalid_argument("one label per part");
    int q = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<double> mass(q, 0.0), avg(static_cast<std::size_t>(q) * q * W.k, 0.0);
    for (std::size_t a = 0; a < W.parts(); ++a) mass[labels[a]] += W.weights[a];
    for (std::size_t a = 0; a < W.parts(); ++a)
        for (std::size_t b = 0; b < W.parts(); ++b)
            for (int c = 0; c < W.k; ++c)
                avg[(labels[a] * q + labels[b]) * W.k + c] += W.weights[a] * W.weights[b] * W.at(a, b, c);
    StepGraphon E = W;
    for (std::size_t a = 0; a < W.parts(); ++a)
        for (std::size_t b = 0; b < W.parts(); ++b) {
            double mm = mass[labels[a]] * mass[labels[b]];
            for (int c = 0; c < W.k; ++c) E.at(a, b, c) = avg[(labels[a] * q + labels[b]) * W.k + c] / mm;
        }
    return E;
}

struct WeakRegularity {
    std::vector<int> labels;  // class of each part of W
    StepGraphon E;
    double distance = 0;
};

// Greedy: start from one class; repeatedly split the class whose split by
// the current optimal S or T lowers d(W, E[W|S]) the most.
inline WeakRegularity weak_regularity(const StepGraphon& W, int m) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    if (W.parts() > exact_cut_cells) throw resource_limit("weak regularity needs at most 24 parts");
    WeakRegularity wr;
    wr.labels.assign(W.parts(), 0);
    wr.E = conditional_expectation(W, wr.labels);
    auto cur = cut_distance_detail(W, wr.E);
    wr.distance = cur.value;
    int classes = 1;
    while (classes < m && wr.distance > 1e-12) {
        // refined parts coincide with W's parts here
        double best = wr.distance;
        std::vector<int> best_labels;
        for (const auto* X : {&cur.S, &cur.T})
            for (int q = 0; q < classes; ++q) {
                auto lab = wr.labels;
                bool in = false, out = false;
                for (std::size_t a = 0; a < lab.size(); ++a)
                    if (lab[a] == q) {
                        if ((*X)[a]) {
                            lab[a] = classes;
                            in = true;
                        } else {
                            out = true;
                        }
                    }
                if (!in || !out) continue;
                double d = cut_distance(W, conditional_expectation(W, lab));
                if (best_labels.empty() || d < best) {
                    best = d;
                    best_labels = lab;
                }
            }
        if (best_labels.empty()) {
            // no useful witness split: separate the largest class by parts
            for (int q = 0; q < classes && best_labels.empty(); ++q) {
                auto lab = wr.labels;
                int seen = 0;
                for (std::size_t a = 0; a < lab.size(); ++a)
                    if (lab[a] == q && seen++ == 0) lab[a] = classes;
                if (seen >= 2) best_labels = lab;
            }
            if (best_labels.empty()) break;
        }
        wr.labels = best_labels;
        ++classes;
        wr.E = conditional_expectation(W, wr.labels);
        cur = cut_distance_detail(W, wr.E);
        wr.distance = cur.value;
    }
    return wr;
}

// ---------------------------------------------------------------- sampling

enum class sample_mode { H, G };

struct DecoratedSample {
    int n = 0;
    int k = 0;
    sample_mode mode = sample_mode::G;
    std::vector<double> x;         // X_1..X_n
    std::vector<int> part;         // part of each X_i
    std::vector<double> H;         // n * n * k, diagonal zero
    std::optional<Colouring> G;

    const double* h(int i, int j) const { return H.data() + (static_cast<std::size_t>(i) * n + j) * k; }
};

inline DecoratedSample sample(const StepGraphon& W, int n, sample_mode mode, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    DecoratedSample s;
    s.n = n;
    s.k = W.k;
    s.mode = mode;
    counter_rng rng(seed);
    auto b = W.boundaries();
    for (int i = 0; i < n; ++i) {
        double x = rng.uniform();
        s.x.push_back(x);
        std::size_t a = std::upper_bound(b.begin() + 1, b.end() - 1, x) - (b.begin() + 1);
        s.part.push_back(static_cast<int>(a));
    }
    s.H.assign(static_cast<std::size_t>(n) * n * W.k, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                for (int c = 0; c < W.k; ++c) s.H[(static_cast<std::size_t>(i) * n + j) * W.k + c] = W.at(s.part[i], s.part[j], c);
    if (mode == sample_mode::G) {
        std::vector<std::uint8_t> col;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double* p = s.h(i, j);
                double u = rng.uniform(), acc = 0;
                int c = W.k - 1;
                for (int q = 0; q < W.k; ++q) {
                    acc += p[q];
                    if (u < acc) {
                        c = q;
                        break;
                    }
                }
                while (p[c] <= 0 && c > 0) --c;  // guard against rounding at the top
                col.push_back(static_cast<std::uint8_t>(c + 1));
            }
        s.G = Colouring(complete_host(n), W.k, std::move(col));
    }
    return s;
}

// Ent(G(n,W)) estimate: sum_{i<j} h_k(H(n,W)_ij) / C(n,2) for one draw of
// the X's.  Ent(G(n,W)) lies between the mean of this and the mean plus
// n H(weights) / C(n,2).
struct SampleEntropy {
    double conditional = 0;
    double slack = 0;
};

inline SampleEntropy sample_entropy(const StepGraphon& W, int n, std::uint64_t seed) {
    auto s = sample(W, n, sample_mode::H, seed);
    double pairs = 0.5 * n * (n - 1.0), tot = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) tot += h_k(s.h(i, j), W.k);
    double hw = 0;
    for (double w : W.weights) hw -= w * std::log(w);
    hw /= std::log(static_cast<double>(std::max(2, W.k)));
    return {tot / pairs, n * hw / pairs};
}

// W_G with vertices ordered by their sampled X, as an n-step graphon on
// intervals of length 1/n.
inline StepGraphon sorted_sample_graphon(const DecoratedSample& s) {
    if (!s.G) throw std::invalid_argument("sample has no colouring");
    std::vector<int> order(s.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s.x[a] < s.x[b]; });
    int n = s.n;
    StepGraphon R(s.k, std::vector<double>(n, 1.0 / n), std::vector<double>(static_cast<std::size_t>(n) * n * s.k, 0.0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            R.at(a, b, a == b ? 0 : s.G->at(order[a], order[b]) - 1) = 1.0;
    return R;
}

// ---------------------------------------------------------------- densities

struct DecoratedGraph {
    int v = 0;
    struct Edge {
        int a, b;
        std::vector<double> label;  // weight per colour
    };
    std::vector<Edge> edges;
};

// G_F: K_n with pair ij labelled by the indicator of F(ij).
inline DecoratedGraph indicator_graph(const Colouring& F) {
    DecoratedGraph g;
    g.v = F.host->num_vertices();
    for (int i = 0; i < g.v; ++i)
        for (int j = i + 1; j < g.v; ++j) {
            std::vector<double> l(F.k, 0.0);
            l[F.at(i, j) - 1] = 1.0;
            g.edges.push_back({i, j, l});
        }
    return g;
}

inline double hom_density(const DecoratedGraph& F, const StepGraphon& W) {
    const std::size_t m = W.parts();
    for (auto& e : F.edges)
        if (static_cast<int>(e.label.size()) != W.k) throw std::invalid_argument("edge label length differs from k");
    std::vector<std::size_t> as(F.v, 0);
    double total = 0;
    while (true) {
        double p = 1;
        for (int i = 0; i < F.v; ++i) p *= W.weights[as[i]];
        for (auto& e : F.edges) {
            double s = 0;
            for (int c = 0; c < W.k; ++c) s += e.label[c] * W.at(as[e.a], as[e.b], c);
            p *= s;
            if (p == 0) break;
        }
        total += p;
        int i = 0;
        while (i < F.v && as[i] == m - 1) as[i++] = 0;
        if (i == F.v) break;
        ++as[i];
    }
    return total;
}

// ---------------------------------------------------------------- neighbourhoods

enum class neighbourhood_metric { dk, deltak };

struct NeighbourhoodCount {
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    bool lower_bound = false;  // deltak counts use an upper bound on delta
};

inline NeighbourhoodCount neighborhood_count(const StepGraphon& W, double delta, int n, neighbourhood_metric metric,
                                             double budget = 1e7) {
    auto host = complete_host(n);
    const std::size_t E = host->num_units();
    double total = std::pow(static_cast<double>(W.k), static_cast<double>(E));
    if (total > budget) throw resource_limit("too many colourings to enumerate");
    NeighbourhoodCount out;
    out.lower_bound = metric == neighbourhood_metric::deltak;
    std::vector<int> perm(n);
    std::vector<std::uint8_t> col(E, 1);
    while (true) {
        ++out.total;
        Colouring G(host, W.k, col);
        auto WG = from_colouring(G);
        double d = cut_distance(WG, W);
        if (metric == neighbourhood_metric::deltak && d > delta + 1e-12) {
            std::iota(perm.begin(), perm.end(), 0);
            while (std::next_permutation(perm.begin(), perm.end()) && d > delta + 1e-12)
                d = std::min(d, cut_distance(permute_parts(WG, perm), W));
        }
        out.count += d <= delta + 1e-12;
        std::size_t e = 0;
        while (e < E && col[e] == W.k) col[e++] = 1;
        if (e == E) break;
        ++col[e];
    }
    return out;
}

}  // namespace mcc
