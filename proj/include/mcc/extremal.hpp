#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "properties.hpp"
#include "rng.hpp"
#include "search.hpp"
#include "template.hpp"

namespace mcc {

struct ExtremalResult {
    double value = 0;
    Template witness;
    std::uint64_t nodes = 0;
    bool proved = false;
    std::vector<Template> witnesses;  // every optimum, when requested
};

struct ExtremalOptions {
    std::uint64_t budget = 4'000'000'000ULL;
    bool all_witnesses = false;
    bool use_order = true;  // restrict to down-set palettes for ordered properties
};

// Nonempty palettes over [k], largest first, ties by mask.
inline std::vector<palette> palette_candidates(const Property& P, bool use_order) {
    if (P.k > 6) throw std::invalid_argument("palette search supports k <= 6");
    std::vector<palette> c;
    for (palette p = 1; p <= full_palette(P.k); ++p)
        if (!use_order || P.is_down_set(p)) c.push_back(p);
    std::stable_sort(c.begin(), c.end(), [](palette a, palette b) {
        int sa = palette_size(a), sb = palette_size(b);
        return sa != sb ? sa > sb : a < b;
    });
    return c;
}

namespace detail {

inline ExtremalResult solve_extremal(const Property& P, int n, const Template* T, const ExtremalOptions& opt) {
    auto cs = compile(P, n);
    if (T && !T->host->same_as(*cs.host)) throw std::invalid_argument("template host is not G_n of the property");
    PaletteSearch s;
    s.cs = &cs;
    s.candidates = palette_candidates(P, opt.use_order);
    for (auto p : s.candidates) s.score.push_back(P.k == 1 ? 0.0 : log_k(palette_size(p), P.k));
    s.budget = opt.budget;
    s.all_optimal = opt.all_witnesses;
    const std::size_t U = cs.units();
    if (T) {
        if (T->k != P.k) throw std::invalid_argument("colour counts differ");
        s.allowed.assign(U, 0);
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t c = 0; c < s.candidates.size(); ++c)
                if (!(s.candidates[c] & ~T->palettes[u])) s.allowed[u] |= std::uint64_t(1) << c;
    }
    // a zero-entropy incumbent from E_n(i) when that is feasible
    for (int i : P.monotone_colours) {
        auto it = std::find(s.candidates.begin(), s.candidates.end(), colour_bit(i));
        if (it == s.candidates.end()) continue;
        int ci = static_cast<int>(it - s.candidates.begin());
        bool fits = true;
        for (std::size_t u = 0; u < U && fits; ++u) fits = !s.allowed.empty() ? (s.allowed[u] >> ci & 1) : true;
        if (!fits) continue;
        if (bad_count(cs, std::vector<palette>(U, colour_bit(i))).pairs) continue;
        s.seed(0.0, std::vector<int>(U, ci));
        break;
    }
    auto r = s.maximise();
    if (!r.found) {
        if (T) throw infeasible("no subtemplate of T lies in the property");
        throw infeasible("property is empty at this order");
    }
    ExtremalResult out;
    auto to_template = [&](const std::vector<int>& ch) {
        std::vector<palette> ps(U);
        for (std::size_t u = 0; u < U; ++u) ps[u] = s.candidates[ch[u]];
        return Template(cs.host, P.k, std::move(ps));
    };
    out.witness = to_template(r.choice);
    out.value = entropy(out.witness);
    out.nodes = r.nodes;
    out.proved = r.complete;
    for (auto& ch : r.optima) out.witnesses.push_back(to_template(ch));
    return out;
}

}  // namespace detail

inline ExtremalResult extremal_entropy(const Property& P, int n, const ExtremalOptions& opt = {}) {
    return detail::solve_extremal(P, n, nullptr, opt);
}

inline ExtremalResult relative_extremal_entropy(const Template& T, const Property& P, const ExtremalOptions& opt = {}) {
    return detail::solve_extremal(P, host_index(*T.host), &T, opt);
}

struct DensityTerm {
    int n = 0;
    double ex = 0;
    double density = 0;
    bool proved = false;
};

struct DensitySequence {
    std::vector<DensityTerm> terms;
    bool nonincreasing = true;
    bool truncated = false;
};

inline DensitySequence entropy_density_sequence(const Property& P, int n_min, int n_max, const ExtremalOptions& opt = {},
                                                double tol = 1e-12) {
    DensitySequence seq;
    for (int n = n_min; n <= n_max; ++n) {
        auto r = extremal_entropy(P, n, opt);
        if (!r.proved) {
            seq.truncated = true;
            break;
        }
        double units = static_cast<double>(P.host(n)->num_units());
        DensityTerm t{n, r.value, units > 0 ? r.value / units : 0.0, true};
        if (!seq.terms.empty() && t.density > seq.terms.back().density + tol) seq.nonincreasing = false;
        seq.terms.push_back(t);
    }
    return seq;
}

// ---------------------------------------------------------------- random templates

struct RandomTemplateSpec {
    int n = 0;
    int k = 2;
    double p = 0.5;
    int base_colour = 1;
    std::uint64_t seed = 0;
};

inline Template random_template(const RandomTemplateSpec& spec, host_ptr host = nullptr) {
    if (spec.p < 0 || spec.p > 1) throw std::invalid_argument("p must lie in [0,1]");
    if (spec.base_colour < 1 || spec.base_colour > spec.k) throw std::invalid_argument("base colour outside [k]");
    if (!host) host = complete_host(spec.n);
    counter_rng rng(spec.seed);
    std::vector<palette> ps(host->num_units());
    for (auto& p : ps) p = rng.bernoulli(spec.p) ? full_palette(spec.k) : colour_bit(spec.base_colour);
    return Template(host, spec.k, std::move(ps));
}

// ---------------------------------------------------------------- weighted maximum

struct WeightedResult {
    double value = 0;
    Colouring colouring;
    std::uint64_t nodes = 0;
    bool proved = false;
};

// max sum_e w[c(e)-1] over c in P_n
inline WeightedResult max_weight_member(const Property& P, int n, const std::vector<double>& w,
                                        std::uint64_t budget = 4'000'000'000ULL) {
    if (static_cast<int>(w.size()) != P.k) throw std::invalid_argument("one weight per colour");
    auto cs = compile(P, n);
    PaletteSearch s;
    s.cs = &cs;
    std::vector<int> order(P.k);
    for (int c = 0; c < P.k; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] > w[b]; });
    for (int c : order) {
        s.candidates.push_back(colour_bit(c + 1));
        s.score.push_back(w[c]);
    }
    s.budget = budget;
    auto r = s.maximise();
    if (!r.found) throw infeasible("property is empty at this order");
    std::vector<std::uint8_t> col(cs.units());
    for (std::size_t u = 0; u < col.size(); ++u) col[u] = static_cast<std::uint8_t>(order[r.choice[u]] + 1);
    return {r.best, Colouring(cs.host, P.k, std::move(col)), r.nodes, r.complete};
}

// ---------------------------------------------------------------- transference

struct TransferenceStats {
    double ex_n = 0;
    std::vector<double> entropy_T;
    std::vector<double> ex_T;
    std::vector<double> ratios;  // ex(T,P) / (p ex(n,P)); empty when p = 0
    double mean = 0, min = 0, max = 0;
    double fraction_in_band = 0;
    int discarded = 0;
};

inline TransferenceStats transference_experiment(const Property& P, int n, double p, int i, int trials, std::uint64_t seed,
                                                 double eps, const ExtremalOptions& opt = {}) {
    if (std::find(P.monotone_colours.begin(), P.monotone_colours.end(), i) == P.monotone_colours.end())
        throw std::invalid_argument("property is not monotone in colour " + std::to_string(i));
    TransferenceStats st;
    auto full = extremal_entropy(P, n, opt);
    if (!full.proved) throw resource_limit("ex(n,P) not proved within budget");
    st.ex_n = full.value;
    double n2 = static_cast<double>(n) * n;
    double lo = 1 - eps * n2 / st.ex_n, hi = 1 + 2 * eps * n2 / st.ex_n;
    int inside = 0;
    for (int t = 0; t < trials; ++t) {
        RandomTemplateSpec spec{n, P.k, p, i, child_seed(seed, static_cast<std::uint64_t>(t))};
        auto T = random_template(spec, P.host(n));
        auto r = relative_extremal_entropy(T, P, opt);
        if (!r.proved) {
            ++st.discarded;
            continue;
        }
        st.entropy_T.push_back(entropy(T));
        st.ex_T.push_back(r.value);
        if (p > 0 && st.ex_n > 0) {
            double q = r.value / (p * st.ex_n);
            st.ratios.push_back(q);
            inside += q >= lo && q <= hi;
        }
    }
    if (!st.ratios.empty()) {
        double s = 0;
        st.min = st.max = st.ratios[0];
        for (double q : st.ratios) {
            s += q;
            st.min = std::min(st.min, q);
            st.max = std::max(st.max, q);
        }
        st.mean = s / st.ratios.size();
        st.fraction_in_band = static_cast<double>(inside) / st.ratios.size();
    }
    return st;
}

// ---------------------------------------------------------------- typical structure

struct TypicalStats {
    std::vector<std::size_t> distances;  // sorted
    double median = 0;
    double fraction_above = 0;           // distance > threshold * e(G_n)
    std::string sampler;                 // "rejection" or "enumeration"
    std::uint64_t population = 0;        // |P_n| when enumerated
};

// Uniform samples from P_n: rejection from all k-colourings when the
// acceptance rate is at least 1e-4, else two passes of exact enumeration.
inline std::vector<Colouring> sample_members(const Property& P, int n, int samples, std::uint64_t seed, std::string* how = nullptr,
                                             std::uint64_t* population = nullptr) {
    auto cs = compile(P, n);
    const std::size_t U = cs.units();
    counter_rng rng(seed);
    std::vector<Colouring> out;
    const int pilot = 100'000;
    int hits = 0;
    std::vector<std::uint8_t> col(U);
    for (int t = 0; t < pilot && static_cast<int>(out.size()) < samples; ++t) {
        for (auto& c : col) c = static_cast<std::uint8_t>(1 + rng.below(P.k));
        if (satisfies(cs, col)) {
            ++hits;
            out.emplace_back(cs.host, P.k, col);
        }
    }
    if (static_cast<int>(out.size()) >= samples || hits >= pilot / 10'000) {
        while (static_cast<int>(out.size()) < samples) {
            for (auto& c : col) c = static_cast<std::uint8_t>(1 + rng.below(P.k));
            if (satisfies(cs, col)) out.emplace_back(cs.host, P.k, col);
        }
        if (how) *how = "rejection";
        return out;
    }
    out.clear();
    std::uint64_t total = speed(P, n);
    if (population) *population = total;
    if (total == 0) throw infeasible("property is empty at this order");
    std::vector<std::uint64_t> idx(samples);
    for (auto& x : idx) x = rng.below(total);
    std::sort(idx.begin(), idx.end());
    std::uint64_t pos = 0;
    std::size_t j = 0;
    for_each_member(P, n, [&](const std::vector<std::uint8_t>& c) {
        while (j < idx.size() && idx[j] == pos) {
            out.emplace_back(cs.host, P.k, c);
            ++j;
        }
        ++pos;
        return j < idx.size();
    });
    if (how) *how = "enumeration";
    return out;
}

inline TypicalStats typical_structure_experiment(const Property& P, int n, const std::vector<Template>& S, int samples,
                                                 std::uint64_t seed, double threshold = 0.25) {
    if (S.empty()) throw std::invalid_argument("template family is empty");
    TypicalStats st;
    auto cs = sample_members(P, n, samples, seed, &st.sampler, &st.population);
    for (auto& c : cs) st.distances.push_back(edit_distance(c, S));
    std::sort(st.distances.begin(), st.distances.end());
    std::size_t m = st.distances.size();
    if (m) {
        st.median = m % 2 ? st.distances[m / 2] : 0.5 * (st.distances[m / 2 - 1] + st.distances[m / 2]);
        double cut = threshold * static_cast<double>(P.host(n)->num_units());
        std::size_t above = 0;
        for (auto d : st.distances) above += static_cast<double>(d) > cut;
        st.fraction_above = static_cast<double>(above) / m;
    }
    return st;
}

}  // namespace mcc
