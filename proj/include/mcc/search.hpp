#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "constraints.hpp"

namespace mcc {

// Branch and bound over one candidate palette per unit, units assigned in
// index order.  Candidates are a global list (at most 64) sorted by the
// caller; `allowed[u]` is a bitmask of candidate indices.  When a unit is the
// second-largest of a scope, the largest unit's mask is filtered against
// every pattern whose other entries are already realisable (forward check).
struct PaletteSearch {
    const ConstraintSystem* cs = nullptr;
    std::vector<palette> candidates;
    std::vector<double> score;           // only used when maximising
    std::vector<std::uint64_t> allowed;  // per unit

    // maximise options
    bool all_optimal = false;
    double eps = 1e-9;
    std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();

    struct Result {
        bool complete = true;          // false: budget ran out
        bool found = false;
        double best = -std::numeric_limits<double>::infinity();
        std::vector<int> choice;       // candidate index per unit
        std::vector<std::vector<int>> optima;
        std::uint64_t nodes = 0;
        std::uint64_t leaves = 0;
    };

    // Seed the incumbent (e.g. with a known feasible template).
    void seed(double value, std::vector<int> choice) {
        res_.found = true;
        res_.best = value;
        res_.choice = std::move(choice);
        if (all_optimal) res_.optima = {res_.choice};
    }

    Result maximise() {
        prepare();
        counting_ = false;
        run();
        return res_;
    }

    // Visits every leaf (a complete feasible assignment); `leaf` may return
    // false to stop.
    Result enumerate(const std::function<bool(const std::vector<int>&)>& leaf) {
        prepare();
        counting_ = true;
        leaf_ = leaf;
        run();
        return res_;
    }

private:
    struct Trigger {
        std::uint32_t last;                 // unit filtered
        std::vector<std::uint32_t> others;  // remaining units, any order
        std::vector<int> other_pos;
        int last_pos;
    };
    std::vector<std::vector<Trigger>> triggers_;
    std::vector<std::uint64_t> mask_;
    std::vector<int> choice_;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> trail_;
    Result res_;
    bool counting_ = false;
    bool stop_ = false;
    std::function<bool(const std::vector<int>&)> leaf_;
    std::vector<std::uint64_t> disjoint_;  // by colour set when k is small

    std::uint64_t disjoint_from(palette x) const {
        if (!disjoint_.empty()) return disjoint_[x];
        std::uint64_t m = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (!(candidates[c] & x)) m |= std::uint64_t(1) << c;
        return m;
    }

    void prepare() {
        const std::size_t U = cs->units();
        if (candidates.size() > 64) throw std::invalid_argument("at most 64 candidate palettes");
        if (allowed.empty()) {
            std::uint64_t all = candidates.size() == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << candidates.size()) - 1;
            allowed.assign(U, all);
        }
        if (allowed.size() != U) throw std::invalid_argument("allowed masks do not match units");
        if (cs->k <= 10) {
            disjoint_.assign(std::size_t(1) << cs->k, 0);
            for (palette x = 0; x < disjoint_.size(); ++x) {
                std::uint64_t m = 0;
                for (std::size_t c = 0; c < candidates.size(); ++c)
                    if (!(candidates[c] & x)) m |= std::uint64_t(1) << c;
                disjoint_[x] = m;
            }
        }
        mask_ = allowed;
        triggers_.assign(U, {});
        const int r = cs->arity;
        for (std::size_t s = 0; s < cs->num_scopes(); ++s) {
            const auto* sc = cs->scope(s);
            std::vector<int> pos(r);
            for (int j = 0; j < r; ++j) pos[j] = j;
            std::sort(pos.begin(), pos.end(), [&](int a, int b) { return sc[a] < sc[b]; });
            if (r == 1) {
                palette bad = 0;
                for (std::size_t p = 0; p < cs->num_patterns(); ++p) bad |= colour_bit(cs->pattern(p)[0]);
                mask_[sc[0]] &= disjoint_from(bad);
                continue;
            }
            Trigger t;
            t.last = sc[pos[r - 1]];
            t.last_pos = pos[r - 1];
            for (int j = 0; j < r - 1; ++j) {
                t.others.push_back(sc[pos[j]]);
                t.other_pos.push_back(pos[j]);
            }
            triggers_[sc[pos[r - 2]]].push_back(std::move(t));
        }
        choice_.assign(U, -1);
        trail_.clear();
        stop_ = false;
        res_.nodes = res_.leaves = 0;
        res_.complete = true;
    }

    double max_score(std::uint64_t m) const { return score[std::countr_zero(m)]; }

    void run() {
        for (auto m : mask_)
            if (!m) return;
        dfs(0, 0.0);
    }

    bool propagate(std::size_t d) {
        for (const auto& t : triggers_[d]) {
            palette x = 0;
            for (std::size_t p = 0; p < cs->num_patterns(); ++p) {
                const auto* pt = cs->pattern(p);
                bool ok = true;
                for (std::size_t j = 0; j < t.others.size() && ok; ++j)
                    ok = candidates[choice_[t.others[j]]] & colour_bit(pt[t.other_pos[j]]);
                if (ok) x |= colour_bit(pt[t.last_pos]);
            }
            if (!x) continue;
            std::uint64_t nm = mask_[t.last] & disjoint_from(x);
            if (nm != mask_[t.last]) {
                trail_.emplace_back(t.last, mask_[t.last]);
                mask_[t.last] = nm;
                if (!nm) return false;
            }
        }
        return true;
    }

    void dfs(std::size_t d, double cur) {
        if (stop_) return;
        if (++res_.nodes > budget) {
            res_.complete = false;
            stop_ = true;
            return;
        }
        const std::size_t U = mask_.size();
        if (d == U) {
            ++res_.leaves;
            if (counting_) {
                if (leaf_ && !leaf_(choice_)) stop_ = true;
                return;
            }
            if (!res_.found || cur > res_.best + eps) {
                res_.found = true;
                res_.best = cur;
                res_.choice = choice_;
                if (all_optimal) res_.optima = {choice_};
            } else if (all_optimal && std::abs(cur - res_.best) <= eps) {
                res_.optima.push_back(choice_);
            }
            return;
        }
        if (!counting_ && res_.found) {
            double ub = cur;
            for (std::size_t e = d; e < U; ++e) ub += max_score(mask_[e]);
            if (all_optimal ? ub < res_.best - eps : ub <= res_.best + eps) return;
        }
        std::uint64_t m = mask_[d];
        while (m) {
            int c = std::countr_zero(m);
            m &= m - 1;
            choice_[d] = c;
            std::size_t mark = trail_.size();
            if (propagate(d)) dfs(d + 1, counting_ ? 0.0 : cur + score[c]);
            while (trail_.size() > mark) {
                mask_[trail_.back().first] = trail_.back().second;
                trail_.pop_back();
            }
            if (stop_) break;
        }
        choice_[d] = -1;
    }
};

}  // namespace mcc
