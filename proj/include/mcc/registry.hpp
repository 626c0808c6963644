#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "properties.hpp"

namespace mcc {

namespace detail {

inline std::vector<std::vector<std::uint8_t>> all_tuples(int len, int k) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> t(len, 1);
    while (true) {
        out.push_back(t);
        int i = 0;
        while (i < len && t[i] == k) t[i++] = 1;
        if (i == len) break;
        ++t[i];
    }
    return out;
}

inline bool max_degree_at_most(const Colouring& g, int d) {
    int n = g.host->num_vertices();
    for (int v = 0; v < n; ++v) {
        int deg = 0;
        for (int u = 0; u < n; ++u)
            if (u != v && g.at(u, v) == 2) ++deg;
        if (deg > d) return false;
    }
    return true;
}

inline std::map<std::string, Property> build_registry() {
    std::map<std::string, Property> reg;
    auto add = [&](Property P, std::string desc) {
        P.description = std::move(desc);
        reg.emplace(P.id, std::move(P));
    };

    {
        std::vector<std::vector<std::uint8_t>> ms;
        for (auto& t : all_tuples(3, 3))
            if (t[0] != t[1] && t[0] != t[2] && t[1] != t[2]) ms.push_back(t);
        add(make_family_property("rainbow-k3", ForbiddenFamily::on_complete(3, 3, ms)),
            "3-colourings of K_n with no rainbow triangle");
    }
    add(make_family_property("dk3", ForbiddenFamily::on_complete(3, 4, {{4, 4, 4}}), {}, {1},
                             {colour_bit(1), colour_bit(1) | colour_bit(2), colour_bit(1) | colour_bit(3), full_palette(4)}),
        "digraphs (1 none, 2 forward, 3 backward, 4 double) with no triangle of double edges");
    {
        std::vector<std::vector<std::uint8_t>> ms;
        for (auto& t : all_tuples(3, 5))
            if (t[0] + t[1] + t[2] - 3 >= 5) ms.push_back(t);
        std::vector<palette> below;
        for (int c = 1; c <= 5; ++c) below.push_back(full_palette(c));
        add(make_family_property("multigraph-3-5", ForbiddenFamily::on_complete(3, 5, ms), {}, {1}, below),
            "multigraphs, edge weight = colour - 1 <= 4, every triangle of weight at most 4");
    }
    add(make_family_property("triangle-free", ForbiddenFamily::on_complete(3, 2, {{2, 2, 2}}), {}, {1}),
        "graphs (colour 2 = edge) with no triangle");
    add(make_family_property("inc-path-2", ForbiddenFamily::on_complete(3, 2, {{2, 1, 2}, {2, 2, 2}}), {}, {1}),
        "graphs with no i<j<l such that ij and jl are edges");
    add(make_predicate_property("max-degree-2", 2, 4, [](const Colouring& g) { return max_degree_at_most(g, 2); }, {1}),
        "graphs with maximum degree at most 2");
    add(make_predicate_property("max-degree-1", 2, 3, [](const Colouring& g) { return max_degree_at_most(g, 1); }, {1}),
        "graphs with maximum degree at most 1 (matchings)");
    add(make_predicate_property("all-graphs", 2, 2, [](const Colouring&) { return true; }, {1}), "every graph");
    add(make_family_property("empty-graph", ForbiddenFamily::on_complete(2, 2, {{2}}), {}, {1}), "graphs with no edges");
    {
        HostSequence seq{host_kind::path};
        ForbiddenFamily F(build_host(host_kind::path, {3}), 3, 3, {{1, 1}, {2, 2}, {3, 3}});
        add(make_family_property("path-3colour", F, seq), "3-colourings of the path P_n with no two consecutive edges alike");
    }
    {
        HostSequence seq{host_kind::hypercube_vertices};
        ForbiddenFamily F(build_host(host_kind::hypercube_vertices, {2}), 2, 2, {{2, 2, 2, 2}});
        add(make_family_property("q2-free-vertex", F, seq, {1}), "vertex subsets of Q_n containing no 2-dimensional subcube");
    }
    {
        HostSequence seq{host_kind::hypercube_edges};
        ForbiddenFamily F(build_host(host_kind::hypercube_edges, {2}), 2, 2, {{2, 2, 2, 2}});
        add(make_family_property("q2-free-edge", F, seq, {1}), "edge subsets of Q_n containing no 4-cycle face");
    }
    return reg;
}

}  // namespace detail

inline const std::map<std::string, Property>& registry() {
    static const auto reg = detail::build_registry();
    return reg;
}

inline const Property& builtin(const std::string& id) {
    auto& reg = registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw std::invalid_argument("unknown property id '" + id + "'");
    return it->second;
}

inline std::vector<std::string> builtin_ids() {
    std::vector<std::string> ids;
    for (auto& [id, p] : registry()) ids.push_back(id);
    return ids;
}

}  // namespace mcc
