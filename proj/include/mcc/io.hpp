#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "constraints.hpp"
#include "graphon.hpp"
#include "host.hpp"
#include "template.hpp"

namespace mcc {

using json = nlohmann::ordered_json;

inline json host_to_json(const HostGraph& h, bool with_edges = false) {
    json j;
    j["kind"] = to_string(h.kind);
    j["params"] = h.params;
    if (with_edges) {
        j["vertices"] = h.num_vertices();
        j["r"] = h.r;
        json es = json::array();
        for (auto [u, v] : h.edges()) es.push_back({u, v});
        j["edges"] = es;
    }
    return j;
}

inline host_ptr host_from_json(const json& j) {
    auto kind = host_kind_from_string(j.at("kind").get<std::string>());
    auto params = j.at("params").get<std::vector<int>>();
    if (kind == host_kind::complete && params.size() == 1) return complete_host(params[0]);
    return build_host(kind, params);
}

namespace detail {
inline int host_n(const HostGraph& h) { return h.kind == host_kind::multipartite ? h.params[1] : h.params[0]; }

inline host_ptr host_of(const json& j) {
    if (j.contains("host") && j["host"].is_object()) return host_from_json(j["host"]);
    std::string kind = j.value("host", std::string("complete"));
    int n = j.at("n").get<int>();
    if (kind == "complete") return complete_host(n);
    if (j.contains("params")) return build_host(host_kind_from_string(kind), j["params"].get<std::vector<int>>());
    return build_host(host_kind_from_string(kind), {n});
}
}  // namespace detail

// {n, k, host, palettes:[[colours...]...]}, units in lexicographic order
inline json to_json(const Template& t) {
    json j;
    j["n"] = detail::host_n(*t.host);
    j["k"] = t.k;
    j["host"] = t.host->kind == host_kind::complete ? json("complete") : host_to_json(*t.host);
    json ps = json::array();
    for (auto p : t.palettes) ps.push_back(palette_colours(p));
    j["palettes"] = ps;
    return j;
}

inline json to_json(const Colouring& c) { return to_json(Template(c)); }

inline Template template_from_json(const json& j) {
    auto host = detail::host_of(j);
    int k = j.at("k").get<int>();
    std::vector<palette> ps;
    for (auto& p : j.at("palettes")) ps.push_back(palette_of(p.get<std::vector<int>>()));
    return Template(host, k, std::move(ps));
}

inline Colouring colouring_from_json(const json& j) {
    auto t = template_from_json(j);
    std::vector<std::uint8_t> cs;
    for (auto p : t.palettes) {
        if (palette_size(p) != 1) throw std::invalid_argument("a colouring needs singleton palettes");
        cs.push_back(static_cast<std::uint8_t>(std::countr_zero(p) + 1));
    }
    return Colouring(t.host, t.k, std::move(cs));
}

// {N, k, members:[[colours...]...]} on K_N
inline ForbiddenFamily family_from_json(const json& j) {
    int N = j.at("N").get<int>(), k = j.at("k").get<int>();
    std::vector<std::vector<std::uint8_t>> ms;
    for (auto& m : j.at("members")) {
        std::vector<std::uint8_t> v;
        for (auto& c : m) v.push_back(static_cast<std::uint8_t>(c.get<int>()));
        ms.push_back(std::move(v));
    }
    if (ms.empty()) throw std::invalid_argument("forbidden family must be nonempty");
    return ForbiddenFamily::on_complete(N, k, std::move(ms));
}

inline json to_json(const ForbiddenFamily& F) {
    json j;
    j["N"] = F.N;
    j["k"] = F.k;
    j["members"] = F.members;
    return j;
}

// {weights:[...], cells:[[[p...]...]...], k}
inline json to_json(const StepGraphon& W) {
    json j;
    j["weights"] = W.weights;
    json rows = json::array();
    for (std::size_t a = 0; a < W.parts(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < W.parts(); ++b) row.push_back(std::vector<double>(W.cell(a, b), W.cell(a, b) + W.k));
        rows.push_back(row);
    }
    j["cells"] = rows;
    j["k"] = W.k;
    return j;
}

inline StepGraphon graphon_from_json(const json& j) {
    auto w = j.at("weights").get<std::vector<double>>();
    int k = j.at("k").get<int>();
    std::vector<double> cells;
    const auto& rows = j.at("cells");
    if (rows.size() != w.size()) throw std::invalid_argument("cells must be an m x m array");
    for (auto& row : rows) {
        if (row.size() != w.size()) throw std::invalid_argument("cells must be an m x m array");
        for (auto& cell : row) {
            auto p = cell.get<std::vector<double>>();
            if (static_cast<int>(p.size()) != k) throw std::invalid_argument("cell vector length differs from k");
            cells.insert(cells.end(), p.begin(), p.end());
        }
    }
    StepGraphon W(k, std::move(w), std::move(cells));
    W.validate(1e-9);  // decimal input
    return W;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

}  // namespace mcc
