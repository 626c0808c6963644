#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "containers.hpp"
#include "extremal.hpp"
#include "graphon.hpp"
#include "hostgraphs.hpp"
#include "io.hpp"
#include "registry.hpp"

#ifndef MCC_VERSION
#define MCC_VERSION "0.1.0"
#endif

namespace mcc {

class spec_error : public std::runtime_error {
public:
    spec_error(std::string field, const std::string& msg)
        : std::runtime_error(field.empty() ? msg : "field '" + field + "': " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct Expectation {
    std::string field;
    std::optional<double> n;
    double value = 0;
    double tolerance = 0;
    std::string oracle;
};

struct ExperimentSpec {
    std::string command;
    json params = json::object();
    std::uint64_t seed = 0;
    std::string output;  // empty: stdout
    std::string format = "json";
    std::vector<Expectation> expect;
};

inline const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> c = {
        "extremal", "speed", "badpairs", "containers", "transfer", "typical", "goodness",
        "graphon.cutdist", "graphon.entropy", "graphon.weakreg", "graphon.sample", "graphon.homdensity", "graphon.count"};
    return c;
}

namespace detail {

inline const std::vector<std::string>& reserved_keys() {
    static const std::vector<std::string> r = {"command", "seed", "output", "format", "expect"};
    return r;
}

// "n": 5 | "3..7" | [3,4,5]
inline std::vector<int> n_values(const json& p, const std::string& key = "n") {
    if (!p.contains(key)) throw spec_error(key, "required");
    const auto& v = p[key];
    std::vector<int> out;
    if (v.is_number_integer()) out.push_back(v.get<int>());
    else if (v.is_array()) {
        for (auto& x : v) {
            if (!x.is_number_integer()) throw spec_error(key, "list entries must be integers");
            out.push_back(x.get<int>());
        }
    } else if (v.is_string()) {
        auto s = v.get<std::string>();
        auto dots = s.find("..");
        try {
            if (dots == std::string::npos) out.push_back(std::stoi(s));
            else
                for (int n = std::stoi(s.substr(0, dots)), e = std::stoi(s.substr(dots + 2)); n <= e; ++n) out.push_back(n);
        } catch (const std::logic_error&) {
            throw spec_error(key, "expected an integer or a range a..b");
        }
    } else {
        throw spec_error(key, "expected an integer, a list or a range a..b");
    }
    if (out.empty()) throw spec_error(key, "empty range");
    for (int n : out)
        if (n < 1) throw spec_error(key, "orders must be positive");
    return out;
}

template <class T>
T get_or(const json& p, const std::string& key, T def) {
    if (!p.contains(key)) return def;
    try {
        return p[key].get<T>();
    } catch (const json::exception&) {
        throw spec_error(key, "wrong type");
    }
}

inline const Property& property_param(const json& p, const std::string& key = "property") {
    if (!p.contains(key)) throw spec_error(key, "required");
    if (!p[key].is_string()) throw spec_error(key, "expected a registered property id");
    auto id = p[key].get<std::string>();
    auto& reg = registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw spec_error(key, "unknown property id '" + id + "'");
    return it->second;
}

inline StepGraphon graphon_param(const json& p, const std::string& key) {
    if (!p.contains(key)) throw spec_error(key, "required");
    try {
        if (p[key].is_string()) return graphon_from_json(read_json_file(p[key].get<std::string>()));
        return graphon_from_json(p[key]);
    } catch (const spec_error&) {
        throw;
    } catch (const std::exception& e) {
        throw spec_error(key, e.what());
    }
}

inline json measure(double v, double tol, const std::string& oracle) {
    json j;
    j["value"] = v;
    j["tolerance"] = tol;
    j["oracle"] = oracle;
    return j;
}

}  // namespace detail

inline ExperimentSpec parse_spec_json(const json& j) {
    if (!j.is_object()) throw spec_error("", "spec must be a JSON object");
    ExperimentSpec s;
    if (!j.contains("command") || !j["command"].is_string()) throw spec_error("command", "required");
    s.command = j["command"].get<std::string>();
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), s.command) == cmds.end()) throw spec_error("command", "unknown command '" + s.command + "'");
    if (!j.contains("seed")) throw spec_error("seed", "seed required");
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) throw spec_error("seed", "seed must be an integer");
    s.seed = j["seed"].get<std::uint64_t>();
    s.output = detail::get_or<std::string>(j, "output", "");
    s.format = detail::get_or<std::string>(j, "format", "json");
    if (s.format != "json" && s.format != "csv") throw spec_error("format", "expected json or csv");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& r = detail::reserved_keys();
        if (std::find(r.begin(), r.end(), it.key()) == r.end()) s.params[it.key()] = it.value();
    }
    if (s.params.contains("property")) detail::property_param(s.params);
    if (j.contains("expect")) {
        if (!j["expect"].is_array()) throw spec_error("expect", "expected a list");
        for (std::size_t i = 0; i < j["expect"].size(); ++i) {
            const auto& e = j["expect"][i];
            std::string where = "expect[" + std::to_string(i) + "]";
            if (!e.is_object() || !e.contains("field") || !e.contains("value")) throw spec_error(where, "needs field and value");
            Expectation x;
            x.field = e["field"].get<std::string>();
            x.value = e["value"].get<double>();
            x.tolerance = detail::get_or<double>(e, "tolerance", 0.0);
            x.oracle = detail::get_or<std::string>(e, "oracle", "declared");
            if (e.contains("n")) x.n = e["n"].get<double>();
            s.expect.push_back(x);
        }
    }
    return s;
}

inline ExperimentSpec parse_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // locate the byte offset as line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw spec_error("", "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
    }
    return parse_spec_json(j);
}

inline ExperimentSpec parse_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spec_error("", "cannot open spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

struct Report {
    json spec;
    json results = json::array();
    json rows = json::array();  // flat rows for CSV
    json provenance;
    json checks = json::array();
    int exit_code = 0;
    std::string status = "pass";
    std::string error;
};

namespace detail {

inline json spec_echo(const ExperimentSpec& s) {
    json j;
    j["command"] = s.command;
    j["seed"] = s.seed;
    for (auto it = s.params.begin(); it != s.params.end(); ++it) j[it.key()] = it.value();
    j["format"] = s.format;
    return j;
}

inline std::vector<Template> typical_family(const Property& P, int n, const json& p) {
    auto host = P.host(n);
    if (!p.contains("family") || p["family"] == "constant-pairs") {
        std::vector<Template> S;
        for (int a = 1; a <= P.k; ++a)
            for (int b = a + 1; b <= P.k; ++b) S.push_back(Template::constant(host, P.k, colour_bit(a) | colour_bit(b)));
        return S;
    }
    if (p["family"] == "witnesses") {
        ExtremalOptions o;
        o.all_witnesses = true;
        return extremal_entropy(P, n, o).witnesses;
    }
    if (p["family"].is_array()) {
        std::vector<Template> S;
        for (auto& t : p["family"]) S.push_back(template_from_json(t));
        return S;
    }
    throw spec_error("family", "expected constant-pairs, witnesses or a list of templates");
}

inline void run_command(const ExperimentSpec& s, Report& rep, std::uint64_t& nodes, bool& limited) {
    const auto& p = s.params;
    const auto& cmd = s.command;
    if (cmd == "extremal") {
        auto& P = property_param(p);
        ExtremalOptions o;
        o.budget = get_or<std::uint64_t>(p, "budget", o.budget);
        o.all_witnesses = get_or<bool>(p, "all_witnesses", false);
        for (int n : n_values(p)) {
            auto r = extremal_entropy_host(P, n, o);
            nodes += r.nodes;
            limited = limited || !r.proved;
            bool dp = P.hosts.kind == host_kind::path;
            json e;
            e["n"] = n;
            e["ex"] = measure(r.value, 1e-9, dp ? "path-dp" : "branch-and-bound");
            e["optimality"] = r.proved ? "proved" : "lower-bound-only";
            e["nodes"] = r.nodes;
            e["witness"] = to_json(r.witness);
            if (o.all_witnesses) {
                json ws = json::array();
                for (auto& w : r.witnesses) ws.push_back(to_json(w));
                e["witnesses"] = ws;
            }
            rep.results.push_back(e);
            double units = static_cast<double>(P.host(n)->num_units());
            rep.rows.push_back({{"n", n}, {"ex", r.value}, {"density", units ? r.value / units : 0.0}, {"proved", r.proved ? 1 : 0}, {"nodes", r.nodes}});
        }
    } else if (cmd == "speed") {
        auto& P = property_param(p);
        auto budget = get_or<std::uint64_t>(p, "budget", 10'000'000'000ULL);
        for (int n : n_values(p)) {
            auto r = speed_detail(P, n, budget);
            nodes += r.nodes;
            rep.results.push_back({{"n", n}, {"count", measure(static_cast<double>(r.count), 0, "enumeration")}, {"nodes", r.nodes}});
            rep.rows.push_back({{"n", n}, {"count", r.count}, {"nodes", r.nodes}});
        }
    } else if (cmd == "badpairs") {
        auto& P = property_param(p);
        int trials = get_or<int>(p, "trials", 1);
        for (int n : n_values(p)) {
            auto exr = extremal_entropy(P, std::max(n, 1));
            auto cs = compile(P, n);
            counter_rng rng(child_seed(s.seed, static_cast<std::uint64_t>(n)));
            for (int t = 0; t < trials; ++t) {
                Template T;
                if (p.contains("template")) T = template_from_json(p["template"]);
                else {
                    std::vector<palette> ps(cs.units());
                    for (auto& x : ps) x = 1 + rng.below(full_palette(P.k));
                    T = Template(P.host(n), P.k, std::move(ps));
                }
                auto b = bad_count(cs, T.palettes);
                double ent = entropy(T), bound = (ent - exr.value) / log_k(2, P.k);
                rep.results.push_back({{"n", n}, {"entropy", measure(ent, 1e-12, "product formula")},
                                       {"bad_pairs", measure(static_cast<double>(b.pairs), 0, "enumeration")},
                                       {"bad_sets", b.sets}, {"bound", measure(bound, 1e-9, "supersaturation")},
                                       {"template", to_json(T)}});
                rep.rows.push_back({{"n", n}, {"trial", t}, {"entropy", ent}, {"bad_pairs", b.pairs}, {"bad_sets", b.sets},
                                    {"bound", bound}, {"holds", static_cast<double>(b.pairs) >= bound - 1e-9 ? 1 : 0}});
            }
        }
    } else if (cmd == "containers") {
        auto& P = property_param(p);
        ContainerPipelineOptions o;
        o.delta = get_or<double>(p, "delta", o.delta);
        o.eps1 = get_or<double>(p, "eps1", o.eps1);
        if (p.contains("eps")) o.eps = get_or<double>(p, "eps", 0.0);
        o.seed = s.seed;
        o.no_sparsify = get_or<bool>(p, "no_sparsify", false);
        auto cov = get_or<std::string>(p, "coverage", "auto");
        o.coverage = cov == "exact" ? coverage_mode::exact : cov == "sampled" ? coverage_mode::sampled : coverage_mode::automatic;
        o.samples = get_or<int>(p, "samples", o.samples);
        o.budget = get_or<std::uint64_t>(p, "budget", o.budget);
        for (int n : n_values(p)) {
            auto r = run_container_pipeline(P, n, o);
            const auto& R = r.report;
            nodes += R.container_nodes;
            json e;
            e["n"] = n;
            e["family_size"] = R.family_size;
            e["dropped"] = R.dropped;
            e["e_H"] = R.e_H;
            e["v_H"] = R.v_H;
            e["max_entropy"] = measure(R.max_entropy, 1e-9, "product formula");
            if (R.ex) e["ex"] = measure(*R.ex, 1e-9, "branch-and-bound");
            e["entropy_bound_ok"] = R.entropy_ok;
            e["max_bad_sets"] = R.max_bad_sets;
            e["bad_set_bound"] = measure(R.bad_set_bound, 0, "eps*C(n,N)");
            e["bad_sets_ok"] = R.bad_sets_ok;
            e["coverage"] = measure(R.coverage, R.coverage_exact ? 0.0 : R.coverage_hi - R.coverage_lo,
                                    R.coverage_exact ? "exhaustive enumeration" : "sampling, Wilson 95%");
            e["coverage_interval"] = {R.coverage_lo, R.coverage_hi};
            e["checked"] = R.checked;
            json sp;
            sp["p"] = R.sparsify.p;
            sp["p_formula"] = R.sparsify.p_formula;
            sp["skipped"] = R.sparsify.skipped;
            sp["clipped"] = R.sparsify.clipped;
            sp["e_H_prime"] = R.sparsify.e_H1;
            sp["overlapping_pairs"] = R.sparsify.overlapping_pairs;
            sp["e_H_double_prime"] = R.sparsify.e_H2;
            sp["F1"] = R.sparsify.F1;
            sp["F2"] = R.sparsify.F2;
            sp["F3_checked"] = R.F3_checked;
            sp["F3_failed"] = R.F3_failed;
            e["sparsification"] = sp;
            rep.results.push_back(e);
            rep.rows.push_back({{"n", n}, {"family_size", R.family_size}, {"dropped", R.dropped}, {"max_entropy", R.max_entropy},
                                {"max_bad_sets", R.max_bad_sets}, {"bad_set_bound", R.bad_set_bound}, {"coverage", R.coverage},
                                {"checked", R.checked}});
        }
    } else if (cmd == "transfer") {
        auto& P = property_param(p);
        int colour = get_or<int>(p, "colour", P.monotone_colours.empty() ? 1 : P.monotone_colours[0]);
        int trials = get_or<int>(p, "trials", 50);
        double eps = get_or<double>(p, "eps", 0.05);
        std::vector<double> ps;
        if (!p.contains("p")) throw spec_error("p", "required");
        if (p["p"].is_array()) ps = p["p"].get<std::vector<double>>();
        else ps.push_back(get_or<double>(p, "p", 0.5));
        for (int n : n_values(p))
            for (double pr : ps) {
                auto st = transference_experiment(P, n, pr, colour, trials, s.seed, eps);
                double excess = -1e300;
                for (std::size_t i = 0; i < st.ex_T.size(); ++i) excess = std::max(excess, st.ex_T[i] - st.entropy_T[i]);
                rep.results.push_back({{"n", n}, {"p", pr}, {"ex_n", measure(st.ex_n, 1e-9, "branch-and-bound")},
                                       {"ratios", st.ratios}, {"mean", st.mean}, {"min", st.min}, {"max", st.max},
                                       {"fraction_in_band", st.fraction_in_band}, {"discarded", st.discarded}});
                rep.rows.push_back({{"n", n}, {"p", pr}, {"mean", st.mean}, {"min", st.min}, {"max", st.max},
                                    {"fraction_in_band", st.fraction_in_band}, {"discarded", st.discarded}, {"max_excess", excess}});
            }
    } else if (cmd == "typical") {
        auto& P = property_param(p);
        int samples = get_or<int>(p, "samples", 1000);
        double thr = get_or<double>(p, "threshold", 0.25);
        for (int n : n_values(p)) {
            auto S = typical_family(P, n, p);
            auto st = typical_structure_experiment(P, n, S, samples, s.seed, thr);
            json cdf = json::array();
            for (std::size_t i = 0; i < st.distances.size(); ++i)
                if (i + 1 == st.distances.size() || st.distances[i + 1] != st.distances[i])
                    cdf.push_back({st.distances[i], static_cast<double>(i + 1) / st.distances.size()});
            rep.results.push_back({{"n", n}, {"sampler", st.sampler}, {"family_size", S.size()}, {"median", st.median},
                                   {"fraction_above", measure(st.fraction_above, 0, "empirical")}, {"cdf", cdf}});
            rep.rows.push_back({{"n", n}, {"samples", samples}, {"median", st.median}, {"fraction_above", st.fraction_above}});
        }
    } else if (cmd == "goodness") {
        if (!p.contains("kind")) throw spec_error("kind", "required");
        HostSequence seq;
        try {
            seq.kind = host_kind_from_string(p["kind"].get<std::string>());
        } catch (const std::exception& e) {
            throw spec_error("kind", e.what());
        }
        seq.q = get_or<int>(p, "q", 3);
        int N = get_or<int>(p, "N", 2);
        auto ns = n_values(p);
        auto g = goodness_diagnostic(seq, N, ns.front(), ns.back());
        for (auto& r : g.rows) {
            rep.results.push_back({{"n", r.n}, {"count", r.count.str()}, {"I", r.I}, {"J", r.J},
                                   {"ratio", measure(r.ratio, 1e-12, "pair enumeration")}, {"vertex_ratio", r.vertex_ratio}});
            rep.rows.push_back({{"n", r.n}, {"count", static_cast<double>(r.count)}, {"I", r.I}, {"J", r.J}, {"ratio", r.ratio},
                                {"vertex_ratio", r.vertex_ratio}});
        }
        rep.results.push_back({{"trend", g.trend}});
    } else if (cmd == "graphon.cutdist") {
        auto a = graphon_param(p, "a"), b = graphon_param(p, "b");
        auto metric = get_or<std::string>(p, "metric", "dk");
        if (metric == "l1") {
            double v = cut_distance(a, b, cut_metric::l1);
            rep.results.push_back({{"distance", measure(v, 1e-12, "l1 sum")}});
            rep.rows.push_back({{"distance", v}, {"lower", v}, {"upper", v}, {"exact", 1}});
        } else if (metric == "dk") {
            auto r = cut_distance_detail(a, b, s.seed);
            rep.results.push_back({{"distance", measure(r.value, r.exact ? 1e-12 : r.upper - r.lower,
                                                        r.exact ? "vertex enumeration" : "local search lower bound")},
                                   {"lower", r.lower}, {"upper", r.upper}, {"exact", r.exact}});
            rep.rows.push_back({{"distance", r.value}, {"lower", r.lower}, {"upper", r.upper}, {"exact", r.exact ? 1 : 0}});
        } else {
            throw spec_error("metric", "expected dk or l1");
        }
    } else if (cmd == "graphon.entropy") {
        auto W = graphon_param(p, "graphon");
        double v = entropy_graphon(W);
        rep.results.push_back({{"entropy", measure(v, 1e-12, "cell sum")}});
        rep.rows.push_back({{"entropy", v}});
    } else if (cmd == "graphon.weakreg") {
        auto W = graphon_param(p, "graphon");
        int m = get_or<int>(p, "m", 2);
        auto r = weak_regularity(W, m);
        double e0 = entropy_graphon(W), e1 = entropy_graphon(r.E);
        rep.results.push_back({{"m", m}, {"labels", r.labels}, {"distance", measure(r.distance, 1e-12, "vertex enumeration")},
                               {"entropy_W", e0}, {"entropy_E", e1}, {"E", to_json(r.E)}});
        rep.rows.push_back({{"m", m}, {"distance", r.distance}, {"entropy_W", e0}, {"entropy_E", e1}});
    } else if (cmd == "graphon.sample") {
        auto W = graphon_param(p, "graphon");
        auto mode = get_or<std::string>(p, "mode", "G");
        if (mode != "G" && mode != "H") throw spec_error("mode", "expected G or H");
        for (int n : n_values(p)) {
            auto smp = sample(W, n, mode == "G" ? sample_mode::G : sample_mode::H, child_seed(s.seed, static_cast<std::uint64_t>(n)));
            auto se = sample_entropy(W, n, child_seed(s.seed, static_cast<std::uint64_t>(n)));
            json e{{"n", n}, {"x", smp.x}, {"parts", smp.part}};
            if (smp.G) e["colouring"] = to_json(*smp.G);
            e["conditional_entropy"] = measure(se.conditional, se.slack, "conditional entropy given X");
            rep.results.push_back(e);
            rep.rows.push_back({{"n", n}, {"conditional_entropy", se.conditional}, {"slack", se.slack}, {"entropy_W", entropy_graphon(W)}});
        }
    } else if (cmd == "graphon.homdensity") {
        auto W = graphon_param(p, "graphon");
        if (!p.contains("F")) throw spec_error("F", "required");
        DecoratedGraph F;
        try {
            F.v = p["F"].at("v").get<int>();
            for (auto& e : p["F"].at("edges")) F.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::vector<double>>()});
        } catch (const json::exception& e) {
            throw spec_error("F", e.what());
        }
        double v = hom_density(F, W);
        rep.results.push_back({{"density", measure(v, 1e-12, "exact part sum")}});
        rep.rows.push_back({{"density", v}});
    } else if (cmd == "graphon.count") {
        auto W = graphon_param(p, "graphon");
        double delta = get_or<double>(p, "delta", 0.1);
        auto metric = get_or<std::string>(p, "metric", "dk");
        if (metric != "dk" && metric != "deltak") throw spec_error("metric", "expected dk or deltak");
        for (int n : n_values(p)) {
            auto r = neighborhood_count(W, delta, n, metric == "dk" ? neighbourhood_metric::dk : neighbourhood_metric::deltak);
            rep.results.push_back({{"n", n}, {"count", measure(static_cast<double>(r.count), 0, "enumeration")}, {"total", r.total},
                                   {"lower_bound", r.lower_bound}});
            rep.rows.push_back({{"n", n}, {"count", r.count}, {"total", r.total}});
        }
    }
}

inline void check_expectations(const ExperimentSpec& s, Report& rep) {
    for (const auto& x : s.expect) {
        bool matched = false, ok = true;
        double got = NAN;
        for (const auto& row : rep.rows) {
            if (x.n && (!row.contains("n") || std::abs(row["n"].get<double>() - *x.n) > 0)) continue;
            if (!row.contains(x.field)) continue;
            matched = true;
            got = row[x.field].get<double>();
            ok = ok && std::abs(got - x.value) <= x.tolerance;
        }
        json c;
        c["field"] = x.field;
        if (x.n) c["n"] = *x.n;
        c["expected"] = x.value;
        c["observed"] = matched ? json(got) : json(nullptr);
        c["tolerance"] = x.tolerance;
        c["oracle"] = x.oracle;
        c["pass"] = matched && ok;
        rep.checks.push_back(c);
    }
}

}  // namespace detail

inline Report run(const ExperimentSpec& s) {
    Report rep;
    rep.spec = detail::spec_echo(s);
    std::uint64_t nodes = 0;
    bool limited = false;
    try {
        detail::run_command(s, rep, nodes, limited);
    } catch (const resource_limit& e) {
        limited = true;
        rep.error = e.what();
    } catch (const json::exception& e) {
        throw spec_error("", e.what());
    } catch (const std::invalid_argument& e) {
        throw spec_error("", e.what());
    }
    rep.provenance = {{"library", "mcc"}, {"version", MCC_VERSION}, {"seed", s.seed}, {"nodes", nodes}, {"threads", 1}};
    detail::check_expectations(s, rep);
    bool failed = false;
    for (auto& c : rep.checks) failed = failed || !c["pass"].get<bool>();
    if (limited) {
        rep.exit_code = 3;
        rep.status = "resource-limit";
    } else if (failed) {
        rep.exit_code = 2;
        rep.status = "expectation-failed";
    }
    return rep;
}

inline std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream o;
        o.precision(17);
        o << v.get<double>();
        return o.str();
    }
    return v.dump();
}

inline std::string emit_string(const Report& rep, const std::string& format) {
    if (format == "csv") {
        std::ostringstream o;
        if (rep.rows.empty()) return "";
        std::vector<std::string> cols;
        for (auto it = rep.rows[0].begin(); it != rep.rows[0].end(); ++it) cols.push_back(it.key());
        for (std::size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << cols[i];
        o << "\n";
        for (const auto& row : rep.rows) {
            for (std::size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
            o << "\n";
        }
        return o.str();
    }
    if (format != "json") throw std::invalid_argument("format must be json or csv");
    json j;
    j["spec"] = rep.spec;
    j["status"] = rep.status;
    j["exit_code"] = rep.exit_code;
    if (!rep.error.empty()) j["error"] = rep.error;
    j["results"] = rep.results;
    j["rows"] = rep.rows;
    j["checks"] = rep.checks;
    j["provenance"] = rep.provenance;
    return j.dump(2) + "\n";
}

inline void emit(const Report& rep, const std::string& format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << emit_string(rep, format);
    if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace mcc
