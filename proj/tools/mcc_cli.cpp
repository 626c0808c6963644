#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "mcc/experiment.hpp"

namespace {

using mcc::json;

// options collected per subcommand, converted to a spec afterwards
struct Sub {
    CLI::App* app = nullptr;
    std::string command;
    std::map<std::string, std::string> strs;
    std::map<std::string, double> nums;
    std::map<std::string, std::vector<double>> lists;
    std::map<std::string, bool> flags;
    std::string n;
};

int finish(const mcc::ExperimentSpec& s, const std::string& out) {
    auto rep = mcc::run(s);
    auto path = out.empty() ? s.output : out;
    if (path.empty()) std::cout << mcc::emit_string(rep, s.format);
    else mcc::emit(rep, s.format, path);
    if (!rep.error.empty()) std::cerr << "resource limit: " << rep.error << "\n";
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multicolour containers and decorated graphons"};
    app.require_subcommand(0, 1);
    bool list = false;
    app.add_flag("--list-properties", list, "print the property registry");
    app.set_version_flag("--version", MCC_VERSION);

    std::uint64_t seed = 0;
    std::string format = "json", out;
    std::vector<std::unique_ptr<Sub>> subs;

    auto common = [&](Sub& s) {
        s.app->add_option("--seed", seed, "seed (default 0)");
        s.app->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s.app->add_option("--out,--report", out, "output file (default stdout)");
    };
    auto sub = [&](CLI::App* parent, const std::string& name, const std::string& command, const std::string& help) -> Sub& {
        subs.push_back(std::make_unique<Sub>());
        auto& s = *subs.back();
        s.command = command;
        s.app = parent->add_subcommand(name, help);
        common(s);
        return s;
    };
    auto str = [](Sub& s, const std::string& flag, const std::string& key, const std::string& help, bool req = false) {
        auto* o = s.app->add_option_function<std::string>(flag, [&s, key](const std::string& v) { s.strs[key] = v; }, help);
        if (req) o->required();
    };
    auto num = [](Sub& s, const std::string& flag, const std::string& key, const std::string& help) {
        s.app->add_option_function<double>(flag, [&s, key](const double& v) { s.nums[key] = v; }, help);
    };
    auto nums_list = [](Sub& s, const std::string& flag, const std::string& key, const std::string& help) {
        s.app->add_option_function<std::vector<double>>(flag, [&s, key](const std::vector<double>& v) { s.lists[key] = v; }, help)
            ->delimiter(',');
    };
    auto flag = [](Sub& s, const std::string& flag, const std::string& key, const std::string& help) {
        s.app->add_flag_callback(flag, [&s, key] { s.flags[key] = true; }, help);
    };
    auto nopt = [](Sub& s, bool req = true) {
        auto* o = s.app->add_option("--n", s.n, "order: 5, 3..7 or 3,4,6");
        if (req) o->required();
    };

    auto& ex = sub(&app, "extremal", "extremal", "exact extremal entropy ex(n,P)");
    str(ex, "--property", "property", "property id", true);
    nopt(ex);
    num(ex, "--budget", "budget", "node budget");
    flag(ex, "--exact", "exact", "prove optimality (always on)");
    flag(ex, "--all-witnesses", "all_witnesses", "return every optimal template");

    auto& sp = sub(&app, "speed", "speed", "|P_n| by enumeration");
    str(sp, "--property", "property", "property id", true);
    nopt(sp);
    num(sp, "--budget", "budget", "node budget");

    auto& bp = sub(&app, "badpairs", "badpairs", "supersaturation on random templates");
    str(bp, "--property", "property", "property id", true);
    nopt(bp);
    num(bp, "--trials", "trials", "random templates per n");
    str(bp, "--template", "template", "template JSON file");

    auto& co = sub(&app, "containers", "containers", "container family for a property");
    str(co, "--family,--property", "property", "property id", true);
    nopt(co);
    num(co, "--delta", "delta", "stop below delta e(H)");
    num(co, "--eps1", "eps1", "sparsification parameter");
    num(co, "--eps", "eps", "bad-set tolerance");
    flag(co, "--no-sparsify", "no_sparsify", "skip sparsification and linearization");
    str(co, "--coverage", "coverage", "exact, sampled or auto");
    num(co, "--samples", "samples", "coverage samples");
    num(co, "--budget", "budget", "container node budget");

    auto& tr = sub(&app, "transfer", "transfer", "transference ratios on random templates");
    str(tr, "--property", "property", "property id", true);
    nopt(tr);
    nums_list(tr, "--p", "p", "probability of adding colours, e.g. 0.5,0.8");
    num(tr, "--colour", "colour", "monotone colour");
    num(tr, "--trials", "trials", "templates per point");
    num(tr, "--eps", "eps", "band half-width");

    auto& ty = sub(&app, "typical", "typical", "edit distance of uniform members to a template family");
    str(ty, "--property", "property", "property id", true);
    nopt(ty);
    num(ty, "--samples", "samples", "samples per n");
    num(ty, "--threshold", "threshold", "fraction of e(G_n)");
    str(ty, "--family", "family", "constant-pairs or witnesses");

    auto& go = sub(&app, "goodness", "goodness", "embedding overlap statistics");
    str(go, "--kind", "kind", "host kind", true);
    num(go, "--N", "N", "pattern order");
    num(go, "--q", "q", "parts for multipartite hosts");
    nopt(go);

    auto* gr = app.add_subcommand("graphon", "step graphon tools");
    gr->require_subcommand(1);
    std::string ga, gb;
    auto& cd = sub(gr, "cutdist", "graphon.cutdist", "cut distance between two graphons");
    cd.app->add_option("a", ga, "graphon JSON")->required();
    cd.app->add_option("b", gb, "graphon JSON")->required();
    str(cd, "--metric", "metric", "dk or l1");
    auto& en = sub(gr, "entropy", "graphon.entropy", "graphon entropy");
    en.app->add_option("graphon", ga, "graphon JSON")->required();
    auto& wr = sub(gr, "weakreg", "graphon.weakreg", "weak regularity partition");
    wr.app->add_option("graphon", ga, "graphon JSON")->required();
    num(wr, "--m", "m", "classes");
    auto& sa = sub(gr, "sample", "graphon.sample", "sample G(n,W) or H(n,W)");
    sa.app->add_option("graphon", ga, "graphon JSON")->required();
    nopt(sa);
    str(sa, "--mode", "mode", "G or H");
    auto& hd = sub(gr, "homdensity", "graphon.homdensity", "homomorphism density t(F,W)");
    hd.app->add_option("graphon", ga, "graphon JSON")->required();
    hd.app->add_option("F", gb, "decorated graph JSON {v, edges:[[a,b,[w...]]]}")->required();
    auto& ct = sub(gr, "count", "graphon.count", "colourings within delta of W");
    ct.app->add_option("graphon", ga, "graphon JSON")->required();
    nopt(ct);
    num(ct, "--delta", "delta", "radius");
    str(ct, "--metric", "metric", "dk or deltak");

    std::string spec_path;
    auto* rn = app.add_subcommand("run", "run an experiment spec file");
    rn->add_option("spec", spec_path, "spec JSON")->required();
    rn->add_option("--out", out, "output file (default from spec, else stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    try {
        if (list) {
            for (const auto& id : mcc::builtin_ids()) {
                const auto& P = mcc::builtin(id);
                std::cout << id << "\t" << mcc::to_string(P.hosts.kind) << "\tk=" << P.k << "\t" << P.description << "\n";
            }
            return 0;
        }
        if (rn->parsed()) {
            auto s = mcc::parse_spec(spec_path);
            return finish(s, out);
        }
        for (auto& s : subs) {
            if (!s->app->parsed()) continue;
            json j;
            j["command"] = s->command;
            j["seed"] = seed;
            j["format"] = format;
            for (auto& [k, v] : s->strs) j[k] = v;
            for (auto& [k, v] : s->lists) j[k] = v;
            for (auto& [k, v] : s->nums) {
                if (v == std::floor(v) && std::abs(v) < 9e15) j[k] = static_cast<std::int64_t>(v);
                else j[k] = v;
            }
            for (auto& [k, v] : s->flags) j[k] = v;
            j.erase("exact");
            if (!s->n.empty()) {
                if (s->n.find(',') != std::string::npos) {
                    json arr = json::array();
                    std::stringstream ss(s->n);
                    for (std::string t; std::getline(ss, t, ',');) arr.push_back(std::stoi(t));
                    j["n"] = arr;
                } else {
                    j["n"] = s->n;
                }
            }
            if (s->command == "badpairs" && j.contains("template")) j["template"] = mcc::read_json_file(j["template"].get<std::string>());
            if (s->command == "graphon.cutdist") {
                j["a"] = ga;
                j["b"] = gb;
            } else if (s->command.rfind("graphon.", 0) == 0) {
                j["graphon"] = ga;
            }
            if (s->command == "graphon.homdensity") j["F"] = mcc::read_json_file(gb);
            return finish(mcc::parse_spec_json(j), out);
        }
        std::cerr << app.help();
        return 4;
    } catch (const mcc::spec_error& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
