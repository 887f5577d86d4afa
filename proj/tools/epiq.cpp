// epiq: validation, model checking, proof checking, proof search and
// scenario generation for epistemic systems.

#include "epiq/json_io.hpp"
#include "epiq/parser.hpp"
#include "epiq/scenarios.hpp"
#include "epiq/search.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

using namespace epiq;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

struct Options {
    std::string format = "json";
    std::string out;
};

class Usage : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const Options& opt, const Json& report, const std::string& summary)
{
    if (opt.format == "pretty") {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << report.dump() << "\n";
    }
    std::cerr << summary << "\n";
}

struct Loaded {
    std::shared_ptr<const EpistemicSystem> sys;
    std::optional<Environment> env;
};

Loaded load_system(const std::string& system_path, const std::string& bindings_path)
{
    Loaded l;
    l.sys = system_from_json(read_json_file(system_path));
    if (!bindings_path.empty())
        l.env.emplace(environment_from_json(l.sys, read_json_file(bindings_path)));
    return l;
}

AssumptionBase load_base(const std::string& path)
{
    if (path.empty())
        return {};
    return base_from_json(read_json_file(path));
}

int cmd_validate(const Options& opt, const std::string& system_path)
{
    const auto sys = system_from_json(read_json_file(system_path));
    const ValidationReport laws = validate_system(*sys);
    const ValidationReport adj = check_adjunctions(*sys);
    const BmsConditions bms = check_bms_conditions(*sys);
    Json j;
    j["command"] = "validate";
    j["ok"] = laws.ok() && adj.ok();
    j["laws"] = report_to_json(laws);
    j["adjunctions"] = report_to_json(adj);
    j["bms_conditions"] = Json{{"boolean_carriers", bms.boolean_carriers},
                               {"update_of_atoms", bms.update_of_atoms},
                               {"compose_of_atoms", bms.compose_of_atoms},
                               {"no_zero_divisors", bms.no_zero_divisors},
                               {"witnesses", bms.witnesses}};
    std::string summary;
    if (laws.ok() && adj.ok()) {
        summary = "valid: " + std::to_string(laws.checks + adj.checks) + " checks";
    } else {
        const auto& v = laws.ok() ? adj.violations.front() : laws.violations.front();
        summary = "invalid: " + v.law + " fails at " + v.witness;
    }
    emit(opt, j, summary);
    return laws.ok() && adj.ok() ? kOk : kFailed;
}

int cmd_mc(const Options& opt, const std::string& text, const std::string& system_path,
           const std::string& bindings_path)
{
    Loaded l = load_system(system_path, bindings_path);
    if (!l.env)
        throw Usage("mc needs a bindings file");
    const Sequent s = parse_sequent(text, l.env->signature());
    const bool ok = holds(*l.env, s);
    const Element lhs = s.side == Sort::Q ? fold_q(*l.env, s.ctx) : fold_m(*l.env, s.ctx);
    const Element rhs = eval(*l.env, s.concl);
    const Lattice& lat = s.side == Sort::Q ? l.sys->Q() : l.sys->M();
    Json j;
    j["command"] = "mc";
    j["sequent"] = print(s);
    j["holds"] = ok;
    j["context_value"] = element_to_json(lat, lhs);
    j["conclusion_value"] = element_to_json(lat, rhs);
    emit(opt, j, std::string(ok ? "holds: " : "fails: ") + print(s));
    return ok ? kOk : kFailed;
}

int cmd_check(const Options& opt, const std::string& proof_path, const std::string& base_path)
{
    const AssumptionBase base = load_base(base_path);
    const ProofTree tree = proof_from_json(read_json_file(proof_path), base.signature);
    const auto v = check_proof(tree, base);
    Json j;
    j["command"] = "check";
    j["ok"] = !v.has_value();
    j["sequent"] = print(tree.conclusion);
    j["size"] = proof_size(tree);
    j["depth"] = proof_depth(tree);
    if (v) {
        j["violation"] = Json{{"path", v->path}, {"rule", v->rule}, {"sequent", v->sequent}, {"message", v->message}};
        emit(opt, j, "rejected " + v->describe());
        return kFailed;
    }
    emit(opt, j, "proof ok: " + std::to_string(proof_size(tree)) + " nodes, depth " +
                     std::to_string(proof_depth(tree)));
    return kOk;
}

int cmd_prove(const Options& opt, const std::string& text, const std::string& base_path, std::size_t depth,
              const std::string& policy)
{
    const AssumptionBase base = load_base(base_path);
    const Sequent goal = parse_sequent(text, base.signature);
    SearchConfig cfg;
    cfg.max_depth = depth;
    cfg.cut_pool = policy == "none" ? CutPolicy::None : CutPolicy::Subformulas;
    const auto t0 = std::chrono::steady_clock::now();
    const SearchResult r = prove(goal, base, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Json j;
    j["command"] = "prove";
    j["sequent"] = print(goal);
    j["found"] = r.proof.has_value();
    j["stats"] = Json{{"nodes", r.stats.nodes},
                      {"depth_reached", r.stats.depth_reached},
                      {"node_limit_hit", r.stats.node_limit_hit}};
    if (!r.proof) {
        emit(opt, j, "no proof within depth " + std::to_string(depth) + " (" + std::to_string(r.stats.nodes) +
                         " nodes)");
        return kFailed;
    }
    Signature sig = base.signature;
    collect_signature(goal, sig);
    Json cert = proof_to_json(*r.proof);
    cert["signature"] = signature_to_json(sig);
    j["proof"] = cert;
    if (!opt.out.empty()) {
        std::filesystem::create_directories(opt.out);
        write_json_file((std::filesystem::path(opt.out) / "proof.json").string(), cert);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", secs);
    emit(opt, j, "proof found: depth " + std::to_string(proof_depth(*r.proof)) + ", " +
                     std::to_string(r.stats.nodes) + " nodes, " + buf + " s");
    return kOk;
}

Json scenario_document(const Scenario& sc, const AssumptionBase& base, const std::vector<std::string>& skipped)
{
    Json targets = Json::array();
    for (const auto& t : sc.targets)
        targets.push_back(Json{{"sequent", print(t.sequent)}, {"expected", t.expected}, {"note", t.note}});
    Json j;
    j["scenario"] = sc.name;
    j["horizon"] = sc.horizon;
    j["states"] = kripke_to_json(sc.states);
    j["actions"] = action_model_to_json(sc.actions, sc.states);
    j["system"] = system_to_json(*sc.compiled.system);
    j["bindings"] = bindings_to_json(*sc.compiled.env);
    j["state_classes"] = sc.compiled.state_names;
    j["word_classes"] = sc.compiled.word_names;
    j["targets"] = targets;
    j["base"] = base_to_json(base);
    if (!skipped.empty())
        j["skipped_axioms"] = skipped;
    return j;
}

int cmd_scenario(const Options& opt, const std::string& name, std::optional<std::size_t> n,
                 std::optional<std::size_t> k, std::optional<std::size_t> rounds)
{
    Scenario sc;
    if (name == "muddy") {
        if (!n || !k)
            throw Usage("muddy needs --n and --k");
        sc = muddy_scenario(*n, *k, rounds);
    } else if (name == "lying") {
        if (!n)
            throw Usage("lying needs --n");
        sc = lying_scenario(*n);
    } else if (name == "mitm") {
        sc = mitm_scenario();
    } else {
        throw Usage("unknown scenario " + name);
    }
    AssumptionBase base = sc.base;
    std::vector<std::string> skipped;
    if (base.empty()) {
        GeneratedBase g = axioms_of(*sc.compiled.env, sc.vocabulary);
        base = std::move(g.base);
        skipped = std::move(g.skipped);
    }
    Json doc = scenario_document(sc, base, skipped);
    if (!opt.out.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir(opt.out);
        fs::create_directories(dir);
        write_json_file((dir / "states.json").string(), doc["states"]);
        write_json_file((dir / "actions.json").string(), doc["actions"]);
        write_json_file((dir / "system.json").string(), doc["system"]);
        write_json_file((dir / "bindings.json").string(), doc["bindings"]);
        write_json_file((dir / "targets.json").string(), doc["targets"]);
        write_json_file((dir / "base.json").string(), doc["base"]);
    }
    std::size_t positives = 0;
    for (const auto& t : sc.targets)
        positives += t.expected ? 1 : 0;
    emit(opt, doc, "scenario " + sc.name + ": " + std::to_string(sc.compiled.state_names.size()) +
                       " state classes, " + std::to_string(sc.compiled.word_names.size()) + " word classes, " +
                       std::to_string(sc.targets.size()) + " targets (" + std::to_string(positives) +
                       " expected to hold)");
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"epiq: epistemic action algebra workbench"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "pretty"}));
    app.add_option("--out", opt.out, "directory for emitted files");

    std::string system_path, bindings_path, base_path, proof_path, text, name, policy = "subformulas";
    std::size_t depth = 10;
    std::optional<std::size_t> n, k, rounds;

    auto* validate = app.add_subcommand("validate", "check the laws of a system file");
    validate->add_option("system", system_path, "system JSON")->required()->check(CLI::ExistingFile);

    auto* mc = app.add_subcommand("mc", "evaluate a sequent in a system");
    mc->add_option("sequent", text, "sequent text")->required();
    mc->add_option("system", system_path, "system JSON")->required()->check(CLI::ExistingFile);
    mc->add_option("bindings", bindings_path, "bindings JSON")->required()->check(CLI::ExistingFile);

    auto* check = app.add_subcommand("check", "check a proof certificate");
    check->add_option("proof", proof_path, "certificate JSON")->required()->check(CLI::ExistingFile);
    check->add_option("--base", base_path, "assumption base JSON")->check(CLI::ExistingFile);

    auto* prove_cmd = app.add_subcommand("prove", "search for a proof");
    prove_cmd->add_option("sequent", text, "sequent text")->required();
    prove_cmd->add_option("--base", base_path, "assumption base JSON")->check(CLI::ExistingFile);
    prove_cmd->add_option("--depth", depth, "maximum proof depth")->capture_default_str();
    prove_cmd->add_option("--cut-pool", policy, "cut formulas")
        ->check(CLI::IsMember({"subformulas", "none"}))
        ->capture_default_str();

    auto* scenario = app.add_subcommand("scenario", "generate a scenario");
    scenario->add_option("name", name, "muddy, lying or mitm")
        ->required()
        ->check(CLI::IsMember({"muddy", "lying", "mitm"}));
    scenario->add_option("--n", n, "number of children");
    scenario->add_option("--k", k, "number of dirty children");
    scenario->add_option("--rounds", rounds, "rounds of q in positive targets");

    for (auto* sub : {validate, mc, check, prove_cmd, scenario}) {
        sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "pretty"}));
        sub->add_option("--out", opt.out, "directory for emitted files");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate)
            return cmd_validate(opt, system_path);
        if (*mc)
            return cmd_mc(opt, text, system_path, bindings_path);
        if (*check)
            return cmd_check(opt, proof_path, base_path);
        if (*prove_cmd)
            return cmd_prove(opt, text, base_path, depth, policy);
        if (*scenario)
            return cmd_scenario(opt, name, n, k, rounds);
    } catch (const HorizonExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
