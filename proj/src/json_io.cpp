#include "epiq/json_io.hpp"

#include "epiq/parser.hpp"

#include <fstream>
#include <functional>

namespace epiq {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string as_string(const Json& j, const std::string& what)
{
    if (!j.is_string())
        throw FormatError(what + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const std::string& what)
{
    if (!j.is_array())
        throw FormatError(what + " must be an array");
    std::vector<std::string> out;
    for (const auto& x : j)
        out.push_back(as_string(x, what + " entry"));
    return out;
}

// Generators over which tables are written: atoms of powersets, all
// elements otherwise.
std::vector<Element> table_index(const Lattice& lat)
{
    return lat.is_powerset() ? lat.atoms() : lat.elements();
}

Json map_to_json(const LatticeMap& f)
{
    Json out = Json::array();
    for (Element x : table_index(f.source()))
        out.push_back(element_to_json(f.target(), f(x)));
    return out;
}

LatticeMap map_from_json(const LatticePtr& src, const LatticePtr& tgt, const Json& j, const std::string& what)
{
    const auto idx = table_index(*src);
    if (!j.is_array() || j.size() != idx.size())
        throw FormatError(what + " must list " + std::to_string(idx.size()) + " images");
    std::vector<Element> images;
    for (const auto& x : j)
        images.push_back(element_from_json(*tgt, x));
    if (src->is_powerset())
        return LatticeMap::from_atom_images(src, tgt, std::move(images));
    return LatticeMap::from_table(src, tgt, std::move(images));
}

Json op_to_json(const BinaryOp& op)
{
    const bool atoms = op.left().is_powerset() && op.right().is_powerset();
    const auto li = atoms ? op.left().atoms() : op.left().elements();
    const auto ri = atoms ? op.right().atoms() : op.right().elements();
    Json rows = Json::array();
    for (Element x : li) {
        Json row = Json::array();
        for (Element y : ri)
            row.push_back(element_to_json(op.out(), op(x, y)));
        rows.push_back(std::move(row));
    }
    return rows;
}

BinaryOp op_from_json(const LatticePtr& l, const LatticePtr& r, const LatticePtr& o, const Json& j,
                      const std::string& what)
{
    const bool atoms = l->is_powerset() && r->is_powerset();
    const auto li = atoms ? l->atoms() : l->elements();
    const auto ri = atoms ? r->atoms() : r->elements();
    if (!j.is_array() || j.size() != li.size())
        throw FormatError(what + " must have " + std::to_string(li.size()) + " rows");
    std::vector<Element> table;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != ri.size())
            throw FormatError(what + " rows must have " + std::to_string(ri.size()) + " entries");
        for (const auto& x : row)
            table.push_back(element_from_json(*o, x));
    }
    if (atoms)
        return BinaryOp::from_atoms(l, r, o, std::move(table));
    return BinaryOp::from_table(l, r, o, std::move(table));
}

Json value_map(const Lattice& lat, const std::map<std::string, Element>& m)
{
    Json out = Json::object();
    for (const auto& [k, v] : m)
        out[k] = element_to_json(lat, v);
    return out;
}

std::map<std::string, Element> value_map_from(const Lattice& lat, const Json& j, const char* key)
{
    std::map<std::string, Element> out;
    if (!j.contains(key))
        return out;
    const Json& m = j.at(key);
    if (!m.is_object())
        throw FormatError(std::string("\"") + key + "\" must be an object");
    for (const auto& [k, v] : m.items())
        out[k] = element_from_json(lat, v);
    return out;
}

void collect_texts(const Json& j, std::vector<std::string>& out)
{
    out.push_back(as_string(field(j, "sequent"), "certificate sequent"));
    if (j.contains("premises")) {
        const Json& ps = j.at("premises");
        if (!ps.is_array())
            throw FormatError("\"premises\" must be an array");
        for (const auto& p : ps)
            collect_texts(p, out);
    }
}

ProofTree build_tree(const Json& j, const std::vector<Sequent>& seqs, std::size_t& next)
{
    ProofTree t;
    t.conclusion = seqs.at(next++);
    const std::string name = as_string(field(j, "rule"), "certificate rule");
    auto r = rule_by_name(name, t.conclusion.side);
    if (!r)
        throw FormatError("unknown rule \"" + name + "\" for " + print(t.conclusion));
    t.rule = *r;
    if (j.contains("premises"))
        for (const auto& p : j.at("premises"))
            t.premises.push_back(build_tree(p, seqs, next));
    return t;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name, const std::string& what)
{
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return i;
    throw FormatError("unknown " + what + " \"" + name + "\"");
}

Relation relation_from(const Json& j, const std::vector<std::string>& names, const std::string& what)
{
    if (!j.is_array())
        throw FormatError(what + " must be an array of pairs");
    Relation r;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw FormatError(what + " must be an array of pairs");
        r.emplace_back(index_of(names, as_string(p[0], what), what), index_of(names, as_string(p[1], what), what));
    }
    return r;
}

Json relation_to(const Relation& r, const std::vector<std::string>& names)
{
    Json out = Json::array();
    for (const auto& [x, y] : r)
        out.push_back(Json::array({names[x], names[y]}));
    return out;
}

} // namespace

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot write " + path);
    out << j.dump(2) << "\n";
}

Json lattice_to_json(const Lattice& lat)
{
    if (lat.is_powerset())
        return Json{{"powerset_of", lat.atom_count()}, {"atoms", lat.atom_labels()}};
    Json leq = Json::array();
    const auto els = lat.elements();
    for (Element a : els)
        for (Element b : els) {
            if (a == b || !lat.leq(a, b))
                continue;
            bool cover = true;
            for (Element c : els)
                if (c != a && c != b && lat.leq(a, c) && lat.leq(c, b))
                    cover = false;
            if (cover)
                leq.push_back(Json::array({lat.label(a), lat.label(b)}));
        }
    return Json{{"elements", lat.labels()}, {"leq", leq}};
}

LatticePtr lattice_from_json(const Json& j)
{
    try {
        if (j.contains("powerset_of")) {
            const auto n = field(j, "powerset_of").get<std::size_t>();
            std::vector<std::string> labels;
            if (j.contains("atoms"))
                labels = string_list(j.at("atoms"), "\"atoms\"");
            return std::make_shared<const Lattice>(Lattice::powerset(n, std::move(labels)));
        }
        auto labels = string_list(field(j, "elements"), "\"elements\"");
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto& p : field(j, "leq")) {
            if (!p.is_array() || p.size() != 2)
                throw FormatError("\"leq\" must be an array of pairs");
            pairs.emplace_back(index_of(labels, as_string(p[0], "leq entry"), "element"),
                               index_of(labels, as_string(p[1], "leq entry"), "element"));
        }
        return std::make_shared<const Lattice>(Lattice::from_order(std::move(labels), pairs));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("lattice: ") + e.what());
    }
}

Json element_to_json(const Lattice& lat, Element x)
{
    if (!lat.is_powerset())
        return lat.label(x);
    Json out = Json::array();
    for (std::size_t i = 0; i < lat.atom_count(); ++i)
        if ((x >> i) & 1U)
            out.push_back(lat.atom_labels()[i]);
    return out;
}

Element element_from_json(const Lattice& lat, const Json& j)
{
    if (!lat.is_powerset()) {
        const std::string s = as_string(j, "element");
        auto e = lat.find(s);
        if (!e)
            throw FormatError("unknown element \"" + s + "\"");
        return *e;
    }
    if (!j.is_array())
        throw FormatError("powerset element must be an array of atoms");
    Element x = 0;
    for (const auto& a : j) {
        std::size_t i = 0;
        if (a.is_number_unsigned())
            i = a.get<std::size_t>();
        else
            i = index_of(lat.atom_labels(), as_string(a, "atom"), "atom");
        if (i >= lat.atom_count())
            throw FormatError("atom index " + std::to_string(i) + " out of range");
        x |= Element{1} << i;
    }
    return x;
}

Json system_to_json(const EpistemicSystem& sys)
{
    Json j;
    j["agents"] = sys.agents();
    j["module"] = lattice_to_json(sys.M());
    j["quantale"] = lattice_to_json(sys.Q());
    j["unit"] = element_to_json(sys.Q(), sys.unit());
    j["mult"] = op_to_json(sys.mult());
    j["act"] = op_to_json(sys.act());
    Json am = Json::object();
    Json aq = Json::object();
    for (std::size_t a = 0; a < sys.agents().size(); ++a) {
        am[sys.agents()[a]] = map_to_json(sys.app_m(a));
        aq[sys.agents()[a]] = map_to_json(sys.app_q(a));
    }
    j["appM"] = am;
    j["appQ"] = aq;
    return j;
}

std::shared_ptr<const EpistemicSystem> system_from_json(const Json& j)
{
    try {
        auto agents = string_list(field(j, "agents"), "\"agents\"");
        LatticePtr M = lattice_from_json(field(j, "module"));
        LatticePtr Q = lattice_from_json(field(j, "quantale"));
        const Element unit = element_from_json(*Q, field(j, "unit"));
        BinaryOp mult = op_from_json(Q, Q, Q, field(j, "mult"), "\"mult\"");
        BinaryOp act = op_from_json(M, Q, M, field(j, "act"), "\"act\"");
        std::vector<LatticeMap> app_m;
        std::vector<LatticeMap> app_q;
        for (const auto& a : agents) {
            app_m.push_back(map_from_json(M, M, field(field(j, "appM"), a.c_str()), "appM of " + a));
            app_q.push_back(map_from_json(Q, Q, field(field(j, "appQ"), a.c_str()), "appQ of " + a));
        }
        return std::make_shared<const EpistemicSystem>(M, Q, std::move(mult), unit, std::move(act), std::move(agents),
                                                       std::move(app_m), std::move(app_q));
    } catch (const LatticeError& e) {
        throw FormatError(e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("system: ") + e.what());
    }
}

Json bindings_to_json(const Environment& env)
{
    return Json{{"qvals", value_map(env.system().Q(), env.qvals())},
                {"mvals", value_map(env.system().M(), env.mvals())},
                {"facts", value_map(env.system().M(), env.facts())}};
}

Environment environment_from_json(std::shared_ptr<const EpistemicSystem> sys, const Json& j)
{
    auto q = value_map_from(sys->Q(), j, "qvals");
    auto m = value_map_from(sys->M(), j, "mvals");
    auto f = value_map_from(sys->M(), j, "facts");
    return Environment(std::move(sys), std::move(q), std::move(m), std::move(f));
}

Json signature_to_json(const Signature& sig)
{
    return Json{{"agents", sig.agents}, {"facts", sig.facts}, {"qvars", sig.qvars}, {"mvars", sig.mvars}};
}

Signature signature_from_json(const Json& j)
{
    Signature sig;
    auto read = [&](const char* key, std::set<std::string>& out) {
        if (j.contains(key))
            for (const auto& s : string_list(j.at(key), std::string("\"") + key + "\""))
                out.insert(s);
    };
    read("agents", sig.agents);
    read("facts", sig.facts);
    read("qvars", sig.qvars);
    read("mvars", sig.mvars);
    return sig;
}

Json base_to_json(const AssumptionBase& base)
{
    Json axioms = Json::array();
    for (const Axiom& ax : base.axioms())
        axioms.push_back(Json{{"kind", axiom_kind_name(ax.kind)}, {"sequent", print(ax.seq)}});
    return Json{{"signature", signature_to_json(base.signature)}, {"axioms", axioms}};
}

AssumptionBase base_from_json(const Json& j)
{
    AssumptionBase base;
    if (j.contains("signature"))
        base.signature = signature_from_json(j.at("signature"));
    const Json empty = Json::array();
    const Json& axioms = j.contains("axioms") ? j.at("axioms") : empty;
    if (!axioms.is_array())
        throw FormatError("\"axioms\" must be an array");
    std::vector<std::string> texts;
    std::vector<AxiomKind> kinds;
    for (const auto& a : axioms) {
        const std::string k = as_string(field(a, "kind"), "axiom kind");
        auto kind = axiom_kind_by_name(k);
        if (!kind)
            throw FormatError("unknown axiom kind \"" + k + "\"");
        kinds.push_back(*kind);
        texts.push_back(as_string(field(a, "sequent"), "axiom sequent"));
    }
    const auto seqs = parse_sequents(texts, base.signature);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        try {
            base.add(kinds[i], seqs[i]);
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    if (base.signature.empty())
        for (const auto& s : seqs)
            collect_signature(s, base.signature);
    return base;
}

Json proof_to_json(const ProofTree& t)
{
    Json ps = Json::array();
    for (const auto& p : t.premises)
        ps.push_back(proof_to_json(p));
    return Json{{"sequent", print(t.conclusion)}, {"rule", rule_name(t.rule)}, {"premises", ps}};
}

ProofTree proof_from_json(const Json& j, const Signature& sig)
{
    Signature s = sig;
    if (j.contains("signature"))
        s.merge(signature_from_json(j.at("signature")));
    std::vector<std::string> texts;
    collect_texts(j, texts);
    const auto seqs = parse_sequents(texts, s);
    std::size_t next = 0;
    return build_tree(j, seqs, next);
}

Json kripke_to_json(const KripkeStateModel& sm)
{
    Json access = Json::object();
    for (const auto& [a, r] : sm.access)
        access[a] = relation_to(r, sm.states);
    Json val = Json::object();
    for (const auto& [p, s] : sm.valuation) {
        Json xs = Json::array();
        for (std::size_t i : s)
            xs.push_back(sm.states[i]);
        val[p] = xs;
    }
    return Json{{"agents", sm.agents}, {"states", sm.states}, {"access", access}, {"valuation", val}};
}

KripkeStateModel kripke_from_json(const Json& j)
{
    KripkeStateModel sm;
    sm.states = string_list(field(j, "states"), "\"states\"");
    const Json& access = field(j, "access");
    if (!access.is_object())
        throw FormatError("\"access\" must be an object");
    if (j.contains("agents"))
        sm.agents = string_list(j.at("agents"), "\"agents\"");
    else
        for (const auto& [a, _] : access.items())
            sm.agents.push_back(a);
    for (const auto& [a, r] : access.items())
        sm.access[a] = relation_from(r, sm.states, "state");
    if (j.contains("valuation"))
        for (const auto& [p, xs] : j.at("valuation").items()) {
            auto& set = sm.valuation[p];
            for (const auto& x : string_list(xs, "valuation of " + p))
                set.insert(index_of(sm.states, x, "state"));
        }
    return sm;
}

Json action_model_to_json(const ActionModel& am, const KripkeStateModel& sm)
{
    Json access = Json::object();
    for (const auto& [a, r] : am.access)
        access[a] = relation_to(r, am.actions);
    Json pre = Json::object();
    Json kernel = Json::object();
    for (std::size_t i = 0; i < am.actions.size(); ++i) {
        Json xs = Json::array();
        for (std::size_t s : am.pre[i])
            xs.push_back(sm.states[s]);
        pre[am.actions[i]] = xs;
        if (i < am.kernel.size() && am.kernel[i])
            kernel[am.actions[i]] = print(am.kernel[i]);
    }
    return Json{{"actions", am.actions}, {"access", access}, {"pre", pre}, {"kernel", kernel}};
}

ActionModel action_model_from_json(const Json& j, const KripkeStateModel& sm)
{
    ActionModel am;
    am.actions = string_list(field(j, "actions"), "\"actions\"");
    const Json& access = field(j, "access");
    if (!access.is_object())
        throw FormatError("\"access\" must be an object");
    for (const auto& [a, r] : access.items())
        am.access[a] = relation_from(r, am.actions, "action");
    const Json& pre = field(j, "pre");
    for (const auto& a : am.actions) {
        if (!pre.contains(a))
            throw FormatError("missing precondition of action " + a);
        std::set<std::size_t> s;
        for (const auto& x : string_list(pre.at(a), "precondition of " + a))
            s.insert(index_of(sm.states, x, "state"));
        am.pre.push_back(std::move(s));
    }
    if (j.contains("kernel") && !j.at("kernel").empty()) {
        Signature sig;
        sig.agents.insert(sm.agents.begin(), sm.agents.end());
        for (const auto& kv : sm.valuation)
            sig.facts.insert(kv.first);
        am.kernel.assign(am.actions.size(), nullptr);
        for (const auto& [a, text] : j.at("kernel").items())
            am.kernel[index_of(am.actions, a, "action")] = parse_m(as_string(text, "kernel of " + a), sig);
    }
    return am;
}

Json report_to_json(const ValidationReport& r)
{
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back(Json{{"law", x.law}, {"witness", x.witness}});
    return Json{{"ok", r.ok()}, {"checks", r.checks}, {"violations", v}};
}

} // namespace epiq
