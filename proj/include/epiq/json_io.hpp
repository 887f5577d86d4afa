#pragma once

#include "epiq/epistemic_system.hpp"
#include "epiq/kripke.hpp"
#include "epiq/proof.hpp"
#include "epiq/semantics.hpp"

#include "json.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace epiq {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Lattices: {"elements": [...], "leq": [[a, b], ...]} or
// {"powerset_of": n, "atoms": [...]}. Elements of an explicit lattice are
// written by label, elements of a powerset as arrays of atom labels (atom
// indices are accepted on input).
Json lattice_to_json(const Lattice& lat);
LatticePtr lattice_from_json(const Json& j);
Json element_to_json(const Lattice& lat, Element x);
Element element_from_json(const Lattice& lat, const Json& j);

// Systems: {"agents", "module", "quantale", "unit", "mult", "act", "appM",
// "appQ"}. Operation tables are indexed by atoms when both arguments are
// powersets and by elements in listed order otherwise; appearance maps list
// images of atoms (powersets) or of all elements.
Json system_to_json(const EpistemicSystem& sys);
std::shared_ptr<const EpistemicSystem> system_from_json(const Json& j);

// Bindings: {"qvals": {name: element}, "mvals": {...}, "facts": {...}}.
Json bindings_to_json(const Environment& env);
Environment environment_from_json(std::shared_ptr<const EpistemicSystem> sys, const Json& j);

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

// Bases: {"signature": {...}, "axioms": [{"kind": ..., "sequent": ...}]}.
Json base_to_json(const AssumptionBase& base);
AssumptionBase base_from_json(const Json& j);

// Certificates: {"sequent", "rule", "premises"} with an optional top-level
// "signature". Sequents are parsed with the union of that signature and
// `sig`; when both are empty, sorts are inferred jointly over the tree.
Json proof_to_json(const ProofTree& t);
ProofTree proof_from_json(const Json& j, const Signature& sig = {});

// Kripke models: {"agents", "states", "access": {A: [[s, s'], ...]},
// "valuation": {p: [s, ...]}} and action models {"actions", "access",
// "pre": {a: [s, ...]}, "kernel": {a: "formula"}}, all by name.
Json kripke_to_json(const KripkeStateModel& sm);
KripkeStateModel kripke_from_json(const Json& j);
Json action_model_to_json(const ActionModel& am, const KripkeStateModel& sm);
ActionModel action_model_from_json(const Json& j, const KripkeStateModel& sm);

Json report_to_json(const ValidationReport& r);

} // namespace epiq
