#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace epiq {

enum class Sort { Q, M };

enum class Op {
    Top,
    Bot,
    One,    // Q only
    Var,    // name = variable
    Fact,   // M only, name = fact
    Seq,    // Q: a * b
    LRes,   // Q: a \ b
    RRes,   // Q: a / b
    Or,
    And,
    App,    // name = agent, a = operand
    Box,    // name = agent, a = operand
    DynBox, // M: [a]b with a : Q, b : M
    Update, // M: a . b with a : M, b : Q
};

struct Formula;
using F = std::shared_ptr<const Formula>;

struct Formula {
    Op op;
    Sort sort;
    std::string name;
    F a;
    F b;
};

namespace fm {

F top(Sort s);
F bot(Sort s);
F one();
F var(Sort s, std::string name);
F fact(std::string name);
F seq(F a, F b);
F lres(F a, F b);
F rres(F a, F b);
F lor(F a, F b);
F land(F a, F b);
F app(std::string agent, F a);
F box(std::string agent, F a);
F dynbox(F q, F m);
F update(F m, F q);

} // namespace fm

bool equal(const F& x, const F& y);
std::size_t formula_size(const F& f);
std::size_t formula_depth(const F& f);
void subformulas(const F& f, std::vector<F>& out);

/// A context item: an agent name or a formula.
struct Item {
    bool is_agent = false;
    std::string agent;
    F f;

    static Item of_agent(std::string name) { return {true, std::move(name), nullptr}; }
    static Item of(F f) { return {false, {}, std::move(f)}; }

    [[nodiscard]] bool is_q() const { return !is_agent && f->sort == Sort::Q; }
    [[nodiscard]] bool is_m() const { return !is_agent && f->sort == Sort::M; }
};

bool equal(const Item& x, const Item& y);
bool equal(const std::vector<Item>& x, const std::vector<Item>& y);

/// Gamma |-Q q or Gamma |-M m. An M-side empty right-hand side is stored as
/// bottom of sort M.
struct Sequent {
    Sort side = Sort::Q;
    std::vector<Item> ctx;
    F concl;
};

bool equal(const Sequent& x, const Sequent& y);

/// Throws std::invalid_argument when the sequent mixes sorts illegally.
void check_well_formed(const Sequent& s);

struct Signature {
    std::set<std::string> agents;
    std::set<std::string> facts;
    std::set<std::string> qvars;
    std::set<std::string> mvars;

    [[nodiscard]] bool empty() const { return agents.empty() && facts.empty() && qvars.empty() && mvars.empty(); }
    void merge(const Signature& other);
};

/// Names used by a formula or sequent.
void collect_signature(const F& f, Signature& sig);
void collect_signature(const Sequent& s, Signature& sig);

std::string print(const F& f);
std::string print(const Item& it, Sort side);
std::string print(const Sequent& s);

} // namespace epiq
