#include "epiq/formula.hpp"

#include <stdexcept>

namespace epiq {

namespace fm {

namespace {

F make(Op op, Sort s, std::string name = {}, F a = nullptr, F b = nullptr)
{
    return std::make_shared<const Formula>(Formula{op, s, std::move(name), std::move(a), std::move(b)});
}

void expect(const F& f, Sort s, const char* what)
{
    if (!f)
        throw std::invalid_argument(std::string(what) + ": missing operand");
    if (f->sort != s)
        throw std::invalid_argument(std::string(what) + ": operand of the wrong sort");
}

} // namespace

F top(Sort s) { return make(Op::Top, s); }
F bot(Sort s) { return make(Op::Bot, s); }
F one() { return make(Op::One, Sort::Q); }
F var(Sort s, std::string name) { return make(Op::Var, s, std::move(name)); }
F fact(std::string name) { return make(Op::Fact, Sort::M, std::move(name)); }

F seq(F a, F b)
{
    expect(a, Sort::Q, "*");
    expect(b, Sort::Q, "*");
    return make(Op::Seq, Sort::Q, {}, std::move(a), std::move(b));
}

F lres(F a, F b)
{
    expect(a, Sort::Q, "\\");
    expect(b, Sort::Q, "\\");
    return make(Op::LRes, Sort::Q, {}, std::move(a), std::move(b));
}

F rres(F a, F b)
{
    expect(a, Sort::Q, "/");
    expect(b, Sort::Q, "/");
    return make(Op::RRes, Sort::Q, {}, std::move(a), std::move(b));
}

F lor(F a, F b)
{
    if (!a || !b || a->sort != b->sort)
        throw std::invalid_argument("|: operands of different sorts");
    const Sort s = a->sort;
    return make(Op::Or, s, {}, std::move(a), std::move(b));
}

F land(F a, F b)
{
    if (!a || !b || a->sort != b->sort)
        throw std::invalid_argument("&: operands of different sorts");
    const Sort s = a->sort;
    return make(Op::And, s, {}, std::move(a), std::move(b));
}

F app(std::string agent, F a)
{
    if (!a)
        throw std::invalid_argument("appearance: missing operand");
    const Sort s = a->sort;
    return make(Op::App, s, std::move(agent), std::move(a));
}

F box(std::string agent, F a)
{
    if (!a)
        throw std::invalid_argument("box: missing operand");
    const Sort s = a->sort;
    return make(Op::Box, s, std::move(agent), std::move(a));
}

F dynbox(F q, F m)
{
    expect(q, Sort::Q, "[q]m");
    expect(m, Sort::M, "[q]m");
    return make(Op::DynBox, Sort::M, {}, std::move(q), std::move(m));
}

F update(F m, F q)
{
    expect(m, Sort::M, "m . q");
    expect(q, Sort::Q, "m . q");
    return make(Op::Update, Sort::M, {}, std::move(m), std::move(q));
}

} // namespace fm

bool equal(const F& x, const F& y)
{
    if (x == y)
        return true;
    if (!x || !y)
        return false;
    return x->op == y->op && x->sort == y->sort && x->name == y->name && equal(x->a, y->a) && equal(x->b, y->b);
}

std::size_t formula_size(const F& f)
{
    if (!f)
        return 0;
    return 1 + formula_size(f->a) + formula_size(f->b);
}

std::size_t formula_depth(const F& f)
{
    if (!f)
        return 0;
    return 1 + std::max(formula_depth(f->a), formula_depth(f->b));
}

void subformulas(const F& f, std::vector<F>& out)
{
    if (!f)
        return;
    for (const F& g : out)
        if (equal(g, f))
            goto children;
    out.push_back(f);
children:
    subformulas(f->a, out);
    subformulas(f->b, out);
}

bool equal(const Item& x, const Item& y)
{
    if (x.is_agent != y.is_agent)
        return false;
    return x.is_agent ? x.agent == y.agent : equal(x.f, y.f);
}

bool equal(const std::vector<Item>& x, const std::vector<Item>& y)
{
    if (x.size() != y.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!equal(x[i], y[i]))
            return false;
    return true;
}

bool equal(const Sequent& x, const Sequent& y)
{
    return x.side == y.side && equal(x.ctx, y.ctx) && equal(x.concl, y.concl);
}

void check_well_formed(const Sequent& s)
{
    if (!s.concl)
        throw std::invalid_argument("sequent without conclusion");
    if (s.concl->sort != s.side)
        throw std::invalid_argument("conclusion sort does not match the turnstile");
    for (const Item& it : s.ctx) {
        if (it.is_agent) {
            if (it.agent.empty())
                throw std::invalid_argument("empty agent name");
            continue;
        }
        if (!it.f)
            throw std::invalid_argument("empty context item");
        if (s.side == Sort::Q && it.f->sort == Sort::M)
            throw std::invalid_argument("proposition in the context of a Q-sequent");
    }
}

void Signature::merge(const Signature& o)
{
    agents.insert(o.agents.begin(), o.agents.end());
    facts.insert(o.facts.begin(), o.facts.end());
    qvars.insert(o.qvars.begin(), o.qvars.end());
    mvars.insert(o.mvars.begin(), o.mvars.end());
}

void collect_signature(const F& f, Signature& sig)
{
    if (!f)
        return;
    switch (f->op) {
    case Op::Var:
        (f->sort == Sort::Q ? sig.qvars : sig.mvars).insert(f->name);
        break;
    case Op::Fact:
        sig.facts.insert(f->name);
        break;
    case Op::App:
    case Op::Box:
        sig.agents.insert(f->name);
        break;
    default:
        break;
    }
    collect_signature(f->a, sig);
    collect_signature(f->b, sig);
}

void collect_signature(const Sequent& s, Signature& sig)
{
    for (const Item& it : s.ctx) {
        if (it.is_agent)
            sig.agents.insert(it.agent);
        else
            collect_signature(it.f, sig);
    }
    collect_signature(s.concl, sig);
}

// ---------------------------------------------------------------------------
// Printing. Levels: 0 residuals, 1 '|', 2 '&', 3 '*' and '.', 4 unary/atoms.

namespace {

int level(const F& f)
{
    switch (f->op) {
    case Op::LRes:
    case Op::RRes:
        return 0;
    case Op::Or:
        return 1;
    case Op::And:
        return 2;
    case Op::Seq:
    case Op::Update:
        return 3;
    default:
        return 4;
    }
}

const char* infix(Op op)
{
    switch (op) {
    case Op::LRes:
        return " \\ ";
    case Op::RRes:
        return " / ";
    case Op::Or:
        return " | ";
    case Op::And:
        return " & ";
    case Op::Seq:
        return " * ";
    case Op::Update:
        return " . ";
    default:
        return "";
    }
}

void emit(const F& f, std::string& out, bool mark_q);

void emit_operand(const F& f, int min_level, std::string& out, bool mark_q)
{
    if (level(f) < min_level) {
        out += '(';
        emit(f, out, mark_q);
        out += ')';
    } else {
        emit(f, out, mark_q);
    }
}

// With mark_q set, Q-sorted top/bot print as topQ/botQ so that a Q item in
// an M context reparses with the same sort.
void emit(const F& f, std::string& out, bool mark_q)
{
    switch (f->op) {
    case Op::Top:
        out += (mark_q && f->sort == Sort::Q) ? "topQ" : "top";
        return;
    case Op::Bot:
        out += (mark_q && f->sort == Sort::Q) ? "botQ" : "bot";
        return;
    case Op::One:
        out += "1";
        return;
    case Op::Var:
        out += f->name;
        return;
    case Op::Fact:
        out += "#" + f->name;
        return;
    case Op::App:
    case Op::Box:
        out += f->op == Op::App ? "f" : "box";
        out += f->sort == Sort::Q ? "Q[" : "M[";
        out += f->name + "](";
        emit(f->a, out, mark_q);
        out += ')';
        return;
    case Op::DynBox:
        out += '[';
        emit(f->a, out, true);
        out += ']';
        emit_operand(f->b, 4, out, mark_q);
        return;
    default: {
        const int lv = level(f);
        emit_operand(f->a, lv, out, mark_q);
        out += infix(f->op);
        // The right operand of '.' is a Q formula.
        emit_operand(f->b, lv + 1, out, mark_q || f->op == Op::Update);
        return;
    }
    }
}

} // namespace

std::string print(const F& f)
{
    std::string out;
    emit(f, out, false);
    return out;
}

std::string print(const Item& it, Sort side)
{
    if (it.is_agent)
        return "@" + it.agent;
    std::string out;
    emit(it.f, out, side == Sort::M && it.f->sort == Sort::Q);
    return out;
}

std::string print(const Sequent& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.ctx.size(); ++i) {
        if (i)
            out += ", ";
        out += print(s.ctx[i], s.side);
    }
    if (!out.empty())
        out += ' ';
    out += s.side == Sort::Q ? "|-Q " : "|-M ";
    out += print(s.concl);
    return out;
}

} // namespace epiq
