#include "epiq/epistemic_system.hpp"

#include <bit>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace epiq {

BinaryOp BinaryOp::from_table(LatticePtr left, LatticePtr right, LatticePtr out, std::vector<Element> table)
{
    if (!left->enumerable() || !right->enumerable())
        throw LatticeError("cannot tabulate an operation over a non-enumerable lattice");
    if (table.size() != left->size() * right->size())
        throw LatticeError("operation table has " + std::to_string(table.size()) + " entries, expected " +
                           std::to_string(left->size() * right->size()));
    for (Element z : table)
        out->check_element(z);
    BinaryOp op;
    op.left_ = std::move(left);
    op.right_ = std::move(right);
    op.out_ = std::move(out);
    op.table_ = std::move(table);
    return op;
}

BinaryOp BinaryOp::from_atoms(LatticePtr left, LatticePtr right, LatticePtr out, std::vector<Element> atom_table)
{
    if (!left->is_powerset() || !right->is_powerset())
        throw LatticeError("atomic operations need powerset arguments");
    if (atom_table.size() != left->atom_count() * right->atom_count())
        throw LatticeError("atomic operation table size mismatch");
    for (Element z : atom_table)
        out->check_element(z);
    BinaryOp op;
    op.left_ = std::move(left);
    op.right_ = std::move(right);
    op.out_ = std::move(out);
    op.atomic_ = true;
    op.table_ = std::move(atom_table);
    return op;
}

Element BinaryOp::operator()(Element x, Element y) const
{
    if (!atomic_)
        return table_.at(x * right_->size() + y);
    const std::size_t cols = right_->atom_count();
    Element acc = out_->bottom();
    for (Element xs = x; xs != 0; xs &= xs - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(xs));
        for (Element ys = y; ys != 0; ys &= ys - 1) {
            const auto j = static_cast<std::size_t>(std::countr_zero(ys));
            acc = out_->join(acc, table_[i * cols + j]);
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------

EpistemicSystem::EpistemicSystem(LatticePtr module, LatticePtr quantale, BinaryOp mult, Element unit, BinaryOp act,
                                 std::vector<std::string> agents, std::vector<LatticeMap> app_m,
                                 std::vector<LatticeMap> app_q)
    : m_(std::move(module))
    , q_(std::move(quantale))
    , mult_(std::move(mult))
    , unit_(unit)
    , act_(std::move(act))
    , agents_(std::move(agents))
    , app_m_(std::move(app_m))
    , app_q_(std::move(app_q))
{
    q_->check_element(unit_);
    if (&mult_.left() != q_.get() || &mult_.right() != q_.get() || &mult_.out() != q_.get())
        throw LatticeError("multiplication must be Q x Q -> Q");
    if (&act_.left() != m_.get() || &act_.right() != q_.get() || &act_.out() != m_.get())
        throw LatticeError("action must be M x Q -> M");
    if (app_m_.size() != agents_.size() || app_q_.size() != agents_.size())
        throw LatticeError("one appearance map pair is required per agent");
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (agents_[i] == agents_[j])
                throw LatticeError("duplicate agent " + agents_[i]);
        if (&app_m_[i].source() != m_.get() || &app_m_[i].target() != m_.get())
            throw LatticeError("appM(" + agents_[i] + ") must be an endomap of M");
        if (&app_q_[i].source() != q_.get() || &app_q_[i].target() != q_.get())
            throw LatticeError("appQ(" + agents_[i] + ") must be an endomap of Q");
    }
}

std::optional<std::size_t> EpistemicSystem::find_agent(const std::string& name) const
{
    for (std::size_t i = 0; i < agents_.size(); ++i)
        if (agents_[i] == name)
            return i;
    return std::nullopt;
}

std::size_t EpistemicSystem::agent(const std::string& name) const
{
    if (auto i = find_agent(name))
        return *i;
    throw std::out_of_range("unknown agent " + name);
}

Element EpistemicSystem::box_m(std::size_t a, Element m) const
{
    const auto& f = app_m_.at(a);
    return greatest_satisfying(*m_, [&](Element x) { return m_->leq(f(x), m); });
}

Element EpistemicSystem::box_q(std::size_t a, Element q) const
{
    const auto& f = app_q_.at(a);
    return greatest_satisfying(*q_, [&](Element x) { return q_->leq(f(x), q); });
}

Element EpistemicSystem::dyn_box(Element q, Element m) const
{
    return greatest_satisfying(*m_, [&](Element x) { return m_->leq(act_(x, q), m); });
}

Element EpistemicSystem::co_residual(Element m, Element m2) const
{
    return greatest_satisfying(*q_, [&](Element x) { return m_->leq(act_(m, x), m2); });
}

Element EpistemicSystem::left_residual(Element a, Element b) const
{
    return greatest_satisfying(*q_, [&](Element c) { return q_->leq(mult_(a, c), b); });
}

Element EpistemicSystem::right_residual(Element b, Element a) const
{
    return greatest_satisfying(*q_, [&](Element c) { return q_->leq(mult_(c, a), b); });
}

Element EpistemicSystem::kernel_generator(Element q) const
{
    return dyn_box(q, m_->bottom());
}

std::vector<Element> EpistemicSystem::kernel(Element q) const
{
    std::vector<Element> out;
    for (Element m : m_->elements())
        if (act_(m, q) == m_->bottom())
            out.push_back(m);
    return out;
}

bool EpistemicSystem::is_stable(Element phi) const
{
    for (Element q : q_generators())
        if (!m_->leq(act_(phi, q), phi))
            return false;
    return true;
}

std::vector<Element> EpistemicSystem::stabilizer() const
{
    std::vector<Element> out;
    for (Element m : m_->elements())
        if (is_stable(m))
            out.push_back(m);
    return out;
}

std::vector<Element> EpistemicSystem::q_generators() const
{
    return q_->is_powerset() ? q_->atoms() : q_->elements();
}

std::vector<Element> EpistemicSystem::m_generators() const
{
    return m_->is_powerset() ? m_->atoms() : m_->elements();
}

// ---------------------------------------------------------------------------

namespace {

class Reporter {
public:
    Reporter(ValidationReport& report, std::size_t cap)
        : report_(report)
        , cap_(cap)
    {
    }

    bool check(bool ok, const std::string& law, const std::function<std::string()>& witness)
    {
        ++report_.checks;
        if (ok)
            return true;
        auto& n = counts_[law];
        if (n++ < cap_)
            report_.violations.push_back({law, witness()});
        return false;
    }

private:
    ValidationReport& report_;
    std::size_t cap_;
    std::map<std::string, std::size_t> counts_;
};

std::string tuple(std::initializer_list<std::pair<const char*, std::string>> parts)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : parts) {
        os << (first ? "" : ", ") << k << "=" << v;
        first = false;
    }
    return os.str();
}

void check_map(Reporter& rep, const LatticeMap& f, const std::string& law)
{
    if (f.atomic())
        return;
    const Lattice& src = f.source();
    const Lattice& tgt = f.target();
    rep.check(f(src.bottom()) == tgt.bottom(), law, [&] { return tuple({{"x", src.label(src.bottom())}}); });
    for (Element a : src.elements())
        for (Element b : src.elements())
            if (b > a)
                rep.check(f(src.join(a, b)) == tgt.join(f(a), f(b)), law,
                          [&] { return tuple({{"x", src.label(a)}, {"y", src.label(b)}}); });
}

void check_op(Reporter& rep, const BinaryOp& op, const std::string& law)
{
    if (op.atomic())
        return;
    const Lattice& l = op.left();
    const Lattice& r = op.right();
    const Lattice& o = op.out();
    for (Element x : l.elements()) {
        rep.check(op(x, r.bottom()) == o.bottom(), law + " (right argument)",
                  [&] { return tuple({{"x", l.label(x)}, {"y", r.label(r.bottom())}}); });
        for (Element a : r.elements())
            for (Element b : r.elements())
                if (b > a)
                    rep.check(op(x, r.join(a, b)) == o.join(op(x, a), op(x, b)), law + " (right argument)",
                              [&] { return tuple({{"x", l.label(x)}, {"y1", r.label(a)}, {"y2", r.label(b)}}); });
    }
    for (Element y : r.elements()) {
        rep.check(op(l.bottom(), y) == o.bottom(), law + " (left argument)",
                  [&] { return tuple({{"x", l.label(l.bottom())}, {"y", r.label(y)}}); });
        for (Element a : l.elements())
            for (Element b : l.elements())
                if (b > a)
                    rep.check(op(l.join(a, b), y) == o.join(op(a, y), op(b, y)), law + " (left argument)",
                              [&] { return tuple({{"x1", l.label(a)}, {"x2", l.label(b)}, {"y", r.label(y)}}); });
    }
}

} // namespace

ValidationReport validate_system(const EpistemicSystem& sys, std::size_t max_witnesses_per_law)
{
    ValidationReport report;
    Reporter rep(report, max_witnesses_per_law);
    const Lattice& M = sys.M();
    const Lattice& Q = sys.Q();
    const auto qs = sys.q_generators();
    const auto ms = sys.m_generators();
    const Element one = sys.unit();

    check_op(rep, sys.mult(), "multiplication preserves joins");
    check_op(rep, sys.act(), "action preserves joins");

    for (Element a : qs) {
        rep.check(sys.compose(one, a) == a && sys.compose(a, one) == a, "unit law 1*q = q*1 = q",
                  [&] { return tuple({{"q", Q.label(a)}}); });
        for (Element b : qs)
            for (Element c : qs)
                rep.check(sys.compose(sys.compose(a, b), c) == sys.compose(a, sys.compose(b, c)),
                          "multiplication is associative",
                          [&] { return tuple({{"q1", Q.label(a)}, {"q2", Q.label(b)}, {"q3", Q.label(c)}}); });
    }
    for (Element m : ms) {
        rep.check(sys.update(m, one) == m, "m.1 = m", [&] { return tuple({{"m", M.label(m)}}); });
        for (Element a : qs)
            for (Element b : qs)
                rep.check(sys.update(m, sys.compose(a, b)) == sys.update(sys.update(m, a), b),
                          "m.(q1*q2) = (m.q1).q2",
                          [&] { return tuple({{"m", M.label(m)}, {"q1", Q.label(a)}, {"q2", Q.label(b)}}); });
    }

    for (std::size_t ag = 0; ag < sys.agents().size(); ++ag) {
        const std::string& name = sys.agents()[ag];
        check_map(rep, sys.app_m(ag), "appM(" + name + ") preserves joins");
        check_map(rep, sys.app_q(ag), "appQ(" + name + ") preserves joins");
        for (Element a : qs)
            for (Element b : qs)
                rep.check(Q.leq(sys.appear_q(ag, sys.compose(a, b)),
                                sys.compose(sys.appear_q(ag, a), sys.appear_q(ag, b))),
                          "eq1 f(q*q') <= f(q)*f(q')",
                          [&] { return tuple({{"agent", name}, {"q", Q.label(a)}, {"q'", Q.label(b)}}); });
        for (Element m : ms)
            for (Element a : qs)
                rep.check(M.leq(sys.appear_m(ag, sys.update(m, a)),
                                sys.update(sys.appear_m(ag, m), sys.appear_q(ag, a))),
                          "eq2 f(m.q) <= f(m).f(q)",
                          [&] { return tuple({{"agent", name}, {"m", M.label(m)}, {"q", Q.label(a)}}); });
        rep.check(Q.leq(one, sys.appear_q(ag, one)), "eq3 1 <= f(1)",
                  [&] { return tuple({{"agent", name}, {"q", Q.label(one)}}); });
    }
    return report;
}

std::optional<std::vector<std::pair<Element, Element>>> accessibility(const EpistemicSystem& sys, std::size_t agent)
{
    const Lattice& M = sys.M();
    if (!is_atomistic(M))
        return std::nullopt;
    std::vector<std::pair<Element, Element>> rel;
    const auto at = M.atoms();
    for (Element s : at) {
        const Element img = sys.appear_m(agent, s);
        for (Element t : at)
            if (M.leq(t, img))
                rel.emplace_back(s, t);
    }
    return rel;
}

namespace {

bool is_atom(const Lattice& lat, Element x)
{
    if (lat.is_powerset())
        return std::popcount(x) == 1;
    for (Element a : lat.atoms())
        if (a == x)
            return true;
    return false;
}

bool is_boolean_algebra(const Lattice& lat)
{
    if (lat.is_powerset())
        return true;
    if (!is_distributive(lat) || !is_atomistic(lat))
        return false;
    for (Element x : lat.elements())
        if (complements(lat, x).empty())
            return false;
    return true;
}

} // namespace

BmsConditions check_bms_conditions(const EpistemicSystem& sys)
{
    BmsConditions c;
    const Lattice& M = sys.M();
    const Lattice& Q = sys.Q();
    c.boolean_carriers = is_boolean_algebra(M) && is_boolean_algebra(Q);
    if (!c.boolean_carriers)
        c.witnesses.push_back("carrier is not an atomistic Boolean algebra");
    c.update_of_atoms = true;
    c.compose_of_atoms = true;
    c.no_zero_divisors = true;
    const auto mat = M.atoms();
    const auto qat = Q.atoms();
    for (Element m : mat)
        for (Element q : qat) {
            const Element r = sys.update(m, q);
            if (r != M.bottom() && !is_atom(M, r)) {
                if (c.update_of_atoms)
                    c.witnesses.push_back("atom update is neither bottom nor an atom: m=" + M.label(m) +
                                          ", q=" + Q.label(q));
                c.update_of_atoms = false;
            }
            if (r == M.bottom()) {
                if (c.no_zero_divisors)
                    c.witnesses.push_back("m.q = bottom with m, q nonzero: m=" + M.label(m) + ", q=" + Q.label(q));
                c.no_zero_divisors = false;
            }
        }
    for (Element a : qat)
        for (Element b : qat)
            if (!is_atom(Q, sys.compose(a, b))) {
                if (c.compose_of_atoms)
                    c.witnesses.push_back("atom composition is not an atom: q=" + Q.label(a) + ", q'=" + Q.label(b));
                c.compose_of_atoms = false;
            }
    return c;
}

ValidationReport check_adjunctions(const EpistemicSystem& sys, std::size_t samples, std::size_t max_witnesses_per_law)
{
    ValidationReport report;
    Reporter rep(report, max_witnesses_per_law);
    const Lattice& M = sys.M();
    const Lattice& Q = sys.Q();

    std::mt19937_64 rng(0x5eed);
    auto second_args = [&](const Lattice& lat) {
        if (lat.enumerable())
            return lat.elements();
        std::vector<Element> out{lat.bottom(), lat.top()};
        for (Element a : lat.atoms())
            out.push_back(a);
        for (std::size_t i = 0; i < samples; ++i)
            out.push_back(rng() & lat.top());
        return out;
    };
    const auto ms = sys.m_generators();
    const auto qs = sys.q_generators();
    const auto ms2 = second_args(M);
    const auto qs2 = second_args(Q);

    // Dynamic box and kernel, per action.
    for (Element q : qs) {
        const Element ker = sys.kernel_generator(q);
        for (Element m2 : ms2) {
            const Element box = sys.dyn_box(q, m2);
            for (Element m : ms)
                rep.check(M.leq(sys.update(m, q), m2) == M.leq(m, box), "m.q <= m' iff m <= [q]m'",
                          [&] { return tuple({{"m", M.label(m)}, {"q", Q.label(q)}, {"m'", M.label(m2)}}); });
        }
        rep.check(sys.update(ker, q) == M.bottom(), "join Ker(q) is in Ker(q)",
                  [&] { return tuple({{"q", Q.label(q)}}); });
        for (Element m : ms2)
            rep.check((sys.update(m, q) == M.bottom()) == M.leq(m, ker), "Ker(q) = down(join Ker(q))",
                      [&] { return tuple({{"q", Q.label(q)}, {"m", M.label(m)}}); });
        rep.check(sys.dyn_box(q, M.bottom()) == ker, "[q]bot = join Ker(q)",
                  [&] { return tuple({{"q", Q.label(q)}}); });
    }
    // Co-residual, per proposition.
    for (Element m : ms2)
        for (Element m2 : ms2) {
            const Element co = sys.co_residual(m, m2);
            for (Element q : qs)
                rep.check(M.leq(sys.update(m, q), m2) == Q.leq(q, co), "m.q <= m' iff q <= {m}m'",
                          [&] { return tuple({{"m", M.label(m)}, {"q", Q.label(q)}, {"m'", M.label(m2)}}); });
        }
    // Residuals of multiplication.
    for (Element a : qs2)
        for (Element b : qs2) {
            const Element lres = sys.left_residual(a, b);
            const Element rres = sys.right_residual(b, a);
            for (Element c : qs) {
                rep.check(Q.leq(sys.compose(a, c), b) == Q.leq(c, lres), "a*c <= b iff c <= a\\b",
                          [&] { return tuple({{"a", Q.label(a)}, {"b", Q.label(b)}, {"c", Q.label(c)}}); });
                rep.check(Q.leq(sys.compose(c, a), b) == Q.leq(c, rres), "c*a <= b iff c <= b/a",
                          [&] { return tuple({{"a", Q.label(a)}, {"b", Q.label(b)}, {"c", Q.label(c)}}); });
            }
        }
    return report;
}

} // namespace epiq
