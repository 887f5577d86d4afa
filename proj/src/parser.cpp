#include "epiq/parser.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <optional>

namespace epiq {

namespace {

enum class Tok {
    Ident,
    Fact,
    Agent,
    One,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Star,
    Backslash,
    Slash,
    Bar,
    Amp,
    Dot,
    TurnQ,
    TurnM,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident = [&](std::size_t start) {
        std::size_t j = start;
        while (j < s.size() && ident_char(s[j]))
            ++j;
        return j;
    };
    while (i < s.size()) {
        const char c = s[i];
        const std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (ident_start(c)) {
            const std::size_t j = ident(i);
            out.push_back({Tok::Ident, s.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (c == '#' || c == '@') {
            if (i + 1 >= s.size() || !ident_start(s[i + 1]))
                throw ParseError(col, std::string("expected a name after '") + c + "'");
            const std::size_t j = ident(i + 1);
            out.push_back({c == '#' ? Tok::Fact : Tok::Agent, s.substr(i + 1, j - i - 1), col});
            i = j;
            continue;
        }
        if (c == '|' && i + 1 < s.size() && s[i + 1] == '-') {
            if (i + 2 < s.size() && (s[i + 2] == 'Q' || s[i + 2] == 'M') &&
                (i + 3 >= s.size() || !ident_char(s[i + 3]))) {
                out.push_back({s[i + 2] == 'Q' ? Tok::TurnQ : Tok::TurnM, s.substr(i, 3), col});
                i += 3;
                continue;
            }
            throw ParseError(col, "turnstile must be |-Q or |-M");
        }
        Tok k;
        switch (c) {
        case '1':
            if (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))
                throw ParseError(col, "unexpected number");
            k = Tok::One;
            break;
        case '(':
            k = Tok::LParen;
            break;
        case ')':
            k = Tok::RParen;
            break;
        case '[':
            k = Tok::LBrack;
            break;
        case ']':
            k = Tok::RBrack;
            break;
        case ',':
            k = Tok::Comma;
            break;
        case '*':
            k = Tok::Star;
            break;
        case '\\':
            k = Tok::Backslash;
            break;
        case '/':
            k = Tok::Slash;
            break;
        case '|':
            k = Tok::Bar;
            break;
        case '&':
            k = Tok::Amp;
            break;
        case '.':
            k = Tok::Dot;
            break;
        default:
            throw ParseError(col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), col});
        ++i;
    }
    out.push_back({Tok::End, "", s.size() + 1});
    return out;
}

// Raw syntax before sort inference.
enum class RK { Top, Bot, One, Ident, Fact, Seq, LRes, RRes, Or, And, App, Box, DynBox, Update };

struct Raw {
    RK kind;
    std::optional<Sort> fixed; // sort forced by the surface syntax
    std::string name;
    std::unique_ptr<Raw> a;
    std::unique_ptr<Raw> b;
    std::size_t col = 0;
    std::size_t node = 0; // union-find id
};

using RawPtr = std::unique_ptr<Raw>;

const std::map<std::string, std::pair<RK, std::optional<Sort>>>& keywords()
{
    static const std::map<std::string, std::pair<RK, std::optional<Sort>>> kw = {
        {"top", {RK::Top, std::nullopt}},  {"bot", {RK::Bot, std::nullopt}},  {"topQ", {RK::Top, Sort::Q}},
        {"botQ", {RK::Bot, Sort::Q}},      {"topM", {RK::Top, Sort::M}},      {"botM", {RK::Bot, Sort::M}},
    };
    return kw;
}

bool reserved(const std::string& s)
{
    return keywords().count(s) || s == "fQ" || s == "fM" || s == "boxQ" || s == "boxM";
}

class Parser {
public:
    Parser(const std::string& text)
        : toks_(lex(text))
    {
    }

    RawPtr formula() { return residual(); }

    struct RawItem {
        bool is_agent = false;
        std::string agent;
        std::size_t col = 0;
        RawPtr f;
    };

    struct RawSequent {
        Sort side;
        std::vector<RawItem> ctx;
        RawPtr concl; // null for an empty M right-hand side
    };

    RawSequent sequent()
    {
        RawSequent s;
        if (peek().kind != Tok::TurnQ && peek().kind != Tok::TurnM) {
            for (;;) {
                RawItem it;
                it.col = peek().col;
                if (peek().kind == Tok::Agent) {
                    it.is_agent = true;
                    it.agent = next().text;
                } else {
                    it.f = formula();
                }
                s.ctx.push_back(std::move(it));
                if (peek().kind == Tok::Comma) {
                    next();
                    continue;
                }
                break;
            }
        }
        const Token t = next();
        if (t.kind != Tok::TurnQ && t.kind != Tok::TurnM)
            throw ParseError(t.col, "expected ',' or a turnstile");
        s.side = t.kind == Tok::TurnQ ? Sort::Q : Sort::M;
        if (peek().kind == Tok::End) {
            if (s.side == Sort::Q)
                throw ParseError(peek().col, "a Q-sequent needs a right-hand side");
        } else {
            s.concl = formula();
        }
        return s;
    }

    void expect_end()
    {
        if (peek().kind != Tok::End)
            throw ParseError(peek().col, "unexpected '" + peek().text + "'");
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void expect(Tok k, const char* what)
    {
        if (peek().kind != k)
            throw ParseError(peek().col, std::string("expected ") + what);
        next();
    }

    static RawPtr node(RK k, std::size_t col, std::optional<Sort> s = std::nullopt, std::string name = {})
    {
        auto r = std::make_unique<Raw>();
        r->kind = k;
        r->fixed = s;
        r->name = std::move(name);
        r->col = col;
        return r;
    }

    static RawPtr binary(RK k, std::size_t col, RawPtr a, RawPtr b)
    {
        auto r = node(k, col);
        r->a = std::move(a);
        r->b = std::move(b);
        return r;
    }

    RawPtr residual()
    {
        RawPtr lhs = disj();
        while (peek().kind == Tok::Backslash || peek().kind == Tok::Slash) {
            const Token t = next();
            lhs = binary(t.kind == Tok::Backslash ? RK::LRes : RK::RRes, t.col, std::move(lhs), disj());
        }
        return lhs;
    }

    RawPtr disj()
    {
        RawPtr lhs = conj();
        while (peek().kind == Tok::Bar) {
            const Token t = next();
            lhs = binary(RK::Or, t.col, std::move(lhs), conj());
        }
        return lhs;
    }

    RawPtr conj()
    {
        RawPtr lhs = mul();
        while (peek().kind == Tok::Amp) {
            const Token t = next();
            lhs = binary(RK::And, t.col, std::move(lhs), mul());
        }
        return lhs;
    }

    RawPtr mul()
    {
        RawPtr lhs = unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Dot) {
            const Token t = next();
            lhs = binary(t.kind == Tok::Star ? RK::Seq : RK::Update, t.col, std::move(lhs), unary());
        }
        return lhs;
    }

    RawPtr unary()
    {
        const Token t = next();
        switch (t.kind) {
        case Tok::LParen: {
            RawPtr inner = formula();
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::LBrack: {
            RawPtr q = formula();
            expect(Tok::RBrack, "']'");
            return binary(RK::DynBox, t.col, std::move(q), unary());
        }
        case Tok::One:
            return node(RK::One, t.col, Sort::Q);
        case Tok::Fact:
            return node(RK::Fact, t.col, Sort::M, t.text);
        case Tok::Ident:
            break;
        default:
            throw ParseError(t.col, t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
        if (auto kw = keywords().find(t.text); kw != keywords().end())
            return node(kw->second.first, t.col, kw->second.second);
        if (t.text == "fQ" || t.text == "fM" || t.text == "boxQ" || t.text == "boxM") {
            expect(Tok::LBrack, "'[' before the agent");
            if (peek().kind != Tok::Ident || reserved(peek().text))
                throw ParseError(peek().col, "expected an agent name");
            const std::string agent = next().text;
            expect(Tok::RBrack, "']' after the agent");
            expect(Tok::LParen, "'('");
            RawPtr inner = formula();
            expect(Tok::RParen, "')'");
            const bool is_app = t.text[0] == 'f';
            const Sort s = t.text.back() == 'Q' ? Sort::Q : Sort::M;
            auto r = node(is_app ? RK::App : RK::Box, t.col, s, agent);
            r->a = std::move(inner);
            return r;
        }
        return node(RK::Ident, t.col, std::nullopt, t.text);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// Union-find over sort variables.
class Sorts {
public:
    std::size_t fresh(std::optional<Sort> s = std::nullopt)
    {
        parent_.push_back(parent_.size());
        sort_.push_back(s);
        return parent_.size() - 1;
    }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void fix(std::size_t x, Sort s, std::size_t col)
    {
        x = find(x);
        if (sort_[x] && *sort_[x] != s)
            throw ParseError(col, "sort mismatch: expected " + name(s) + ", found " + name(*sort_[x]));
        sort_[x] = s;
    }

    void unify(std::size_t x, std::size_t y, std::size_t col)
    {
        x = find(x);
        y = find(y);
        if (x == y)
            return;
        if (sort_[x] && sort_[y] && *sort_[x] != *sort_[y])
            throw ParseError(col, "sort mismatch between " + name(*sort_[x]) + " and " + name(*sort_[y]) + " operands");
        if (!sort_[x])
            sort_[x] = sort_[y];
        parent_[y] = x;
    }

    Sort resolve(std::size_t x)
    {
        x = find(x);
        return sort_[x].value_or(Sort::M);
    }

private:
    static std::string name(Sort s) { return s == Sort::Q ? "an action (Q)" : "a proposition (M)"; }

    std::vector<std::size_t> parent_;
    std::vector<std::optional<Sort>> sort_;
};

class Inference {
public:
    explicit Inference(const Signature& sig)
        : sig_(sig)
        , strict_(!sig.empty())
    {
    }

    void constrain(Raw& r)
    {
        r.node = sorts_.fresh(r.fixed);
        switch (r.kind) {
        case RK::Top:
        case RK::Bot:
        case RK::One:
            break;
        case RK::Fact:
            if (strict_ && !sig_.facts.count(r.name))
                throw ParseError(r.col, "unknown fact #" + r.name);
            break;
        case RK::Ident: {
            if (reserved(r.name))
                throw ParseError(r.col, "reserved word '" + r.name + "' used as a variable");
            if (strict_) {
                const bool q = sig_.qvars.count(r.name) != 0;
                const bool m = sig_.mvars.count(r.name) != 0;
                if (q && m)
                    throw ParseError(r.col, "variable " + r.name + " is declared with both sorts");
                if (!q && !m)
                    throw ParseError(r.col, "unknown variable " + r.name);
                sorts_.fix(r.node, q ? Sort::Q : Sort::M, r.col);
            } else {
                auto [it, fresh] = names_.emplace(r.name, r.node);
                if (!fresh)
                    sorts_.unify(it->second, r.node, r.col);
            }
            break;
        }
        case RK::Seq:
        case RK::LRes:
        case RK::RRes:
            sorts_.fix(r.node, Sort::Q, r.col);
            constrain(*r.a);
            constrain(*r.b);
            sorts_.fix(r.a->node, Sort::Q, r.a->col);
            sorts_.fix(r.b->node, Sort::Q, r.b->col);
            break;
        case RK::Or:
        case RK::And:
            constrain(*r.a);
            constrain(*r.b);
            sorts_.unify(r.node, r.a->node, r.col);
            sorts_.unify(r.node, r.b->node, r.col);
            break;
        case RK::App:
        case RK::Box:
            if (strict_ && !sig_.agents.count(r.name))
                throw ParseError(r.col, "unknown agent " + r.name);
            constrain(*r.a);
            sorts_.unify(r.node, r.a->node, r.a->col);
            break;
        case RK::DynBox:
            sorts_.fix(r.node, Sort::M, r.col);
            constrain(*r.a);
            constrain(*r.b);
            sorts_.fix(r.a->node, Sort::Q, r.a->col);
            sorts_.fix(r.b->node, Sort::M, r.b->col);
            break;
        case RK::Update:
            sorts_.fix(r.node, Sort::M, r.col);
            constrain(*r.a);
            constrain(*r.b);
            sorts_.fix(r.a->node, Sort::M, r.a->col);
            sorts_.fix(r.b->node, Sort::Q, r.b->col);
            break;
        }
    }

    void check_agent(const std::string& name, std::size_t col) const
    {
        if (strict_ && !sig_.agents.count(name))
            throw ParseError(col, "unknown agent " + name);
    }

    void fix(const Raw& r, Sort s) { sorts_.fix(r.node, s, r.col); }

    F build(const Raw& r)
    {
        const Sort s = sorts_.resolve(r.node);
        switch (r.kind) {
        case RK::Top:
            return fm::top(s);
        case RK::Bot:
            return fm::bot(s);
        case RK::One:
            return fm::one();
        case RK::Fact:
            return fm::fact(r.name);
        case RK::Ident:
            return fm::var(s, r.name);
        case RK::Seq:
            return fm::seq(build(*r.a), build(*r.b));
        case RK::LRes:
            return fm::lres(build(*r.a), build(*r.b));
        case RK::RRes:
            return fm::rres(build(*r.a), build(*r.b));
        case RK::Or:
            return fm::lor(build(*r.a), build(*r.b));
        case RK::And:
            return fm::land(build(*r.a), build(*r.b));
        case RK::App:
            return fm::app(r.name, build(*r.a));
        case RK::Box:
            return fm::box(r.name, build(*r.a));
        case RK::DynBox:
            return fm::dynbox(build(*r.a), build(*r.b));
        case RK::Update:
            return fm::update(build(*r.a), build(*r.b));
        }
        return nullptr;
    }

private:
    const Signature& sig_;
    bool strict_;
    Sorts sorts_;
    std::map<std::string, std::size_t> names_;
};

F parse_sorted(const std::string& text, Sort s, const Signature& sig)
{
    Parser p(text);
    RawPtr r = p.formula();
    p.expect_end();
    Inference inf(sig);
    inf.constrain(*r);
    inf.fix(*r, s);
    return inf.build(*r);
}

} // namespace

F parse_q(const std::string& text, const Signature& sig) { return parse_sorted(text, Sort::Q, sig); }
F parse_m(const std::string& text, const Signature& sig) { return parse_sorted(text, Sort::M, sig); }

std::vector<Sequent> parse_sequents(const std::vector<std::string>& texts, const Signature& sig)
{
    std::vector<Parser::RawSequent> raws;
    Inference inf(sig);
    for (const std::string& text : texts) {
        try {
            Parser p(text);
            raws.push_back(p.sequent());
            p.expect_end();
            auto& rs = raws.back();
            for (auto& it : rs.ctx) {
                if (it.is_agent) {
                    inf.check_agent(it.agent, it.col);
                    continue;
                }
                inf.constrain(*it.f);
                if (rs.side == Sort::Q)
                    inf.fix(*it.f, Sort::Q);
            }
            if (rs.concl) {
                inf.constrain(*rs.concl);
                inf.fix(*rs.concl, rs.side);
            }
        } catch (const ParseError& e) {
            if (texts.size() == 1)
                throw;
            throw ParseError(e.column(), e.message() + " in \"" + text + "\"");
        }
    }
    std::vector<Sequent> out;
    for (auto& rs : raws) {
        Sequent s;
        s.side = rs.side;
        for (auto& it : rs.ctx)
            s.ctx.push_back(it.is_agent ? Item::of_agent(it.agent) : Item::of(inf.build(*it.f)));
        s.concl = rs.concl ? inf.build(*rs.concl) : fm::bot(Sort::M);
        out.push_back(std::move(s));
    }
    return out;
}

Sequent parse_sequent(const std::string& text, const Signature& sig)
{
    return std::move(parse_sequents({text}, sig).front());
}

} // namespace epiq
