#include "epsum/parse.hpp"
#include "epsum/errors.hpp"

#include <cctype>

namespace epsum {

namespace {

struct Token {
    enum class Kind { Number, Ident, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next()
    {
        skip_space();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) return t;
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::Number;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) t.text += advance();
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Kind::Ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                t.text += advance();
            return t;
        }
        static const std::string punct = "+-*/^()[]{},";
        if (punct.find(c) == std::string::npos)
            throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
        t.kind = Token::Kind::Punct;
        t.text = std::string(1, advance());
        return t;
    }

private:
    char advance()
    {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space()
    {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { cur_ = lex_.next(); }

    NodePtr parse_all()
    {
        if (cur_.kind == Token::Kind::End) throw ParseError("empty expression", cur_.line, cur_.column);
        NodePtr n = expression();
        if (cur_.kind != Token::Kind::End) throw ParseError("unexpected '" + cur_.text + "'", cur_.line, cur_.column);
        return n;
    }

private:
    std::shared_ptr<Node> make(Node::Kind k, const Token& at)
    {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->line = at.line;
        n->column = at.column;
        return n;
    }

    bool is(const char* p) const { return cur_.kind == Token::Kind::Punct && cur_.text == p; }

    void expect(const char* p)
    {
        if (!is(p)) {
            std::string got = cur_.kind == Token::Kind::End ? "end of input" : "'" + cur_.text + "'";
            throw ParseError(std::string("expected '") + p + "', got " + got, cur_.line, cur_.column);
        }
        cur_ = lex_.next();
    }

    NodePtr expression()
    {
        NodePtr lhs = term();
        while (is("+") || is("-")) {
            Token op = cur_;
            cur_ = lex_.next();
            auto n = make(op.text == "+" ? Node::Kind::Add : Node::Kind::Sub, op);
            n->args = {lhs, term()};
            lhs = n;
        }
        return lhs;
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        while (is("*") || is("/")) {
            Token op = cur_;
            cur_ = lex_.next();
            auto n = make(op.text == "*" ? Node::Kind::Mul : Node::Kind::Div, op);
            n->args = {lhs, unary()};
            lhs = n;
        }
        return lhs;
    }

    NodePtr unary()
    {
        if (is("-")) {
            Token op = cur_;
            cur_ = lex_.next();
            auto n = make(Node::Kind::Neg, op);
            n->args = {unary()};
            return n;
        }
        if (is("+")) {
            cur_ = lex_.next();
            return unary();
        }
        return power();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (!is("^")) return base;
        Token op = cur_;
        cur_ = lex_.next();
        auto n = make(Node::Kind::Pow, op);
        NodePtr exponent;
        if (is("-")) {
            Token m = cur_;
            cur_ = lex_.next();
            auto neg = make(Node::Kind::Neg, m);
            neg->args = {power()};
            exponent = neg;
        } else {
            exponent = power();
        }
        n->args = {base, exponent};
        return n;
    }

    std::vector<NodePtr> arguments(const char* close)
    {
        std::vector<NodePtr> out;
        if (is(close)) return out;
        out.push_back(expression());
        while (is(",")) {
            cur_ = lex_.next();
            out.push_back(expression());
        }
        return out;
    }

    NodePtr primary()
    {
        Token t = cur_;
        if (t.kind == Token::Kind::Number) {
            cur_ = lex_.next();
            auto n = make(Node::Kind::Number, t);
            n->value = Rational(Integer(t.text));
            return n;
        }
        if (t.kind == Token::Kind::Ident) {
            cur_ = lex_.next();
            if (is("[")) {
                cur_ = lex_.next();
                auto n = make(Node::Kind::Call, t);
                n->name = t.text;
                n->args = arguments("]");
                expect("]");
                if (is("(")) {
                    cur_ = lex_.next();
                    n->applied = expression();
                    expect(")");
                }
                return n;
            }
            if (is("(")) {
                cur_ = lex_.next();
                auto n = make(Node::Kind::Apply, t);
                n->name = t.text;
                n->args = {expression()};
                expect(")");
                return n;
            }
            auto n = make(Node::Kind::Symbol, t);
            n->name = t.text;
            return n;
        }
        if (is("(")) {
            cur_ = lex_.next();
            NodePtr inner = expression();
            expect(")");
            return inner;
        }
        if (is("{")) {
            cur_ = lex_.next();
            auto n = make(Node::Kind::List, t);
            n->args = arguments("}");
            expect("}");
            return n;
        }
        if (t.kind == Token::Kind::End) throw ParseError("unexpected end of input", t.line, t.column);
        throw ParseError("unexpected '" + t.text + "'", t.line, t.column);
    }

    Lexer lex_;
    Token cur_;
};

bool variable_of(const std::string& name, Var& v)
{
    if (name == "N") v = Var::N;
    else if (name == "k") v = Var::k;
    else if (name == "ep") v = Var::ep;
    else if (name == "x") v = Var::x;
    else return false;
    return true;
}

Rational constant_rational(const Node& n)
{
    SumExpression e = to_sum_expression(n, Var::N);
    if (!e.is_rational() || !e.as_rational().is_constant()) fail_at(n, "expected a rational number");
    return e.as_rational().constant_value();
}

SWord word_of(const Node& call)
{
    SWord w;
    if (call.args.empty()) fail_at(call, "S-sum needs at least one index");
    for (const auto& a : call.args) {
        if (a->kind == Node::Kind::List) {
            if (a->args.size() != 2) fail_at(*a, "generalized index must be {weight, base}");
            SIndex i;
            i.weight = static_cast<int>(to_integer(*a->args[0]));
            i.base = constant_rational(*a->args[1]);
            if (i.weight < 1) fail_at(*a, "S-sum weight must be positive");
            if (i.base == 0) fail_at(*a, "S-sum base must be nonzero");
            w.push_back(i);
        } else {
            long v = to_integer(*a);
            if (v == 0) fail_at(*a, "S-sum index must be nonzero");
            w.push_back(SIndex{static_cast<int>(v < 0 ? -v : v), Rational(v < 0 ? -1 : 1)});
        }
    }
    return w;
}

// offset j with arg = var + j
int shift_of(const Node& arg, Var var)
{
    SumExpression e = to_sum_expression(arg, var);
    if (!e.is_rational()) fail_at(arg, "argument must be " + std::string(var_name(var)) + " + integer");
    RationalFunction d = e.as_rational() - RationalFunction(var_poly(var));
    if (!d.is_constant() || d.constant_value().get_den() != 1)
        fail_at(arg, "argument must be " + std::string(var_name(var)) + " + integer");
    return static_cast<int>(d.constant_value().get_num().get_si());
}

SumExpression power_of(const SumExpression& base, long e, const Node& at)
{
    if (e < 0) {
        if (!base.is_rational() || base.is_zero()) fail_at(at, "negative power of a non-rational expression");
        return SumExpression(base.as_rational().pow(static_cast<int>(e)), base.var());
    }
    if (base.is_rational()) return SumExpression(base.as_rational().pow(static_cast<int>(e)), base.var());
    SumExpression r(RationalFunction(1), base.var());
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

void fail_at(const Node& n, const std::string& what) { throw ParseError(what, n.line, n.column); }

NodePtr parse_ast(std::string_view text) { return Parser(text).parse_all(); }

long to_integer(const Node& n)
{
    Rational q = constant_rational(n);
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) fail_at(n, "expected an integer");
    return q.get_num().get_si();
}

SumExpression to_sum_expression(const Node& n, Var var)
{
    switch (n.kind) {
    case Node::Kind::Number:
        return SumExpression(RationalFunction(n.value), var);
    case Node::Kind::Symbol: {
        Var v;
        if (variable_of(n.name, v)) return SumExpression(RationalFunction(var_poly(v)), var);
        if (n.name == "eg") return SumExpression::constant(FormalConstant::euler_gamma(), var);
        if (n.name.size() >= 2 && n.name[0] == 'z' &&
            n.name.find_first_not_of("0123456789", 1) == std::string::npos) {
            int s = std::stoi(n.name.substr(1));
            if (s < 2) fail_at(n, "zeta needs an argument >= 2");
            return SumExpression::constant(FormalConstant::zeta(s), var);
        }
        fail_at(n, "unknown symbol '" + n.name + "'");
    }
    case Node::Kind::Call: {
        if (n.name == "S") {
            if (!n.applied) fail_at(n, "S-sum needs an argument, e.g. S[1](N)");
            SWord w = word_of(n);
            int j = shift_of(*n.applied, var);
            return SumExpression::ssum(w, var).shift(j);
        }
        if (n.name == "Log") {
            if (n.args.size() != 1) fail_at(n, "Log takes one argument");
            Rational q = constant_rational(*n.args[0]);
            if (q <= 0) fail_at(n, "Log needs a positive rational argument");
            if (q == 1) return SumExpression(var);
            return SumExpression::constant(FormalConstant::log(q), var);
        }
        if (n.name == "Zeta") {
            if (n.args.size() != 1) fail_at(n, "Zeta takes one argument");
            long s = to_integer(*n.args[0]);
            if (s < 2) fail_at(n, "zeta needs an argument >= 2");
            return SumExpression::constant(FormalConstant::zeta(static_cast<int>(s)), var);
        }
        fail_at(n, "unsupported function '" + n.name + "' in a sum expression");
    }
    case Node::Kind::Apply:
        fail_at(n, "unknown function '" + n.name + "'");
    case Node::Kind::List:
        fail_at(n, "unexpected list");
    case Node::Kind::Neg:
        return -to_sum_expression(*n.args[0], var);
    case Node::Kind::Add:
        return to_sum_expression(*n.args[0], var) + to_sum_expression(*n.args[1], var);
    case Node::Kind::Sub:
        return to_sum_expression(*n.args[0], var) - to_sum_expression(*n.args[1], var);
    case Node::Kind::Mul:
        return to_sum_expression(*n.args[0], var) * to_sum_expression(*n.args[1], var);
    case Node::Kind::Div: {
        SumExpression d = to_sum_expression(*n.args[1], var);
        if (!d.is_rational()) fail_at(*n.args[1], "division by a non-rational expression");
        if (d.is_zero()) fail_at(*n.args[1], "division by zero");
        return to_sum_expression(*n.args[0], var) * (RationalFunction(1) / d.as_rational());
    }
    case Node::Kind::Pow: {
        SumExpression base = to_sum_expression(*n.args[0], var);
        SumExpression ex = to_sum_expression(*n.args[1], var);
        if (ex.is_rational() && ex.as_rational().is_constant()) {
            Rational q = ex.is_zero() ? Rational(0) : ex.as_rational().constant_value();
            if (q.get_den() != 1) fail_at(*n.args[1], "fractional exponent");
            return power_of(base, q.get_num().get_si(), n);
        }
        int j = shift_of(*n.args[1], var);
        if (!base.is_rational() || !base.as_rational().is_constant() || base.is_zero())
            fail_at(*n.args[0], "base of c^" + std::string(var_name(var)) + " must be a nonzero rational");
        Rational c = base.as_rational().constant_value();
        return SumExpression::geometric(c, var) * RationalFunction(rational_pow(c, j));
    }
    }
    fail_at(n, "unsupported expression");
}

Polynomial parse_polynomial(std::string_view text)
{
    NodePtr n = parse_ast(text);
    SumExpression e = to_sum_expression(*n, Var::N);
    if (!e.is_rational() || !e.as_rational().is_polynomial()) fail_at(*n, "expected a polynomial");
    RationalFunction f = e.as_rational();
    return f.num() * (1 / f.den().constant_value());
}

RationalFunction parse_rational_function(std::string_view text)
{
    NodePtr n = parse_ast(text);
    SumExpression e = to_sum_expression(*n, Var::N);
    if (!e.is_rational()) fail_at(*n, "expected a rational function");
    return e.as_rational();
}

SumExpression parse_sum_expression(std::string_view text, Var var)
{
    return to_sum_expression(*parse_ast(text), var);
}

namespace {

// Splits a top-level sum into signed summands.
void summands(const NodePtr& n, bool negate, std::vector<std::pair<NodePtr, bool>>& out)
{
    if (n->kind == Node::Kind::Add) {
        summands(n->args[0], negate, out);
        summands(n->args[1], negate, out);
    } else if (n->kind == Node::Kind::Sub) {
        summands(n->args[0], negate, out);
        summands(n->args[1], !negate, out);
    } else {
        out.emplace_back(n, negate);
    }
}

// O[ep] or O[ep]^t; returns t, or nothing for other nodes.
std::optional<int> order_term(const Node& n)
{
    const Node* call = &n;
    int t = 1;
    if (n.kind == Node::Kind::Pow) {
        call = n.args[0].get();
        if (call->kind != Node::Kind::Call || call->name != "O") return std::nullopt;
        t = static_cast<int>(to_integer(*n.args[1]));
    }
    if (call->kind != Node::Kind::Call || call->name != "O") return std::nullopt;
    if (call->args.size() != 1 || call->args[0]->kind != Node::Kind::Symbol || call->args[0]->name != "ep")
        fail_at(*call, "order term must be O[ep]");
    return t;
}

}  // namespace

namespace {

bool contains_apply(const Node& n)
{
    if (n.kind == Node::Kind::Apply) return true;
    for (const auto& a : n.args)
        if (contains_apply(*a)) return true;
    return n.applied && contains_apply(*n.applied);
}

}  // namespace

SeriesWithKnown parse_series_with_known(std::string_view text, Var var)
{
    NodePtr root = parse_ast(text);
    std::vector<std::pair<NodePtr, bool>> parts;
    summands(root, false, parts);
    int trunc = kExactOrder;
    SumExpression body(var);
    SeriesWithKnown out;
    for (const auto& [node, neg] : parts) {
        if (auto t = order_term(*node)) {
            if (trunc != kExactOrder) fail_at(*node, "more than one order term");
            trunc = *t;
            continue;
        }
        if (contains_apply(*node)) {
            LinearForm f = to_linear_form(*node, var);
            if (!f.constant.is_zero()) fail_at(*node, "mixed known sequence and series term");
            for (const auto& [key, c] : f.terms) {
                auto& slot = out.known[key];
                slot += neg ? -c : c;
            }
            continue;
        }
        SumExpression e = to_sum_expression(*node, var);
        body += neg ? -e : e;
    }
    for (auto it = out.known.begin(); it != out.known.end();) {
        if (it->second.is_zero()) it = out.known.erase(it);
        else ++it;
    }
    try {
        out.series = eps_expand(body, trunc);
    } catch (const TruncationError& e) {
        fail_at(*root, e.what());
    }
    return out;
}

EpsSeries parse_series(std::string_view text, Var var)
{
    SeriesWithKnown s = parse_series_with_known(text, var);
    if (!s.known.empty()) fail_at(*parse_ast(text), "unknown sequence '" + s.known.begin()->first.first + "' in a series");
    return s.series;
}

LinearForm to_linear_form(const Node& n, Var var)
{
    auto scale = [](LinearForm f, const SumExpression& c) {
        if (!c.is_rational()) throw std::logic_error("scale by non-rational");
        RationalFunction r = c.as_rational();
        for (auto it = f.terms.begin(); it != f.terms.end();) {
            it->second *= r;
            if (it->second.is_zero()) it = f.terms.erase(it);
            else ++it;
        }
        f.constant *= r;
        return f;
    };
    auto add = [](LinearForm a, const LinearForm& b, bool negate) {
        for (const auto& [k, c] : b.terms) {
            auto& slot = a.terms[k];
            slot += negate ? -c : c;
            if (slot.is_zero()) a.terms.erase(k);
        }
        a.constant += negate ? -b.constant : b.constant;
        return a;
    };
    switch (n.kind) {
    case Node::Kind::Apply: {
        LinearForm f;
        f.constant = SumExpression(var);
        f.terms[{n.name, shift_of(*n.args[0], var)}] = RationalFunction(1);
        return f;
    }
    case Node::Kind::Neg:
        return scale(to_linear_form(*n.args[0], var), SumExpression(RationalFunction(-1), var));
    case Node::Kind::Add:
    case Node::Kind::Sub:
        return add(to_linear_form(*n.args[0], var), to_linear_form(*n.args[1], var), n.kind == Node::Kind::Sub);
    case Node::Kind::Mul: {
        LinearForm a = to_linear_form(*n.args[0], var), b = to_linear_form(*n.args[1], var);
        if (a.terms.empty()) {
            if (!a.constant.is_rational() && !b.terms.empty()) fail_at(*n.args[0], "unknowns may only be scaled by rational functions");
            if (b.terms.empty()) {
                LinearForm f;
                f.constant = a.constant * b.constant;
                return f;
            }
            return scale(b, a.constant);
        }
        if (!b.terms.empty()) fail_at(n, "product of two unknowns");
        if (!b.constant.is_rational()) fail_at(*n.args[1], "unknowns may only be scaled by rational functions");
        return scale(a, b.constant);
    }
    case Node::Kind::Div: {
        LinearForm a = to_linear_form(*n.args[0], var);
        SumExpression d = to_sum_expression(*n.args[1], var);
        if (!d.is_rational() || d.is_zero()) fail_at(*n.args[1], "division by a non-rational expression");
        return scale(a, SumExpression(RationalFunction(1) / d.as_rational(), var));
    }
    default: {
        LinearForm f;
        f.constant = to_sum_expression(n, var);
        return f;
    }
    }
}

LinearForm parse_linear_form(std::string_view text, Var var) { return to_linear_form(*parse_ast(text), var); }

}  // namespace epsum
