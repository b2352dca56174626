#pragma once

#include "epsum/eps_series.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace epsum {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Syntax tree of the textual expression language.
///   Call:  name[args] with an optional applied argument name[args](arg), e.g. S[1,-2](N+1), O[ep]^0
///   Apply: name(arg), e.g. F(N+2)
///   List:  {a, b}
struct Node {
    enum class Kind { Number, Symbol, Call, Apply, List, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Number;
    Rational value;
    std::string name;
    std::vector<NodePtr> args;
    NodePtr applied;
    int line = 1;
    int column = 1;
};

NodePtr parse_ast(std::string_view text);

/// Throws ParseError at the node position.
[[noreturn]] void fail_at(const Node& n, const std::string& what);

Polynomial parse_polynomial(std::string_view text);
RationalFunction parse_rational_function(std::string_view text);
/// Rational functions, S[..](var+j), z2, z3, eg, Log[q], c^var.
SumExpression parse_sum_expression(std::string_view text, Var var = Var::N);
/// ep^-3*(...) + ... + O[ep]^t; without an O term the series must be exact.
EpsSeries parse_series(std::string_view text, Var var = Var::N);

SumExpression to_sum_expression(const Node& n, Var var);
/// Integer constant value of a node, or ParseError.
long to_integer(const Node& n);

/// sum_{(name, shift)} coeff * name(var + shift) + constant.
struct LinearForm {
    std::map<std::pair<std::string, int>, RationalFunction> terms;
    SumExpression constant;
};
LinearForm parse_linear_form(std::string_view text, Var var = Var::N);
LinearForm to_linear_form(const Node& n, Var var);

/// Series that may contain rational multiples of named sequences, e.g. B1(N) + ep^-3*(...) + O[ep]^0.
struct SeriesWithKnown {
    EpsSeries series;
    std::map<std::pair<std::string, int>, RationalFunction> known;
};
SeriesWithKnown parse_series_with_known(std::string_view text, Var var = Var::N);

}  // namespace epsum
