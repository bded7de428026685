#ifndef OVERLAP_EXPR_HPP
#define OVERLAP_EXPR_HPP

#include "overlap/ambient.hpp"

#include <memory>
#include <string>
#include <vector>

namespace overlap {

// Parsed syntax tree for bracket/brace expressions.  The grammar (bit-exact
// for the CLI):
//
//   element := term { ("+" | "-") term } ;
//   term    := [ integer "*" ] factor { "*" factor } ;
//   factor  := var | brace | bracket | "(" element ")" ;
//   var     := "x" digits ;
//   brace   := "{" element { "," element } "}" ;
//   bracket := "[" element "," element "]" ;
//
// Whitespace-insensitive, ASCII tokens.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Var, Brace, Bracket, Product, Scaled, Sum };

    Kind kind = Kind::Var;
    int label = 0;            // Var
    Int coeff = 0;            // Scaled
    std::vector<ExprPtr> args; // Brace/Product/Sum children; Bracket: 2; Scaled: 1

    static ExprPtr var(int label);
    static ExprPtr brace(std::vector<ExprPtr> args);
    static ExprPtr bracket(ExprPtr left, ExprPtr right);
    static ExprPtr product(std::vector<ExprPtr> factors);
    static ExprPtr scaled(Int coeff, ExprPtr body);
    static ExprPtr sum(std::vector<ExprPtr> terms);
};

bool structurallyEqual(const Expr& a, const Expr& b);

// Parses and fully validates: syntax, label range 1..n, multilinearity
// (every label exactly once in every distributed term), brace arity >= 2 and
// overlap capacity <= k-1 for every brace.
ExprPtr parse(const std::string& text, const AmbientContext& ctx);

// Canonical text; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);
inline std::string print(const ExprPtr& e) { return print(*e); }

// Validation entry point for programmatically built trees.
void validate(const Expr& e, const AmbientContext& ctx);

// Maximum number of discs the expression can force to a common point.
// capacity(Var) = 1; capacity(Brace(a_1..a_m)) = max over (m-1)-subsets S of
// the args of the sum of capacities over S; products and brackets take the
// max over their children.
int overlapCapacity(const Expr& e);

} // namespace overlap

#endif
