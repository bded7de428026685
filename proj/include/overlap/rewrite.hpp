#ifndef OVERLAP_REWRITE_HPP
#define OVERLAP_REWRITE_HPP

#include "overlap/algebra.hpp"
#include "overlap/expr.hpp"

#include <random>

namespace overlap {

// When rng is set, admissible redexes are picked at random instead of by the
// deterministic first-fire strategy; the normal form must not depend on the
// choice (checked by the confluence suite).
struct RewriteOptions {
    std::mt19937* rng = nullptr;
};

// AST -> raw element: multilinear expansion of sums, scalars and products;
// arity-2 braces become brackets.  Monomials may still contain impure braces
// and products inside brackets.
Element lower(const Expr& e, const AmbientContext& ctx);

// Eliminates every composite brace argument: products split off by the first
// Leibniz rule, brackets by the second, inner flat braces by the
// brace-in-brace expansion, innermost first.  A composite argument is first
// moved to the last slot, each adjacent transposition of brace arguments
// u, v costing (-1)^(d + |u||v|).
Element purifyBraces(const Element& el, const RewriteOptions& opt = {});

// Null-homotopy kills for ambient k >= 3: monomials containing a flat brace
// of arity < k die, as do monomials with a bracket factor containing no
// brace.  Degree-0 monomials always survive.  No-op for k = 2.
Element filtrationKill(const Element& el);

// Right-norms every bracket tree into combs [h1,[h2,[...,[hm,t]...]]] with
// the tail t the brace atom of smallest label (smallest atom if no brace),
// expanding products inside bracket operands by the Poisson Leibniz rule
// first.  For k >= 3 adjacent singleton heads are sorted descending by
// label, each swap costing (-1)^(d-1).
Element combBrackets(const Element& el);

// Eliminates every innermost pair [x_i, {S}] with i < min(S) by the
// generalized Jacobi instance on {i} u S.
Element jacobiStraighten(const Element& el, const RewriteOptions& opt = {});

// Sorts monomial factors ascending by minimal label with Koszul signs and
// merges identical monomials.
Element canonicalize(const Element& el);

Element normalizeElement(Element el, const RewriteOptions& opt = {});
Element normalize(const Expr& e, const AmbientContext& ctx, const RewriteOptions& opt = {});
Element normalize(const std::string& text, const AmbientContext& ctx,
                  const RewriteOptions& opt = {});

} // namespace overlap

#endif
