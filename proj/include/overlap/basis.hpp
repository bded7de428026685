#ifndef OVERLAP_BASIS_HPP
#define OVERLAP_BASIS_HPP

#include "overlap/algebra.hpp"

#include <map>
#include <vector>

namespace overlap {

// Enumerates the canonical spanning monomials of H_* B_d^(k)(n): products of
// singletons and right-normed combs in which every brace has arity k, the
// comb tail is the brace with the smallest label, maximal runs of adjacent
// singleton heads descend, and the innermost singleton head exceeds the
// minimum of the tail brace.  For k = 2 the trees are combs over singletons
// with the smallest label as tail and free head order.
std::vector<Monomial> enumerateBasis(const AmbientContext& ctx, long degree);

// All degrees at once.
std::map<long, std::vector<Monomial>> enumerateSpanningSet(const AmbientContext& ctx);

} // namespace overlap

#endif
