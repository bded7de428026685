#ifndef OVERLAP_OPERAD_HPP
#define OVERLAP_OPERAD_HPP

#include "overlap/rewrite.hpp"

#include <string>

namespace overlap {

// Composition-triviality classification of homogeneous normalized elements:
//   I   degree 0 (the commutative part),
//   II  products with exactly one bracket factor, the rest singletons,
//       containing exactly one brace,
//   III everything else (at least two braces).
enum class TypeClass { I, II, III };

std::string toString(TypeClass t);

TypeClass classify(const Element& el);

// Whether the variable with `label` sits directly inside a flat brace of the
// monomial (a brace argument rather than a plain factor or bracket leaf).
bool labelInsideBrace(const Monomial& m, int label);

// Filtered operadic composition: relabels b to the slot window, shifts the
// upper labels of a, grafts b into the unique occurrence of x_slot in every
// monomial of a (as factors, bracket leaf or brace argument; the graft itself
// carries no sign), and normalizes in ambient k1+k2-2.
Element compose(const Element& a, int slot, const Element& b);

// The grafted element before normalization, for echo output.
Element composeRaw(const Element& a, int slot, const Element& b);

// Infinitesimal bimodule actions: compose with one operand in filtration
// stage F_0 (k = 2).
Element leftAction(const Element& p, int slot, const Element& b);
Element rightAction(const Element& a, int slot, const Element& q);

// The proposition's triviality table for k1, k2 > 2: zero expected on every
// mixed pair and on II o II with the slot outside the brace; nonzero only on
// I o I and II o II with the slot inside the brace.
bool trivialityWitness(TypeClass a, TypeClass b, bool slotInsideBrace);

} // namespace overlap

#endif
