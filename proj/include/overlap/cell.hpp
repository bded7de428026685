#ifndef OVERLAP_CELL_HPP
#define OVERLAP_CELL_HPP

#include "overlap/ambient.hpp"

#include <compare>
#include <string>
#include <vector>

namespace overlap {

// Term model for monomials.  A Cell is one node of a monomial tree, and every
// slot that can hold "stuff" (a bracket operand, a brace argument) holds a
// Product, i.e. an ordered factor list.  Normal forms are the special case
// where bracket operands are single cells and brace arguments are single
// variables; intermediate rewriting states are the general case.
struct Cell;
using Product = std::vector<Cell>;

struct Cell {
    enum class Kind { Var, Brace, Bracket };

    Kind kind = Kind::Var;
    int label = 0;              // Var only
    std::vector<Product> parts; // Brace: args (>= 2); Bracket: exactly {left, right}

    static Cell var(int label);
    static Cell brace(std::vector<Product> args);
    static Cell bracket(Product left, Product right);

    bool isVar() const { return kind == Kind::Var; }
    bool isBrace() const { return kind == Kind::Brace; }
    bool isBracket() const { return kind == Kind::Bracket; }

    // Brace whose arguments are all single variables.
    bool isFlatBrace() const;

    friend bool operator==(const Cell&, const Cell&) = default;
};

std::strong_ordering compareCell(const Cell& a, const Cell& b);
std::strong_ordering compareProduct(const Product& a, const Product& b);

struct Monomial {
    Product factors;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compareProduct(a.factors, b.factors) == std::strong_ordering::less;
    }
};

// Homological degree: a singleton is 0, a flat m-brace is (m-1)d-1, every
// bracket node adds d-1.  Composite brace arguments add their own degrees.
long degreeOf(const Cell& c, int d);
long degreeOf(const Product& p, int d);
long degreeOf(const Monomial& m, int d);

void collectLabels(const Cell& c, std::vector<int>& out);
void collectLabels(const Product& p, std::vector<int>& out);
std::vector<int> sortedLabels(const Monomial& m);
int minLabel(const Cell& c);
int minLabel(const Product& p);

// Counts flat (and nested) brace cells in the subtree.
int countBraces(const Cell& c);
int countBraces(const Product& p);

// Flat brace construction from labels in written order; sorting the labels
// ascending costs (-1)^d per adjacent transposition.
struct SignedCell {
    Cell cell;
    int sign = 1;
};
SignedCell makeFlatBrace(std::vector<int> labels, int d);

// A graded marker in the written order of a monomial: a brace contributes at
// its opening brace, a bracket at its comma; singletons contribute nothing.
struct Marker {
    enum class Kind { BraceSphere, BracketSphere };
    Kind kind;
    long degree;
};
void writtenMarkers(const Cell& c, int d, std::vector<Marker>& out);
void writtenMarkers(const Product& p, int d, std::vector<Marker>& out);

// Total degree of the markers written after the (unique) occurrence of the
// label: a brace counts at its opening brace, a bracket at its comma.
// Throws InternalError when the label does not occur.
long markerDegreeAfterLabel(const Product& p, int label, int d);

// Canonical text for a cell/monomial, e.g. "[x4,{x1,x2,x3}]*x5".
std::string toString(const Cell& c);
std::string toString(const Product& p);
std::string toString(const Monomial& m);

} // namespace overlap

#endif
