#ifndef OVERLAP_ALGEBRA_HPP
#define OVERLAP_ALGEBRA_HPP

#include "overlap/ambient.hpp"
#include "overlap/cell.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace overlap {

// Koszul sign for transposing adjacent factors of degrees p and q.
inline int koszulSwapSign(long p, long q) { return signPow(p * q); }

// A graded marker with an identity, for reordering computations.
struct IdMarker {
    int id;
    long degree;
};

// Sign accumulated when the written marker order is rearranged into the
// target order: the product of koszulSwapSign over the adjacent
// transpositions realizing the permutation.  Throws if the id multisets
// differ.  Independent of the chosen transposition decomposition.
int orderingSign(std::vector<IdMarker> written, const std::vector<IdMarker>& target);

// Integer linear combination of monomials over a fixed ambient context.
class Element {
public:
    Element() = default;
    explicit Element(AmbientContext ctx) : ctx_(ctx) {}

    static Element zero(const AmbientContext& ctx) { return Element(ctx); }
    static Element monomial(const AmbientContext& ctx, Monomial m, Int coeff = 1);

    const AmbientContext& ctx() const { return ctx_; }
    const std::map<Monomial, Int, MonomialLess>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t termCount() const { return terms_.size(); }

    void
    add(const Monomial& m, const Int& coeff); // coefficientwise; zero entries dropped

    friend Element add(const Element& a, const Element& b);
    friend Element scale(const Int& c, const Element& a);
    friend Element sub(const Element& a, const Element& b);

    bool operator==(const Element& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

    // Degree of a homogeneous element; nullopt when zero or mixed.
    std::optional<long> degree() const;
    bool isHomogeneous() const { return terms_.empty() || degree().has_value(); }

    // "1*{x1,x2,x3} - 1*x1*x2*x3" style: coefficient always written.
    std::string str() const;
    // "{x1,x2,x3} - x1*x2*x3" style: unit coefficients omitted.
    std::string strPlain() const;

private:
    AmbientContext ctx_;
    std::map<Monomial, Int, MonomialLess> terms_;
};

} // namespace overlap

#endif
