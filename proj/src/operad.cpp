#include "overlap/operad.hpp"

namespace overlap {

std::string toString(TypeClass t) {
    switch (t) {
    case TypeClass::I:
        return "I";
    case TypeClass::II:
        return "II";
    case TypeClass::III:
        return "III";
    }
    return "?";
}

namespace {

TypeClass classifyMonomial(const Monomial& m, int d) {
    if (degreeOf(m, d) == 0)
        return TypeClass::I;
    int nonSingleton = 0;
    int braces = 0;
    for (const Cell& f : m.factors) {
        if (!f.isVar())
            ++nonSingleton;
        braces += countBraces(f);
    }
    if (nonSingleton == 1 && braces == 1)
        return TypeClass::II;
    return TypeClass::III;
}

bool cellHasLabelInBrace(const Cell& c, int label) {
    if (c.isVar())
        return false;
    if (c.isBrace())
        for (const Product& arg : c.parts)
            if (arg.size() == 1 && arg[0].isVar() && arg[0].label == label)
                return true;
    for (const Product& part : c.parts)
        for (const Cell& sub : part)
            if (cellHasLabelInBrace(sub, label))
                return true;
    return false;
}

Cell relabelCell(const Cell& c, int shiftFrom, int shiftBy) {
    Cell out = c;
    if (out.isVar()) {
        if (out.label > shiftFrom)
            out.label += shiftBy;
        return out;
    }
    for (Product& part : out.parts)
        for (Cell& sub : part)
            sub = relabelCell(sub, shiftFrom, shiftBy);
    return out;
}

// Replaces the unique occurrence of x_slot by the cells of `graft`, splicing
// at factor positions and substituting whole products at argument slots.
bool graftInto(Product& p, int slot, const Product& graft) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        Cell& c = p[i];
        if (c.isVar()) {
            if (c.label != slot)
                continue;
            p.erase(p.begin() + i);
            p.insert(p.begin() + i, graft.begin(), graft.end());
            return true;
        }
        for (Product& part : c.parts)
            if (graftInto(part, slot, graft))
                return true;
    }
    return false;
}

} // namespace

TypeClass classify(const Element& el) {
    if (el.isZero())
        throw InputError("classify: zero element has no type class");
    bool first = true;
    TypeClass cls = TypeClass::I;
    for (const auto& [m, c] : el.terms()) {
        TypeClass t = classifyMonomial(m, el.ctx().d);
        if (first) {
            cls = t;
            first = false;
        } else if (t != cls) {
            throw InputError("classify: monomials fall in different classes");
        }
    }
    return cls;
}

bool labelInsideBrace(const Monomial& m, int label) {
    for (const Cell& f : m.factors)
        if (cellHasLabelInBrace(f, label))
            return true;
    return false;
}

Element composeRaw(const Element& a, int slot, const Element& b) {
    const AmbientContext& ca = a.ctx();
    const AmbientContext& cb = b.ctx();
    if (ca.d != cb.d)
        throw InputError("compose: ambient dimension mismatch");
    if (slot < 1 || slot > ca.n)
        throw InputError("compose: slot " + std::to_string(slot) + " out of range 1.." +
                         std::to_string(ca.n));
    AmbientContext out(ca.d, ca.k + cb.k - 2, ca.n + cb.n - 1);

    Element result(out);
    for (const auto& [ma, coeffA] : a.terms()) {
        // The composite cycle is parametrized by a's parameters followed by
        // b's, while b's markers appear textually at the slot; moving them
        // there from the end crosses every marker of a written after x_slot.
        long afterSlot = markerDegreeAfterLabel(ma.factors, slot, ca.d);
        // Shift a's labels above the slot window.
        Product shiftedA;
        shiftedA.reserve(ma.factors.size());
        for (const Cell& f : ma.factors)
            shiftedA.push_back(relabelCell(f, slot, cb.n - 1));
        for (const auto& [mb, coeffB] : b.terms()) {
            int graftSign = signPow(degreeOf(mb, ca.d) * afterSlot);
            Product graft;
            graft.reserve(mb.factors.size());
            for (const Cell& f : mb.factors)
                graft.push_back(relabelCell(f, 0, slot - 1));
            Product grafted = shiftedA;
            if (!graftInto(grafted, slot, graft))
                throw InternalError("compose: slot occurrence not found");
            result.add(Monomial{std::move(grafted)}, coeffA * coeffB * graftSign);
        }
    }
    return result;
}

Element compose(const Element& a, int slot, const Element& b) {
    return normalizeElement(composeRaw(a, slot, b));
}

Element leftAction(const Element& p, int slot, const Element& b) {
    if (p.ctx().k != 2)
        throw InputError("leftAction: left operand must live in filtration stage k = 2");
    return compose(p, slot, b);
}

Element rightAction(const Element& a, int slot, const Element& q) {
    if (q.ctx().k != 2)
        throw InputError("rightAction: right operand must live in filtration stage k = 2");
    return compose(a, slot, q);
}

bool trivialityWitness(TypeClass a, TypeClass b, bool slotInsideBrace) {
    if (a == TypeClass::I && b == TypeClass::I)
        return false;
    if (a == TypeClass::II && b == TypeClass::II)
        return !slotInsideBrace;
    return true;
}

} // namespace overlap
