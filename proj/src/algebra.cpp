#include "overlap/algebra.hpp"

#include <algorithm>

namespace overlap {

int orderingSign(std::vector<IdMarker> written, const std::vector<IdMarker>& target) {
    if (written.size() != target.size())
        throw InputError("orderingSign: marker multisets differ in size");
    // Selection-style realization: bring target[i] to position i by adjacent
    // transpositions; any other decomposition gives the same sign.
    int sign = 1;
    for (std::size_t i = 0; i < target.size(); ++i) {
        std::size_t j = i;
        while (j < written.size() && written[j].id != target[i].id)
            ++j;
        if (j == written.size())
            throw InputError("orderingSign: target is not a permutation of written markers");
        if (written[j].degree != target[i].degree)
            throw InputError("orderingSign: marker degrees disagree");
        for (; j > i; --j) {
            sign *= koszulSwapSign(written[j - 1].degree, written[j].degree);
            std::swap(written[j - 1], written[j]);
        }
    }
    return sign;
}

Element Element::monomial(const AmbientContext& ctx, Monomial m, Int coeff) {
    Element e(ctx);
    e.add(m, coeff);
    return e;
}

void Element::add(const Monomial& m, const Int& coeff) {
    if (coeff == 0)
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0)
        terms_.erase(it);
}

Element add(const Element& a, const Element& b) {
    if (!(a.ctx_ == b.ctx_))
        throw InputError("element addition across different ambient contexts");
    Element out = a;
    for (const auto& [m, c] : b.terms_)
        out.add(m, c);
    return out;
}

Element scale(const Int& c, const Element& a) {
    Element out(a.ctx_);
    if (c == 0)
        return out;
    for (const auto& [m, coeff] : a.terms_)
        out.terms_.emplace(m, coeff * c);
    return out;
}

Element sub(const Element& a, const Element& b) { return add(a, scale(Int(-1), b)); }

std::optional<long> Element::degree() const {
    std::optional<long> deg;
    for (const auto& [m, c] : terms_) {
        long dm = degreeOf(m, ctx_.d);
        if (!deg)
            deg = dm;
        else if (*deg != dm)
            return std::nullopt;
    }
    return deg;
}

namespace {

std::string render(const std::map<Monomial, Int, MonomialLess>& terms, bool plainUnits) {
    if (terms.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        Int abs = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0)
                out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono = toString(m);
        if (plainUnits && abs == 1) {
            out += mono;
        } else if (mono == "1") {
            out += abs.str();
        } else {
            out += abs.str() + "*" + mono;
        }
    }
    return out;
}

} // namespace

std::string Element::str() const { return render(terms_, false); }

std::string Element::strPlain() const { return render(terms_, true); }

} // namespace overlap
