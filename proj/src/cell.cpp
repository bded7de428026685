#include "overlap/cell.hpp"

#include <algorithm>
#include <limits>

namespace overlap {

Cell Cell::var(int label) {
    Cell c;
    c.kind = Kind::Var;
    c.label = label;
    return c;
}

Cell Cell::brace(std::vector<Product> args) {
    if (args.size() < 2)
        throw InternalError("brace cell needs at least 2 arguments");
    Cell c;
    c.kind = Kind::Brace;
    c.parts = std::move(args);
    return c;
}

Cell Cell::bracket(Product left, Product right) {
    Cell c;
    c.kind = Kind::Bracket;
    c.parts.push_back(std::move(left));
    c.parts.push_back(std::move(right));
    return c;
}

bool Cell::isFlatBrace() const {
    if (kind != Kind::Brace)
        return false;
    for (const Product& arg : parts)
        if (arg.size() != 1 || !arg[0].isVar())
            return false;
    return true;
}

std::strong_ordering compareCell(const Cell& a, const Cell& b) {
    if (a.kind != b.kind)
        return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    if (a.kind == Cell::Kind::Var)
        return a.label <=> b.label;
    if (a.parts.size() != b.parts.size())
        return a.parts.size() <=> b.parts.size();
    for (std::size_t i = 0; i < a.parts.size(); ++i)
        if (auto c = compareProduct(a.parts[i], b.parts[i]); c != std::strong_ordering::equal)
            return c;
    return std::strong_ordering::equal;
}

std::strong_ordering compareProduct(const Product& a, const Product& b) {
    if (a.size() != b.size())
        return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto c = compareCell(a[i], b[i]); c != std::strong_ordering::equal)
            return c;
    return std::strong_ordering::equal;
}

long degreeOf(const Cell& c, int d) {
    switch (c.kind) {
    case Cell::Kind::Var:
        return 0;
    case Cell::Kind::Brace: {
        long deg = (static_cast<long>(c.parts.size()) - 1) * d - 1;
        for (const Product& arg : c.parts)
            deg += degreeOf(arg, d);
        return deg;
    }
    case Cell::Kind::Bracket:
        return degreeOf(c.parts[0], d) + degreeOf(c.parts[1], d) + d - 1;
    }
    return 0;
}

long degreeOf(const Product& p, int d) {
    long deg = 0;
    for (const Cell& c : p)
        deg += degreeOf(c, d);
    return deg;
}

long degreeOf(const Monomial& m, int d) { return degreeOf(m.factors, d); }

void collectLabels(const Cell& c, std::vector<int>& out) {
    if (c.isVar()) {
        out.push_back(c.label);
        return;
    }
    for (const Product& part : c.parts)
        collectLabels(part, out);
}

void collectLabels(const Product& p, std::vector<int>& out) {
    for (const Cell& c : p)
        collectLabels(c, out);
}

std::vector<int> sortedLabels(const Monomial& m) {
    std::vector<int> out;
    collectLabels(m.factors, out);
    std::sort(out.begin(), out.end());
    return out;
}

int minLabel(const Cell& c) {
    if (c.isVar())
        return c.label;
    int best = std::numeric_limits<int>::max();
    for (const Product& part : c.parts)
        best = std::min(best, minLabel(part));
    return best;
}

int minLabel(const Product& p) {
    int best = std::numeric_limits<int>::max();
    for (const Cell& c : p)
        best = std::min(best, minLabel(c));
    return best;
}

int countBraces(const Cell& c) {
    int count = c.isBrace() ? 1 : 0;
    if (!c.isVar())
        for (const Product& part : c.parts)
            count += countBraces(part);
    return count;
}

int countBraces(const Product& p) {
    int count = 0;
    for (const Cell& c : p)
        count += countBraces(c);
    return count;
}

SignedCell makeFlatBrace(std::vector<int> labels, int d) {
    // Insertion sort; each adjacent transposition of singleton arguments is
    // the (-1)^d of the brace symmetry relation.
    long swaps = 0;
    for (std::size_t i = 1; i < labels.size(); ++i)
        for (std::size_t j = i; j > 0 && labels[j - 1] > labels[j]; --j) {
            std::swap(labels[j - 1], labels[j]);
            ++swaps;
        }
    std::vector<Product> args;
    args.reserve(labels.size());
    for (int l : labels)
        args.push_back(Product{Cell::var(l)});
    return SignedCell{Cell::brace(std::move(args)), signPow(swaps * d)};
}

void writtenMarkers(const Cell& c, int d, std::vector<Marker>& out) {
    switch (c.kind) {
    case Cell::Kind::Var:
        return;
    case Cell::Kind::Brace:
        out.push_back(Marker{Marker::Kind::BraceSphere,
                             (static_cast<long>(c.parts.size()) - 1) * d - 1});
        for (const Product& arg : c.parts)
            writtenMarkers(arg, d, out);
        return;
    case Cell::Kind::Bracket:
        // The bracket sphere is taken into account by the comma.
        writtenMarkers(c.parts[0], d, out);
        out.push_back(Marker{Marker::Kind::BracketSphere, static_cast<long>(d) - 1});
        writtenMarkers(c.parts[1], d, out);
        return;
    }
}

void writtenMarkers(const Product& p, int d, std::vector<Marker>& out) {
    for (const Cell& c : p)
        writtenMarkers(c, d, out);
}

namespace {

// (found, marker degree after the label within this node)
std::pair<bool, long> afterInCell(const Cell& c, int label, int d);

std::pair<bool, long> afterInProduct(const Product& p, int label, int d) {
    bool found = false;
    long after = 0;
    for (const Cell& c : p) {
        if (found) {
            after += degreeOf(c, d); // a cell's degree is the sum of its marker degrees
            continue;
        }
        auto [f, a] = afterInCell(c, label, d);
        if (f) {
            found = true;
            after += a;
        }
    }
    return {found, after};
}

std::pair<bool, long> afterInCell(const Cell& c, int label, int d) {
    switch (c.kind) {
    case Cell::Kind::Var:
        return {c.label == label, 0};
    case Cell::Kind::Brace: {
        // The brace's own sphere is marked at "{", before every argument.
        bool found = false;
        long after = 0;
        for (const Product& arg : c.parts) {
            if (found) {
                after += degreeOf(arg, d);
                continue;
            }
            auto [f, a] = afterInProduct(arg, label, d);
            if (f) {
                found = true;
                after += a;
            }
        }
        return {found, after};
    }
    case Cell::Kind::Bracket: {
        auto [fl, al] = afterInProduct(c.parts[0], label, d);
        if (fl)
            return {true, al + (d - 1) + degreeOf(c.parts[1], d)};
        auto [fr, ar] = afterInProduct(c.parts[1], label, d);
        return {fr, ar};
    }
    }
    return {false, 0};
}

} // namespace

long markerDegreeAfterLabel(const Product& p, int label, int d) {
    auto [found, after] = afterInProduct(p, label, d);
    if (!found)
        throw InternalError("label x" + std::to_string(label) + " not present in monomial");
    return after;
}

std::string toString(const Cell& c) {
    switch (c.kind) {
    case Cell::Kind::Var:
        return "x" + std::to_string(c.label);
    case Cell::Kind::Brace: {
        std::string s = "{";
        for (std::size_t i = 0; i < c.parts.size(); ++i) {
            if (i)
                s += ",";
            s += toString(c.parts[i]);
        }
        return s + "}";
    }
    case Cell::Kind::Bracket:
        return "[" + toString(c.parts[0]) + "," + toString(c.parts[1]) + "]";
    }
    return "?";
}

std::string toString(const Product& p) {
    if (p.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            s += "*";
        s += toString(p[i]);
    }
    return s;
}

std::string toString(const Monomial& m) { return toString(m.factors); }

} // namespace overlap
