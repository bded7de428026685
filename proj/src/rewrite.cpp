#include "overlap/rewrite.hpp"

#include <algorithm>
#include <limits>

namespace overlap {

namespace {

using LinComb = std::vector<std::pair<Int, Product>>;

// Shifted degree in which the bracket is an honest graded Lie bracket.
long shifted(const Product& p, int d) { return degreeOf(p, d) + d - 1; }
long shifted(const Cell& c, int d) { return degreeOf(c, d) + d - 1; }

// ---------------------------------------------------------------- lowering

LinComb lowerRec(const Expr& e, int d) {
    switch (e.kind) {
    case Expr::Kind::Var:
        return {{Int(1), Product{Cell::var(e.label)}}};
    case Expr::Kind::Scaled: {
        LinComb body = lowerRec(*e.args[0], d);
        for (auto& [c, p] : body)
            c *= e.coeff;
        return body;
    }
    case Expr::Kind::Sum: {
        LinComb out;
        for (const ExprPtr& t : e.args) {
            LinComb sub = lowerRec(*t, d);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    case Expr::Kind::Product: {
        LinComb out = {{Int(1), Product{}}};
        for (const ExprPtr& f : e.args) {
            LinComb sub = lowerRec(*f, d);
            LinComb next;
            for (const auto& [c0, p0] : out)
                for (const auto& [c1, p1] : sub) {
                    Product p = p0;
                    p.insert(p.end(), p1.begin(), p1.end());
                    next.emplace_back(c0 * c1, std::move(p));
                }
            out = std::move(next);
        }
        return out;
    }
    case Expr::Kind::Bracket:
    case Expr::Kind::Brace: {
        std::vector<std::pair<Int, std::vector<Product>>> partial = {{Int(1), {}}};
        for (const ExprPtr& a : e.args) {
            LinComb sub = lowerRec(*a, d);
            decltype(partial) next;
            for (const auto& [c0, picked] : partial)
                for (const auto& [c1, p1] : sub) {
                    auto grown = picked;
                    grown.push_back(p1);
                    next.emplace_back(c0 * c1, std::move(grown));
                }
            partial = std::move(next);
        }
        LinComb out;
        // Arity-2 braces are brackets: degree (2-1)d-1 = d-1 matches.
        const bool asBracket = e.kind == Expr::Kind::Bracket || e.args.size() == 2;
        for (auto& [c, picked] : partial)
            out.emplace_back(c, asBracket
                                    ? Product{Cell::bracket(picked[0], picked[1])}
                                    : Product{Cell::brace(std::move(picked))});
        return out;
    }
    }
    throw InternalError("unknown expr kind in lower");
}

// ------------------------------------------------------------------- paths

// Navigation into a monomial: each step selects a factor cell and, unless it
// is the final step (part == -1), one of its parts.
struct PathStep {
    int factor;
    int part;
};
using Path = std::vector<PathStep>;

const Cell& cellAt(const Product& p, const Path& path) {
    const Product* cur = &p;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        cur = &(*cur)[path[i].factor].parts[path[i].part];
    return (*cur)[path.back().factor];
}

// Replaces the cell at `path` by a sequence of cells spliced in place.
Product spliceAt(const Product& p, const Path& path, std::size_t depth,
                 const std::vector<Cell>& replacement) {
    Product out = p;
    if (depth + 1 == path.size()) {
        out.erase(out.begin() + path[depth].factor);
        out.insert(out.begin() + path[depth].factor, replacement.begin(), replacement.end());
        return out;
    }
    Cell& c = out[path[depth].factor];
    c.parts[path[depth].part] =
        spliceAt(c.parts[path[depth].part], path, depth + 1, replacement);
    return out;
}

// ----------------------------------------------------- flat-brace tidy pass

// Sorts the arguments of every flat brace ascending, each adjacent
// transposition costing (-1)^d.
int tidyCell(Cell& c, int d);

int tidyProduct(Product& p, int d) {
    int sign = 1;
    for (Cell& c : p)
        sign *= tidyCell(c, d);
    return sign;
}

int tidyCell(Cell& c, int d) {
    if (c.isVar())
        return 1;
    int sign = 1;
    for (Product& part : c.parts)
        sign *= tidyProduct(part, d);
    if (c.isFlatBrace()) {
        std::vector<int> labels;
        labels.reserve(c.parts.size());
        for (const Product& arg : c.parts)
            labels.push_back(arg[0].label);
        SignedCell sorted = makeFlatBrace(std::move(labels), d);
        sign *= sorted.sign;
        c = std::move(sorted.cell);
    }
    return sign;
}

Element tidy(const Element& el) {
    Element out(el.ctx());
    for (const auto& [m, coeff] : el.terms()) {
        Monomial t = m;
        int sign = tidyProduct(t.factors, el.ctx().d);
        out.add(t, coeff * sign);
    }
    return out;
}

// ------------------------------------------------------------ purification

bool isSingletonArg(const Product& arg) { return arg.size() == 1 && arg[0].isVar(); }

bool hasImpureBrace(const Cell& c) {
    if (c.isVar())
        return false;
    if (c.isBrace()) {
        for (const Product& arg : c.parts)
            if (!isSingletonArg(arg))
                return true;
    }
    for (const Product& part : c.parts)
        for (const Cell& sub : part)
            if (hasImpureBrace(sub))
                return true;
    return false;
}

bool braceArgsAllPure(const Cell& brace) {
    for (const Product& arg : brace.parts)
        for (const Cell& sub : arg)
            if (hasImpureBrace(sub))
                return false;
    return true;
}

void findPurifyTargets(const Product& p, Path prefix, std::vector<Path>& out) {
    for (int fi = 0; fi < static_cast<int>(p.size()); ++fi) {
        const Cell& c = p[fi];
        if (c.isVar())
            continue;
        for (int pi = 0; pi < static_cast<int>(c.parts.size()); ++pi) {
            Path sub = prefix;
            sub.push_back({fi, pi});
            findPurifyTargets(c.parts[pi], sub, out);
        }
        if (c.isBrace() && !c.isFlatBrace() && braceArgsAllPure(c)) {
            Path here = prefix;
            here.push_back({fi, -1});
            out.push_back(here);
        }
    }
}

// One rewrite step on the impure brace at `path`; returns replacement terms.
std::vector<std::pair<Int, Monomial>> purifyStep(const Monomial& m, const Path& path, int d,
                                                 std::mt19937* rng) {
    const Cell& brace = cellAt(m.factors, path);
    std::vector<Product> args = brace.parts;
    const int arity = static_cast<int>(args.size());
    const long braceSphere = static_cast<long>(arity - 1) * d - 1;

    std::vector<int> composites;
    for (int i = 0; i < arity; ++i)
        if (!isSingletonArg(args[i]))
            composites.push_back(i);
    if (composites.empty())
        throw InternalError("purify step on a flat brace");
    int pick = composites.front();
    if (rng && composites.size() > 1)
        pick = composites[(*rng)() % composites.size()];

    // Move the chosen argument to the last slot.
    int sign = 1;
    for (int t = pick; t + 1 < arity; ++t) {
        sign *= signPow(d + degreeOf(args[t], d) * degreeOf(args[t + 1], d));
        std::swap(args[t], args[t + 1]);
    }
    Product w = std::move(args.back());
    args.pop_back();
    const std::vector<Product>& spectators = args;

    auto braceWithLast = [&](Product last) {
        std::vector<Product> wargs = spectators;
        wargs.push_back(std::move(last));
        return Cell::brace(std::move(wargs));
    };

    std::vector<std::pair<Int, std::vector<Cell>>> replacements;
    if (w.size() >= 2) {
        // {A1..Am-1, Y*Z} = (-1)^(|Y| b) Y*{A..,Z} + {A..,Y}*Z,  b = brace degree
        Cell y = w.front();
        Product z(w.begin() + 1, w.end());
        long yDeg = degreeOf(y, d);
        std::vector<Cell> t1{y, braceWithLast(z)};
        replacements.emplace_back(Int(sign * signPow(yDeg * braceSphere)), std::move(t1));
        std::vector<Cell> t2{braceWithLast(Product{y})};
        t2.insert(t2.end(), z.begin(), z.end());
        replacements.emplace_back(Int(sign), std::move(t2));
    } else if (w[0].isBracket()) {
        // {A.., [Y,Z]} = (-1)^((|Y|+d-1) b) [Y,{A..,Z}] + [{A..,Y},Z]
        Product y = w[0].parts[0];
        Product z = w[0].parts[1];
        long yShift = shifted(y, d);
        std::vector<Cell> t1{Cell::bracket(y, Product{braceWithLast(z)})};
        replacements.emplace_back(Int(sign * signPow(yShift * braceSphere)), std::move(t1));
        std::vector<Cell> t2{Cell::bracket(Product{braceWithLast(y)}, z)};
        replacements.emplace_back(Int(sign), std::move(t2));
    } else if (w[0].isBrace()) {
        // {A1..Am-1, {y1..yp}} = sum_l (-1)^((l-1)d) [y_l, {A.., y1..^l..yp}]
        const Cell& inner = w[0];
        const int p = static_cast<int>(inner.parts.size());
        for (int l = 0; l < p; ++l) {
            std::vector<Product> margs = spectators;
            for (int j = 0; j < p; ++j)
                if (j != l)
                    margs.push_back(inner.parts[j]);
            std::vector<Cell> t{Cell::bracket(inner.parts[l], Product{Cell::brace(margs)})};
            replacements.emplace_back(Int(sign * signPow(static_cast<long>(l) * d)),
                                      std::move(t));
        }
    } else {
        throw InternalError("composite brace argument of unexpected shape");
    }

    std::vector<std::pair<Int, Monomial>> out;
    out.reserve(replacements.size());
    for (auto& [coeff, cells] : replacements)
        out.emplace_back(std::move(coeff), Monomial{spliceAt(m.factors, path, 0, cells)});
    return out;
}

// ---------------------------------------------------- bracket Leibniz stage

// Finds a bracket cell with a multi-factor operand.
bool findBracketProductTarget(const Product& p, Path prefix, Path& out) {
    for (int fi = 0; fi < static_cast<int>(p.size()); ++fi) {
        const Cell& c = p[fi];
        if (c.isVar())
            continue;
        if (c.isBracket() && (c.parts[0].size() != 1 || c.parts[1].size() != 1)) {
            out = prefix;
            out.push_back({fi, -1});
            return true;
        }
        for (int pi = 0; pi < static_cast<int>(c.parts.size()); ++pi) {
            Path sub = prefix;
            sub.push_back({fi, pi});
            if (findBracketProductTarget(c.parts[pi], sub, out))
                return true;
        }
    }
    return false;
}

std::vector<std::pair<Int, Monomial>> bracketLeibnizStep(const Monomial& m, const Path& path,
                                                         int d) {
    const Cell& br = cellAt(m.factors, path);
    const Product& left = br.parts[0];
    const Product& right = br.parts[1];
    std::vector<std::pair<Int, std::vector<Cell>>> replacements;
    if (right.size() >= 2) {
        // [a, b*c] = [a,b]*c + (-1)^(|b| <a>) b*[a,c]
        Cell b = right.front();
        Product c(right.begin() + 1, right.end());
        std::vector<Cell> t1{Cell::bracket(left, Product{b})};
        t1.insert(t1.end(), c.begin(), c.end());
        replacements.emplace_back(Int(1), std::move(t1));
        std::vector<Cell> t2{b, Cell::bracket(left, c)};
        replacements.emplace_back(Int(signPow(degreeOf(b, d) * shifted(left, d))),
                                  std::move(t2));
    } else {
        // Multi-factor left operand: antisymmetry first.
        std::vector<Cell> t{Cell::bracket(right, left)};
        replacements.emplace_back(Int(-signPow(shifted(left, d) * shifted(right, d))),
                                  std::move(t));
    }
    std::vector<std::pair<Int, Monomial>> out;
    for (auto& [coeff, cells] : replacements)
        out.emplace_back(std::move(coeff), Monomial{spliceAt(m.factors, path, 0, cells)});
    return out;
}

// ----------------------------------------------------------------- combing

bool containsAtom(const Cell& tree, const Cell& atom) {
    if (tree == atom)
        return true;
    if (!tree.isBracket())
        return false;
    return containsAtom(tree.parts[0][0], atom) || containsAtom(tree.parts[1][0], atom);
}

void collectAtoms(const Cell& tree, std::vector<Cell>& out) {
    if (!tree.isBracket()) {
        out.push_back(tree);
        return;
    }
    collectAtoms(tree.parts[0][0], out);
    collectAtoms(tree.parts[1][0], out);
}

Cell pickTail(const Cell& tree) {
    std::vector<Cell> atoms;
    collectAtoms(tree, atoms);
    const Cell* best = nullptr;
    bool bestBrace = false;
    for (const Cell& a : atoms) {
        bool isBr = a.isBrace();
        if (!best || (isBr && !bestBrace) ||
            (isBr == bestBrace && minLabel(a) < minLabel(*best))) {
            best = &a;
            bestBrace = isBr;
        }
    }
    return *best;
}

struct Comb {
    int sign;
    std::vector<Cell> heads; // outermost first
};

void combTree(const Cell& tree, const Cell& tail, int sign, int d, std::vector<Comb>& out) {
    if (tree == tail) {
        out.push_back(Comb{sign, {}});
        return;
    }
    if (!tree.isBracket())
        throw InternalError("comb reached a non-tail atom");
    const Cell& a = tree.parts[0][0];
    const Cell& b = tree.parts[1][0];
    if (containsAtom(a, tail)) {
        // tail on the left: [A,B] = -(-1)^(<A><B>) [B,A]
        combTree(Cell::bracket(tree.parts[1], tree.parts[0]), tail,
                 sign * -signPow(shifted(a, d) * shifted(b, d)), d, out);
        return;
    }
    if (!a.isBracket()) {
        std::size_t base = out.size();
        combTree(b, tail, sign, d, out);
        for (std::size_t i = base; i < out.size(); ++i)
            out[i].heads.insert(out[i].heads.begin(), a);
        return;
    }
    // [[A1,A2],B] = [A1,[A2,B]] - (-1)^(<A1><A2>) [A2,[A1,B]]
    const Product& a1 = a.parts[0];
    const Product& a2 = a.parts[1];
    Cell t1 = Cell::bracket(a1, Product{Cell::bracket(a2, tree.parts[1])});
    Cell t2 = Cell::bracket(a2, Product{Cell::bracket(a1, tree.parts[1])});
    combTree(t1, tail, sign, d, out);
    combTree(t2, tail, sign * -signPow(shifted(a1[0], d) * shifted(a2[0], d)), d, out);
}

// Adjacent singleton heads sort descending; each swap is an application of
// the Jacobi whose correction term dies for k >= 3 (its [x_i,x_j] subtree is
// a positive-degree class of filtration 2).
int sortHeads(std::vector<Cell>& heads, int d) {
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < heads.size(); ++i) {
            if (heads[i].isVar() && heads[i + 1].isVar() &&
                heads[i].label < heads[i + 1].label) {
                std::swap(heads[i], heads[i + 1]);
                sign *= signPow(d - 1);
                changed = true;
            }
        }
    }
    return sign;
}

Cell rebuildComb(const std::vector<Cell>& heads, const Cell& tail) {
    Cell tree = tail;
    for (auto it = heads.rbegin(); it != heads.rend(); ++it)
        tree = Cell::bracket(Product{*it}, Product{tree});
    return tree;
}

// ------------------------------------------------------------- straighten

bool innermostJacobiFire(const Cell& c) {
    if (!c.isBracket() || c.parts[0].size() != 1 || c.parts[1].size() != 1)
        return false;
    const Cell& l = c.parts[0][0];
    const Cell& r = c.parts[1][0];
    return l.isVar() && r.isFlatBrace() && l.label < minLabel(r);
}

void findStraightenTargets(const Product& p, Path prefix, std::vector<Path>& out) {
    for (int fi = 0; fi < static_cast<int>(p.size()); ++fi) {
        const Cell& c = p[fi];
        if (c.isVar())
            continue;
        if (innermostJacobiFire(c)) {
            Path here = prefix;
            here.push_back({fi, -1});
            out.push_back(here);
            continue;
        }
        for (int pi = 0; pi < static_cast<int>(c.parts.size()); ++pi) {
            Path sub = prefix;
            sub.push_back({fi, pi});
            findStraightenTargets(c.parts[pi], sub, out);
        }
    }
}

std::vector<std::pair<Int, Monomial>> straightenStep(const Monomial& m, const Path& path,
                                                     int d) {
    const Cell& pair = cellAt(m.factors, path);
    int i = pair.parts[0][0].label;
    std::vector<int> t{i};
    for (const Product& arg : pair.parts[1][0].parts)
        t.push_back(arg[0].label);
    std::sort(t.begin(), t.end());
    // [x_t1, {T - t1}] = - sum_j (-1)^((j-1)d) [x_tj, {T - tj}], j = 2..|T|
    std::vector<std::pair<Int, Monomial>> out;
    for (std::size_t j = 1; j < t.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t q = 0; q < t.size(); ++q)
            if (q != j)
                rest.push_back(t[q]);
        SignedCell brace = makeFlatBrace(rest, d); // already sorted, sign +1
        std::vector<Cell> cells{
            Cell::bracket(Product{Cell::var(t[j])}, Product{brace.cell})};
        Int coeff = Int(-signPow(static_cast<long>(j) * d) * brace.sign);
        out.emplace_back(std::move(coeff), Monomial{spliceAt(m.factors, path, 0, cells)});
    }
    return out;
}

} // namespace

// ------------------------------------------------------------- public API

Element lower(const Expr& e, const AmbientContext& ctx) {
    validate(e, ctx);
    LinComb terms = lowerRec(e, ctx.d);
    Element out(ctx);
    for (auto& [c, p] : terms)
        out.add(Monomial{std::move(p)}, c);
    return tidy(out);
}

Element purifyBraces(const Element& el, const RewriteOptions& opt) {
    Element cur = tidy(el);
    for (;;) {
        bool fired = false;
        Element next(cur.ctx());
        for (const auto& [m, coeff] : cur.terms()) {
            std::vector<Path> targets;
            findPurifyTargets(m.factors, {}, targets);
            if (targets.empty()) {
                next.add(m, coeff);
                continue;
            }
            fired = true;
            const Path& pick = (opt.rng && targets.size() > 1)
                                   ? targets[(*opt.rng)() % targets.size()]
                                   : targets.front();
            for (auto& [c, mono] : purifyStep(m, pick, cur.ctx().d, opt.rng))
                next.add(mono, coeff * c);
        }
        cur = tidy(next);
        if (!fired)
            return cur;
    }
}

Element filtrationKill(const Element& el) {
    const int k = el.ctx().k;
    if (k < 3)
        return el;
    Element out(el.ctx());
    for (const auto& [m, coeff] : el.terms()) {
        bool dead = false;
        // Braces below the ambient arity bound a disc: Im H_+ B^(m+1) = 0.
        std::vector<const Product*> stack{&m.factors};
        for (std::size_t s = 0; s < stack.size() && !dead; ++s)
            for (const Cell& c : *stack[s]) {
                if (c.isVar())
                    continue;
                if (c.isBrace()) {
                    int arity = static_cast<int>(c.parts.size());
                    if (arity > k)
                        throw InternalError("brace arity exceeds ambient k");
                    if (arity < k) {
                        dead = true;
                        break;
                    }
                }
                for (const Product& part : c.parts)
                    stack.push_back(&part);
            }
        if (!dead)
            for (const Cell& f : m.factors)
                if (f.isBracket() && countBraces(f) == 0) {
                    dead = true;
                    break;
                }
        if (!dead)
            out.add(m, coeff);
    }
    return out;
}

Element combBrackets(const Element& el) {
    const int d = el.ctx().d;
    // Pull products out of bracket operands first.
    Element cur = el;
    for (;;) {
        bool fired = false;
        Element next(cur.ctx());
        for (const auto& [m, coeff] : cur.terms()) {
            Path target;
            if (!findBracketProductTarget(m.factors, {}, target)) {
                next.add(m, coeff);
                continue;
            }
            fired = true;
            for (auto& [c, mono] : bracketLeibnizStep(m, target, d))
                next.add(mono, coeff * c);
        }
        cur = std::move(next);
        if (!fired)
            break;
    }
    // Comb every bracket factor.
    const bool sortable = cur.ctx().k >= 3;
    Element out(cur.ctx());
    for (const auto& [m, coeff] : cur.terms()) {
        std::vector<std::pair<Int, Monomial>> partial{{coeff, Monomial{{}}}};
        for (const Cell& f : m.factors) {
            if (!f.isBracket()) {
                for (auto& [c, mono] : partial)
                    mono.factors.push_back(f);
                continue;
            }
            Cell tail = pickTail(f);
            std::vector<Comb> combs;
            combTree(f, tail, 1, d, combs);
            std::vector<std::pair<Int, Monomial>> next;
            for (auto& [c, mono] : partial)
                for (Comb& comb : combs) {
                    int sign = comb.sign;
                    std::vector<Cell> heads = comb.heads;
                    if (sortable)
                        sign *= sortHeads(heads, d);
                    Monomial grown = mono;
                    grown.factors.push_back(rebuildComb(heads, tail));
                    next.emplace_back(c * sign, std::move(grown));
                }
            partial = std::move(next);
        }
        for (auto& [c, mono] : partial)
            out.add(mono, c);
    }
    return tidy(out);
}

Element jacobiStraighten(const Element& el, const RewriteOptions& opt) {
    const int d = el.ctx().d;
    Element cur = el;
    for (;;) {
        bool fired = false;
        Element next(cur.ctx());
        for (const auto& [m, coeff] : cur.terms()) {
            std::vector<Path> targets;
            findStraightenTargets(m.factors, {}, targets);
            if (targets.empty()) {
                next.add(m, coeff);
                continue;
            }
            fired = true;
            const Path& pick = (opt.rng && targets.size() > 1)
                                   ? targets[(*opt.rng)() % targets.size()]
                                   : targets.front();
            for (auto& [c, mono] : straightenStep(m, pick, d))
                next.add(mono, coeff * c);
        }
        cur = std::move(next);
        if (!fired)
            return cur;
    }
}

Element canonicalize(const Element& el) {
    const int d = el.ctx().d;
    Element out(el.ctx());
    for (const auto& [m, coeff] : el.terms()) {
        Product factors = m.factors;
        int sign = 1;
        for (std::size_t i = 1; i < factors.size(); ++i)
            for (std::size_t j = i; j > 0 && minLabel(factors[j - 1]) > minLabel(factors[j]);
                 --j) {
                sign *= koszulSwapSign(degreeOf(factors[j - 1], d), degreeOf(factors[j], d));
                std::swap(factors[j - 1], factors[j]);
            }
        out.add(Monomial{std::move(factors)}, coeff * sign);
    }
    return out;
}

Element normalizeElement(Element el, const RewriteOptions& opt) {
    el = purifyBraces(el, opt);
    for (int iter = 0; iter < 256; ++iter) {
        Element before = el;
        el = filtrationKill(el);
        el = combBrackets(el);
        el = filtrationKill(el);
        el = jacobiStraighten(el, opt);
        el = canonicalize(el);
        if (el == before)
            return el;
    }
    throw InternalError("normalization did not reach a fixpoint");
}

Element normalize(const Expr& e, const AmbientContext& ctx, const RewriteOptions& opt) {
    return normalizeElement(lower(e, ctx), opt);
}

Element normalize(const std::string& text, const AmbientContext& ctx,
                  const RewriteOptions& opt) {
    return normalize(*parse(text, ctx), ctx, opt);
}

} // namespace overlap
