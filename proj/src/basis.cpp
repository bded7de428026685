#include "overlap/basis.hpp"

#include <algorithm>

namespace overlap {

namespace {

// Subsets of `pool` of given size that contain pool[0].
void subsetsContainingFirst(const std::vector<int>& pool, std::size_t size,
                            std::vector<std::vector<int>>& out) {
    std::vector<int> cur{pool[0]};
    // Simple recursive chooser over pool[1..].
    struct Rec {
        const std::vector<int>& pool;
        std::size_t size;
        std::vector<std::vector<int>>& out;
        std::vector<int> cur;
        void go(std::size_t idx) {
            if (cur.size() == size) {
                out.push_back(cur);
                return;
            }
            if (idx >= pool.size() || pool.size() - idx < size - cur.size())
                return;
            cur.push_back(pool[idx]);
            go(idx + 1);
            cur.pop_back();
            go(idx + 1);
        }
    } rec{pool, size, out, std::move(cur)};
    rec.go(1);
}

Cell braceCell(const std::vector<int>& labels) {
    std::vector<Product> args;
    args.reserve(labels.size());
    for (int l : labels)
        args.push_back(Product{Cell::var(l)});
    return Cell::brace(std::move(args));
}

Cell rebuildComb(const std::vector<Cell>& heads, const Cell& tail) {
    Cell tree = tail;
    for (auto it = heads.rbegin(); it != heads.rend(); ++it)
        tree = Cell::bracket(Product{*it}, Product{tree});
    return tree;
}

bool canonicalHeads(const std::vector<Cell>& heads, const Cell& tail, int k) {
    if (k < 3)
        return true; // free head order at k = 2
    for (std::size_t i = 0; i + 1 < heads.size(); ++i)
        if (heads[i].isVar() && heads[i + 1].isVar() &&
            heads[i].label < heads[i + 1].label)
            return false;
    if (!heads.empty() && heads.back().isVar() && tail.isBrace() &&
        heads.back().label < minLabel(tail))
        return false;
    return true;
}

// All trees over the given atoms (one brace designated tail for k >= 3, the
// smallest atom for k = 2), with canonical head arrangements.
void treeFactors(std::vector<Cell> atoms, int k, std::vector<Cell>& out) {
    // Tail: brace with the smallest label if any brace exists, else the
    // smallest atom.
    std::size_t tailIdx = 0;
    bool tailBrace = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        bool isBr = atoms[i].isBrace();
        if (i == 0 || (isBr && !tailBrace) ||
            (isBr == tailBrace && minLabel(atoms[i]) < minLabel(atoms[tailIdx]))) {
            tailIdx = i;
            tailBrace = isBr;
        }
    }
    Cell tail = atoms[tailIdx];
    atoms.erase(atoms.begin() + tailIdx);
    std::sort(atoms.begin(), atoms.end(),
              [](const Cell& a, const Cell& b) { return minLabel(a) < minLabel(b); });
    std::vector<Cell> heads = atoms;
    do {
        if (canonicalHeads(heads, tail, k))
            out.push_back(rebuildComb(heads, tail));
    } while (std::next_permutation(heads.begin(), heads.end(), [](const Cell& a, const Cell& b) {
        return minLabel(a) < minLabel(b);
    }));
}

// All canonical factors whose label set is exactly `labels` (which is sorted
// and contains the globally smallest remaining label first).
void factorsOver(const std::vector<int>& labels, int k, std::vector<Cell>& out) {
    if (labels.size() == 1) {
        out.push_back(Cell::var(labels[0]));
        return;
    }
    if (k >= 3) {
        // b braces of arity k plus singleton atoms.
        const int maxBraces = static_cast<int>(labels.size()) / k;
        for (int b = 1; b <= maxBraces; ++b) {
            // Choose brace label sets; the first brace takes the smallest
            // remaining label, removing ordering ambiguity between braces.
            struct BraceRec {
                int k;
                int want;
                std::vector<std::vector<int>> braces;
                std::vector<int> pool;
                std::vector<Cell>& out;
                void go() {
                    if (static_cast<int>(braces.size()) == want) {
                        std::vector<Cell> atoms;
                        for (const auto& s : braces)
                            atoms.push_back(braceCell(s));
                        for (int l : pool)
                            atoms.push_back(Cell::var(l));
                        if (atoms.size() == 1) {
                            out.push_back(atoms[0]); // bare brace factor
                            return;
                        }
                        treeFactors(std::move(atoms), k, out);
                        return;
                    }
                    std::vector<std::vector<int>> choices;
                    subsetsContainingFirst(pool, k, choices);
                    for (const auto& s : choices) {
                        std::vector<int> rest;
                        for (int l : pool)
                            if (std::find(s.begin(), s.end(), l) == s.end())
                                rest.push_back(l);
                        braces.push_back(s);
                        std::vector<int> saved = pool;
                        pool = rest;
                        go();
                        pool = saved;
                        braces.pop_back();
                    }
                }
            } rec{k, b, {}, labels, out};
            rec.go();
        }
        return;
    }
    // k = 2: trees over singleton atoms only.
    std::vector<Cell> atoms;
    for (int l : labels)
        atoms.push_back(Cell::var(l));
    treeFactors(std::move(atoms), k, out);
}

} // namespace

std::map<long, std::vector<Monomial>> enumerateSpanningSet(const AmbientContext& ctx) {
    ctx.validate();
    std::map<long, std::vector<Monomial>> byDegree;

    struct Rec {
        const AmbientContext& ctx;
        std::map<long, std::vector<Monomial>>& byDegree;
        Monomial cur;
        void go(const std::vector<int>& remaining) {
            if (remaining.empty()) {
                byDegree[degreeOf(cur, ctx.d)].push_back(cur);
                return;
            }
            for (std::size_t size = 1; size <= remaining.size(); ++size) {
                std::vector<std::vector<int>> labelSets;
                subsetsContainingFirst(remaining, size, labelSets);
                for (const auto& ls : labelSets) {
                    std::vector<int> rest;
                    for (int l : remaining)
                        if (std::find(ls.begin(), ls.end(), l) == ls.end())
                            rest.push_back(l);
                    std::vector<Cell> factors;
                    factorsOver(ls, ctx.k, factors);
                    for (const Cell& f : factors) {
                        cur.factors.push_back(f);
                        go(rest);
                        cur.factors.pop_back();
                    }
                }
            }
        }
    } rec{ctx, byDegree, Monomial{}};

    std::vector<int> all;
    for (int l = 1; l <= ctx.n; ++l)
        all.push_back(l);
    rec.go(all);
    return byDegree;
}

std::vector<Monomial> enumerateBasis(const AmbientContext& ctx, long degree) {
    auto byDegree = enumerateSpanningSet(ctx);
    auto it = byDegree.find(degree);
    if (it == byDegree.end())
        return {};
    return it->second;
}

} // namespace overlap
