#ifndef OVERLAP_VERIFY_HPP
#define OVERLAP_VERIFY_HPP

#include "overlap/operad.hpp"

#include <random>
#include <string>
#include <vector>

namespace overlap {

struct VerifyCase {
    std::string id;
    bool pass = false;
    std::string detail; // diagnostic on failure
};

struct SuiteResult {
    std::string name;
    std::vector<VerifyCase> cases;

    bool allPass() const {
        for (const auto& c : cases)
            if (!c.pass)
                return false;
        return true;
    }
    std::size_t failCount() const {
        std::size_t n = 0;
        for (const auto& c : cases)
            if (!c.pass)
                ++n;
        return n;
    }
};

// Every defining relation vanishes under normalize: brace symmetry (all
// adjacent transpositions), generalized Jacobi, the two Leibniz relations,
// their composite-cell generalizations, the brace-in-brace expansion in both
// forms, and generalized Jacobi instances with a brace grafted into a slot.
SuiteResult relationsSuite(const std::vector<int>& ds, const std::vector<int>& ks);

// Composition triviality matrix against the proposition, the worked
// composition examples, operadic unit, action wrappers and degree additivity.
SuiteResult compositionSuite(const std::vector<int>& ds);

// The sign-ledger derivation for all requested (k1, k2, d).
SuiteResult signsSuite(const std::vector<int>& ks, const std::vector<int>& ds);

// Randomized rewrite orders agree with the canonical pipeline; normalize is
// idempotent; labels and degrees are preserved.
SuiteResult confluenceSuite(const std::vector<int>& ds, const std::vector<int>& ks,
                            int trials, unsigned seed);

// parse(print(e)) == e over random grammar-shaped syntax trees.
SuiteResult roundTripSuite(int trials, unsigned seed);

// Random valid expression over the given context (arbitrary sums/products/
// braces/brackets respecting multilinearity and capacity).
ExprPtr randomNormalizableExpr(std::mt19937& rng, const AmbientContext& ctx);

struct RandomAst {
    ExprPtr expr;
    AmbientContext ctx;
};
// Random parser-shaped syntax tree (for round-trip testing); the context is
// chosen so capacity never rejects.
RandomAst randomAst(std::mt19937& rng);

// Thread cap honoring OVERLAP_OPERAD_THREADS.
unsigned verifyThreadCap();

} // namespace overlap

#endif
