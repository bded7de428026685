#ifndef OVERLAP_FORESTS_HPP
#define OVERLAP_FORESTS_HPP

#include "overlap/ambient.hpp"

#include <string>
#include <utility>
#include <vector>

namespace overlap {

// Admissible k-forest data: square vertices carry (k-1)-element label
// subsets and have degree (k-2)d, round vertices carry one label, and each
// oriented edge has degree d-1.  Every round vertex is either connected to a
// single square or isolated; every square touches at least one round vertex.
// The orientation set orders all edges and squares and encodes the
// coorientation of the dual chain.
struct Forest {
    struct Edge {
        int square;       // index into squares
        int round;        // index into rounds
        bool towardRound; // arrow direction
    };
    struct Item {
        enum class Type { Edge, Square };
        Type type;
        int index;
        friend bool operator==(const Item&, const Item&) = default;
    };

    int n = 0;
    int k = 2;
    std::vector<std::vector<int>> squares; // each sorted, size k-1
    std::vector<int> rounds;               // one label per round vertex
    std::vector<Edge> edges;
    std::vector<Item> orientation;
};

void validateForest(const Forest& f);

long forestDegree(const Forest& f, int d);

long itemDegree(const Forest& f, const Forest::Item& item, int d);

// Flips one arrow; costs (-1)^d.
std::pair<Forest, int> reverseEdge(const Forest& f, int edgeIndex, int d);

// Reorders the orientation set; the sign is Koszul in the item degrees.
std::pair<Forest, int> reorderOrientation(const Forest& f,
                                          const std::vector<Forest::Item>& newOrder, int d);

// Coefficient of the l-th summand of the brace pairing:
// Psi({x_1,...,x_k}) pairs the l-pulled tree with (-1)^((l-1)d).
int psiBraceCoefficient(int k, int d, int l);

// Step-by-step record of a sign derivation.
struct SignLedger {
    struct Step {
        std::string description;
        int sign;
    };
    std::vector<Step> steps;
    int product = 1;

    void push(std::string description, int sign) {
        steps.push_back({std::move(description), sign});
        product *= sign;
    }
};

// Reproduces the sign derivation for the brace-in-brace expansion: the base
// pairing (-1)^((k1-2)d), the arrow reversal (-1)^d and orientation-set
// reorder (-1)^(d-1) giving the running sign (-1)^(k1 d - 1), the last
// summand's coefficient (-1)^((k2-1)d), and the independent product-of-trees
// evaluation of the left side.  Throws InternalError if the two evaluations
// of the total sign disagree.
struct TheoremSignCheck {
    SignLedger ledger;
    int rightSide = 1; // derivation through the moves
    int leftSide = 1;  // product-of-trees pairing
    int expected = 1;  // (-1)^((k1+k2-1)d - 1)
};

TheoremSignCheck verifyTheoremSign(int k1, int k2, int d);

} // namespace overlap

#endif
