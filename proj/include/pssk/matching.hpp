#pragma once

#include <vector>

#include "pssk/diagram.hpp"

namespace pssk {

// Augmented assignment problem between two diagrams: rows are F's points
// followed by one diagonal slot per point of G, columns are G's points
// followed by one diagonal slot per point of F. Point-to-diagonal cost is the
// l-inf distance to the point's own diagonal projection, (death - birth)/2;
// diagonal-to-diagonal cost is 0. `costs` holds the ground distances raised
// to `power` (1 for the bottleneck case).
struct MatchingProblem {
    std::size_t size = 0;
    std::vector<double> costs;  // row-major, size x size

    double at(std::size_t i, std::size_t j) const { return costs[i * size + j]; }
};

MatchingProblem build_matching_problem(const PersistenceDiagram& f, const PersistenceDiagram& g,
                                       double power);

// Minimum total cost of a perfect assignment (Hungarian algorithm, O(n^3)).
double solve_assignment(const MatchingProblem& problem);

// Exact bottleneck distance: binary search over the finite candidate set of
// pairwise l-inf distances and diagonal distances, with bipartite-matching
// feasibility at each threshold.
double bottleneck_distance(const PersistenceDiagram& f, const PersistenceDiagram& g);

// Exact p-Wasserstein distance via optimal assignment; p = infinity delegates
// to the bottleneck distance. Throws BadExponent for p < 1.
double wasserstein_distance(const PersistenceDiagram& f, const PersistenceDiagram& g, double p);

// Oracle: exact minimum over all permutations of the augmented problem.
// Throws TooLarge when the augmented size exceeds 8.
double wasserstein_bruteforce(const PersistenceDiagram& f, const PersistenceDiagram& g, double p);

}  // namespace pssk
