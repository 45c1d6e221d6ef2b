#pragma once

#include <optional>
#include <vector>

namespace pssk {

// Retrieval quality of a distance matrix, percent-scaled to [0, 100].
// Measures that need at least one same-class item per query (everything
// except NN) are absent when no query has one.
struct RetrievalMeasures {
    double nn = 0.0;
    std::optional<double> t1;
    std::optional<double> t2;
    std::optional<double> em;   // E-measure at cutoff min(32, n-1)
    std::optional<double> dcg;  // log2-discounted, normalized by the ideal
};

// Every item queries the rest, ranked by ascending distance with ties broken
// by index; with c = class size - 1: T1 counts class members in the top c,
// T2 in the top 2c. The matrix must be symmetric with a zero diagonal.
RetrievalMeasures retrieval_eval(const std::vector<double>& distances, std::size_t n,
                                 const std::vector<int>& labels);

}  // namespace pssk
