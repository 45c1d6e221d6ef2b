#include "pssk/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "pssk/errors.hpp"

namespace pssk {

RetrievalMeasures retrieval_eval(const std::vector<double>& distances, std::size_t n,
                                 const std::vector<int>& labels) {
    if (n < 2) throw BadMatrix("retrieval_eval: need at least two items");
    if (distances.size() != n * n) throw BadMatrix("retrieval_eval: matrix size mismatch");
    if (labels.size() != n) throw BadMatrix("retrieval_eval: label count mismatch");
    double scale = 0.0;
    for (double d : distances) scale = std::max(scale, std::abs(d));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(distances[i * n + i]) > 1e-12 * std::max(1.0, scale)) {
            throw BadMatrix("retrieval_eval: nonzero diagonal at " + std::to_string(i));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(distances[i * n + j] - distances[j * n + i]) >
                1e-12 * std::max(1.0, scale)) {
                throw BadMatrix("retrieval_eval: asymmetric matrix");
            }
        }
    }

    std::map<int, std::size_t> class_sizes;
    for (int l : labels) ++class_sizes[l];

    double nn_hits = 0.0;
    double t1_sum = 0.0, t2_sum = 0.0, em_sum = 0.0, dcg_sum = 0.0;
    std::size_t defined_queries = 0;

    std::vector<std::size_t> order(n - 1);
    for (std::size_t q = 0; q < n; ++q) {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != q) order[pos++] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double da = distances[q * n + a], db = distances[q * n + b];
            if (da != db) return da < db;
            return a < b;
        });

        if (labels[order.front()] == labels[q]) nn_hits += 1.0;

        const std::size_t c = class_sizes[labels[q]] - 1;
        if (c == 0) continue;  // T1/T2/EM/DCG are undefined for this query
        ++defined_queries;

        std::size_t in_top_c = 0, in_top_2c = 0;
        const std::size_t lim2 = std::min(2 * c, n - 1);
        for (std::size_t r = 0; r < lim2; ++r) {
            if (labels[order[r]] == labels[q]) {
                if (r < c) ++in_top_c;
                ++in_top_2c;
            }
        }
        t1_sum += static_cast<double>(in_top_c) / static_cast<double>(c);
        t2_sum += static_cast<double>(in_top_2c) / static_cast<double>(c);

        const std::size_t cutoff = std::min<std::size_t>(32, n - 1);
        std::size_t in_cutoff = 0;
        for (std::size_t r = 0; r < cutoff; ++r) {
            if (labels[order[r]] == labels[q]) ++in_cutoff;
        }
        if (in_cutoff > 0) {
            double precision = static_cast<double>(in_cutoff) / static_cast<double>(cutoff);
            double recall = static_cast<double>(in_cutoff) / static_cast<double>(c);
            em_sum += 2.0 * precision * recall / (precision + recall);
        }

        double dcg = 0.0, ideal = 0.0;
        for (std::size_t r = 0; r < n - 1; ++r) {
            double discount = r == 0 ? 1.0 : 1.0 / std::log2(static_cast<double>(r + 1));
            if (labels[order[r]] == labels[q]) dcg += discount;
            if (r < c) ideal += discount;
        }
        dcg_sum += dcg / ideal;
    }

    RetrievalMeasures m;
    m.nn = 100.0 * nn_hits / static_cast<double>(n);
    if (defined_queries > 0) {
        const double k = static_cast<double>(defined_queries);
        m.t1 = 100.0 * t1_sum / k;
        m.t2 = 100.0 * t2_sum / k;
        m.em = 100.0 * em_sum / k;
        m.dcg = 100.0 * dcg_sum / k;
    }
    return m;
}

}  // namespace pssk
