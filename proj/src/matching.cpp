#include "pssk/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pssk/errors.hpp"

namespace pssk {

namespace {

double linf(const DiagramPoint& a, const DiagramPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_gap(const DiagramPoint& p) { return 0.5 * persistence(p); }

// Total order on canonical diagrams; solving every pair in a fixed argument
// order makes the distances bitwise symmetric.
bool diagram_before(const PersistenceDiagram& f, const PersistenceDiagram& g) {
    const auto& a = f.points();
    const auto& b = g.points();
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].birth != b[i].birth) return a[i].birth < b[i].birth;
        if (a[i].death != b[i].death) return a[i].death < b[i].death;
    }
    return a.size() < b.size();
}

}  // namespace

MatchingProblem build_matching_problem(const PersistenceDiagram& f, const PersistenceDiagram& g,
                                       double power) {
    const auto& fp = f.points();
    const auto& gp = g.points();
    const std::size_t n = fp.size(), m = gp.size(), size = n + m;
    MatchingProblem problem{size, std::vector<double>(size * size, 0.0)};
    auto cost = [power](double d) { return power == 1.0 ? d : std::pow(d, power); };
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            double d;
            if (i < n && j < m) {
                d = linf(fp[i], gp[j]);
            } else if (i < n) {
                d = diagonal_gap(fp[i]);
            } else if (j < m) {
                d = diagonal_gap(gp[j]);
            } else {
                continue;  // diagonal-to-diagonal stays 0
            }
            problem.costs[i * size + j] = cost(d);
        }
    }
    return problem;
}

double solve_assignment(const MatchingProblem& problem) {
    const std::size_t n = problem.size;
    if (n == 0) return 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Hungarian algorithm with row/column potentials, 1-based scratch arrays.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            std::size_t i0 = match[j0], j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = problem.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += problem.at(match[j] - 1, j - 1);
    return total;
}

namespace {

// Perfect matching feasibility on the threshold graph at distance t.
// Left/right vertices are the real points followed by interchangeable
// diagonal slots; Kuhn's augmenting paths.
bool feasible_at(const std::vector<DiagramPoint>& fp, const std::vector<DiagramPoint>& gp,
                 double t) {
    const std::size_t n = fp.size(), m = gp.size(), size = n + m;
    auto has_edge = [&](std::size_t i, std::size_t j) {
        if (i < n && j < m) return linf(fp[i], gp[j]) <= t;
        if (i < n) return diagonal_gap(fp[i]) <= t;
        if (j < m) return diagonal_gap(gp[j]) <= t;
        return true;
    };
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_right(size, npos);
    std::vector<bool> visited(size);

    auto augment = [&](auto&& self, std::size_t i) -> bool {
        for (std::size_t j = 0; j < size; ++j) {
            if (visited[j] || !has_edge(i, j)) continue;
            visited[j] = true;
            if (match_right[j] == npos || self(self, match_right[j])) {
                match_right[j] = i;
                return true;
            }
        }
        return false;
    };

    for (std::size_t i = 0; i < size; ++i) {
        std::fill(visited.begin(), visited.end(), false);
        if (!augment(augment, i)) return false;
    }
    return true;
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& f, const PersistenceDiagram& g) {
    if (diagram_before(g, f)) return bottleneck_distance(g, f);
    const auto& fp = f.points();
    const auto& gp = g.points();
    if (fp.empty() && gp.empty()) return 0.0;

    std::vector<double> candidates{0.0};
    for (const auto& p : fp) candidates.push_back(diagonal_gap(p));
    for (const auto& q : gp) candidates.push_back(diagonal_gap(q));
    for (const auto& p : fp) {
        for (const auto& q : gp) candidates.push_back(linf(p, q));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // The optimum is attained at a candidate value; find the smallest feasible one.
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible_at(fp, gp, candidates[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return candidates[lo];
}

double wasserstein_distance(const PersistenceDiagram& f, const PersistenceDiagram& g, double p) {
    if (std::isinf(p) && p > 0) return bottleneck_distance(f, g);
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw BadExponent("wasserstein_distance requires p >= 1 or p = inf");
    }
    if (diagram_before(g, f)) return wasserstein_distance(g, f, p);
    MatchingProblem problem = build_matching_problem(f, g, p);
    double total = solve_assignment(problem);
    return p == 1.0 ? total : std::pow(total, 1.0 / p);
}

double wasserstein_bruteforce(const PersistenceDiagram& f, const PersistenceDiagram& g, double p) {
    const bool bottleneck = std::isinf(p) && p > 0;
    if (!bottleneck && (!(p >= 1.0) || !std::isfinite(p))) {
        throw BadExponent("wasserstein_bruteforce requires p >= 1 or p = inf");
    }
    const std::size_t size = f.size() + g.size();
    if (size > 8) {
        throw TooLarge("wasserstein_bruteforce: augmented size " + std::to_string(size) + " > 8");
    }
    if (size == 0) return 0.0;

    MatchingProblem problem = build_matching_problem(f, g, bottleneck ? 1.0 : p);
    std::vector<std::size_t> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            double c = problem.at(i, perm[i]);
            total = bottleneck ? std::max(total, c) : total + c;
        }
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (bottleneck || p == 1.0) return best;
    return std::pow(best, 1.0 / p);
}

}  // namespace pssk
