#include "pssk/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pssk/errors.hpp"
#include "pssk/io.hpp"

namespace pssk {

double PiecewiseLinear::eval(double x) const {
    if (t.empty() || x <= t.front() || x >= t.back()) return 0.0;
    // First breakpoint > x; segment [it-1, it] contains x.
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - t.begin());
    std::size_t lo = hi - 1;
    double w = (x - t[lo]) / (t[hi] - t[lo]);
    return y[lo] + w * (y[hi] - y[lo]);
}

namespace {

double tent(const DiagramPoint& p, double x) {
    return std::max(0.0, std::min(x - p.birth, p.death - x));
}

}  // namespace

Landscape build_landscape(const PersistenceDiagram& d) {
    std::vector<DiagramPoint> pts;
    for (const auto& p : d.points()) {
        if (persistence(p) > 0.0) pts.push_back(p);
    }
    Landscape out;
    if (pts.empty()) return out;

    // Slopes are only +-1, so every slope change of a k-th-max layer happens
    // at a birth, a death, or a rising/falling crossing (b_i + d_j)/2.
    std::vector<double> grid;
    grid.reserve(pts.size() * (pts.size() + 2));
    for (const auto& p : pts) {
        grid.push_back(p.birth);
        grid.push_back(p.death);
    }
    for (const auto& p : pts) {
        for (const auto& q : pts) {
            grid.push_back(0.5 * (p.birth + q.death));
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // values[c] = tent heights at grid[c], sorted descending.
    std::vector<std::vector<double>> values(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        auto& v = values[c];
        v.reserve(pts.size());
        for (const auto& p : pts) v.push_back(tent(p, grid[c]));
        std::sort(v.begin(), v.end(), std::greater<>());
    }

    for (std::size_t k = 0; k < pts.size(); ++k) {
        std::size_t first = grid.size(), last = 0;
        for (std::size_t c = 0; c < grid.size(); ++c) {
            if (values[c][k] > 0.0) {
                first = std::min(first, c);
                last = c;
            }
        }
        if (first == grid.size()) break;  // layer k is zero, so are the rest
        PiecewiseLinear layer;
        // Keep one zero breakpoint on each side of the support. The extreme
        // grid abscissae (min birth, max death) always evaluate to zero, so
        // the support never touches the grid ends.
        if (first > 0) --first;
        if (last + 1 < grid.size()) ++last;
        for (std::size_t c = first; c <= last; ++c) {
            layer.t.push_back(grid[c]);
            layer.y.push_back(values[c][k]);
        }
        out.layers.push_back(std::move(layer));
    }
    return out;
}

namespace {

// Exact integral of the product of two piecewise-linear functions over one
// interval where both are linear (Simpson is exact for quadratics).
double product_integral(const PiecewiseLinear& a, const PiecewiseLinear& b, double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    return (hi - lo) / 6.0 *
           (a.eval(lo) * b.eval(lo) + 4.0 * a.eval(mid) * b.eval(mid) + a.eval(hi) * b.eval(hi));
}

double layer_inner_product(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    // Merge breakpoints; between consecutive ones both functions are linear.
    std::vector<double> knots;
    knots.reserve(a.t.size() + b.t.size());
    knots.insert(knots.end(), a.t.begin(), a.t.end());
    knots.insert(knots.end(), b.t.begin(), b.t.end());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    double lo = std::max(a.t.front(), b.t.front());
    double hi = std::min(a.t.back(), b.t.back());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double l = std::max(lo, knots[i]);
        double h = std::min(hi, knots[i + 1]);
        if (h > l) sum += product_integral(a, b, l, h);
    }
    return sum;
}

}  // namespace

double landscape_kernel(const PersistenceDiagram& f, const PersistenceDiagram& g) {
    Landscape lf = build_landscape(f);
    Landscape lg = build_landscape(g);
    std::size_t layers = std::min(lf.layers.size(), lg.layers.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < layers; ++k) {
        sum += layer_inner_product(lf.layers[k], lg.layers[k]);
    }
    return sum;
}

double landscape_distance(const PersistenceDiagram& f, const PersistenceDiagram& g) {
    double d2 = landscape_kernel(f, f) + landscape_kernel(g, g) - 2.0 * landscape_kernel(f, g);
    return std::sqrt(std::max(0.0, d2));
}

namespace {

double linf(const DiagramPoint& a, const DiagramPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double pair_cost(const DiagramPoint& u, double dist) {
    return persistence(u) * dist * dist + (2.0 / 3.0) * dist * dist * dist;
}

// Minimum over all bijections of the diagonally augmented problem. Matching
// an unmatched point to its own diagonal projection dominates every other
// diagonal slot (the cost is increasing in the l-inf distance and the own
// projection is the nearest diagonal point), so only the partial matching
// between real points has to be enumerated.
double enumerate_bijections(const std::vector<DiagramPoint>& f, const std::vector<DiagramPoint>& g,
                            std::size_t i, std::vector<bool>& used, double acc, double best) {
    if (acc >= best) return best;
    if (i == f.size()) {
        double total = acc;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (!used[j]) {
                double h = 0.5 * persistence(g[j]);
                total += (2.0 / 3.0) * h * h * h;
            }
        }
        return std::min(best, total);
    }
    // f[i] to its diagonal projection
    double h = 0.5 * persistence(f[i]);
    best = enumerate_bijections(f, g, i + 1, used, acc + pair_cost(f[i], h), best);
    // f[i] to each unused g point
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        best = enumerate_bijections(f, g, i + 1, used, acc + pair_cost(f[i], linf(f[i], g[j])), best);
        used[j] = false;
    }
    return best;
}

}  // namespace

double landscape_stability_rhs(const PersistenceDiagram& f, const PersistenceDiagram& g) {
    if (f.size() > 7 || g.size() > 7) {
        throw TooLarge("landscape_stability_rhs: refusing factorial enumeration above 7 points");
    }
    std::vector<bool> used(g.size(), false);
    double best = enumerate_bijections(f.points(), g.points(), 0, used, 0.0,
                                       std::numeric_limits<double>::infinity());
    return std::sqrt(std::max(0.0, best));
}

std::string landscape_to_csv(const Landscape& l) {
    std::ostringstream out;
    out << "layer,t,y\n";
    for (std::size_t k = 0; k < l.layers.size(); ++k) {
        const auto& layer = l.layers[k];
        for (std::size_t i = 0; i < layer.t.size(); ++i) {
            out << (k + 1) << "," << format_real(layer.t[i]) << "," << format_real(layer.y[i]) << "\n";
        }
    }
    return out.str();
}

}  // namespace pssk
