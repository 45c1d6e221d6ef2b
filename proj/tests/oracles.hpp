#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "pssk/diagram.hpp"
#include "pssk/filtration.hpp"
#include "pssk/rng.hpp"

namespace oracles {

// Dim-0 pairing of a 1D field by explicit sublevel-set component tracking:
// sweep the distinct sample values; at each threshold add vertices and edges
// and record a (birth, death) pair whenever two components merge. The merge
// bookkeeping never needs a tie rule because the emitted multiset is the same
// whichever component survives.
inline pssk::PersistenceDiagram dim0_bruteforce(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<double> thresholds(values);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> component(n, none);  // component id per vertex
    std::map<std::size_t, double> birth;          // component id -> birth value
    std::size_t next_id = 0;
    std::vector<pssk::DiagramPoint> points;

    for (double t : thresholds) {
        for (std::size_t i = 0; i < n; ++i) {
            if (component[i] == none && values[i] <= t) {
                component[i] = next_id;
                birth[next_id] = values[i];
                ++next_id;
            }
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::max(values[i], values[i + 1]) > t) continue;
            std::size_t a = component[i], b = component[i + 1];
            if (a == b) continue;
            double ba = birth[a], bb = birth[b];
            double young = std::max(ba, bb);
            if (young < t) points.push_back({young, t});
            // merge b into a
            for (auto& c : component) {
                if (c == b) c = a;
            }
            birth[a] = std::min(ba, bb);
            birth.erase(b);
        }
    }
    return pssk::PersistenceDiagram(std::move(points), 0);
}

// k-th largest tent value at a single abscissa, straight from the definition.
inline double kth_tent_value(const pssk::PersistenceDiagram& d, std::size_t k, double t) {
    std::vector<double> values;
    values.reserve(d.size());
    for (const auto& p : d.points()) {
        values.push_back(std::max(0.0, std::min(t - p.birth, p.death - t)));
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return k < values.size() ? values[k] : 0.0;
}

// Feature map evaluated from its formula; local to the oracle so the
// integration check does not share code with the production kernel.
inline double feature_map(const pssk::PersistenceDiagram& d, double sigma, double x1, double x2) {
    double sum = 0.0;
    for (const auto& p : d.points()) {
        double dx = x1 - p.birth, dy = x2 - p.death;
        double mx = x1 - p.death, my = x2 - p.birth;
        sum += std::exp(-(dx * dx + dy * dy) / (4.0 * sigma)) -
               std::exp(-(mx * mx + my * my) / (4.0 * sigma));
    }
    return sum / (4.0 * 3.14159265358979323846 * sigma);
}

// Numerical L2(Omega) inner product of two feature maps. The quadrature runs
// in coordinates rotated 45 degrees, (v, w) with w >= 0 the distance-like
// offset from the diagonal, so the midpoint grid mirrors across the boundary
// and keeps the spectral accuracy of a full-plane rule.
inline double kernel_integration(const pssk::PersistenceDiagram& f, const pssk::PersistenceDiagram& g,
                                 double sigma) {
    const double root_half = std::sqrt(0.5);
    double vmin = 1e300, vmax = -1e300, wmax = 0.0;
    auto extend = [&](const pssk::PersistenceDiagram& d) {
        for (const auto& p : d.points()) {
            double v = (p.birth + p.death) * root_half;
            double w = (p.death - p.birth) * root_half;
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
            wmax = std::max(wmax, w);
        }
    };
    extend(f);
    extend(g);
    if (vmin > vmax) return 0.0;  // an empty factor makes the product vanish

    const double margin = 7.5 * std::sqrt(sigma);
    const double h = 0.4 * std::sqrt(sigma);
    vmin -= margin;
    vmax += margin;
    wmax += margin;

    const std::size_t nv = static_cast<std::size_t>(std::ceil((vmax - vmin) / h));
    const std::size_t nw = static_cast<std::size_t>(std::ceil(wmax / h));
    double sum = 0.0;
    for (std::size_t iw = 0; iw < nw; ++iw) {
        double w = (static_cast<double>(iw) + 0.5) * h;
        for (std::size_t iv = 0; iv < nv; ++iv) {
            double v = vmin + (static_cast<double>(iv) + 0.5) * h;
            double x1 = (v - w) * root_half;
            double x2 = (v + w) * root_half;
            sum += feature_map(f, sigma, x1, x2) * feature_map(g, sigma, x1, x2);
        }
    }
    return sum * h * h;
}

// Explicit finite-difference heat solve on a truncated half plane, again in
// rotated coordinates so the Dirichlet boundary lies on a grid line. The
// Dirac initial mass is splat bilinearly; forward Euler with dt = h^2/6.
inline double heat_equation_fd(const pssk::PersistenceDiagram& d, double sigma, double x1, double x2,
                               double h) {
    const double root_half = std::sqrt(0.5);
    double vmin = 1e300, vmax = -1e300, wmax = 0.0;
    auto touch = [&](double v, double w) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        wmax = std::max(wmax, w);
    };
    for (const auto& p : d.points()) {
        touch((p.birth + p.death) * root_half, (p.death - p.birth) * root_half);
    }
    const double qv = (x1 + x2) * root_half, qw = (x2 - x1) * root_half;
    touch(qv, qw);

    const double margin = 6.0 * std::sqrt(2.0 * sigma);
    vmin -= margin;
    vmax += margin;
    wmax += margin;

    const std::size_t nv = static_cast<std::size_t>(std::ceil((vmax - vmin) / h)) + 1;
    const std::size_t nw = static_cast<std::size_t>(std::ceil(wmax / h)) + 1;
    std::vector<double> u(nv * nw, 0.0);  // u[iv*nw + iw], iw = 0 is the diagonal

    auto splat = [&](double v, double w, double mass) {
        double fv = (v - vmin) / h, fw = w / h;
        std::size_t iv = static_cast<std::size_t>(fv), iw = static_cast<std::size_t>(fw);
        double av = fv - static_cast<double>(iv), aw = fw - static_cast<double>(iw);
        u[iv * nw + iw] += mass * (1 - av) * (1 - aw);
        u[(iv + 1) * nw + iw] += mass * av * (1 - aw);
        u[iv * nw + iw + 1] += mass * (1 - av) * aw;
        u[(iv + 1) * nw + iw + 1] += mass * av * aw;
    };
    for (const auto& p : d.points()) {
        splat((p.birth + p.death) * root_half, (p.death - p.birth) * root_half, 1.0 / (h * h));
    }
    // Dirichlet rows stay zero throughout, including any splat residue.
    for (std::size_t iv = 0; iv < nv; ++iv) u[iv * nw] = 0.0;

    const double dt = h * h / 6.0;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(sigma / dt));
    const double tau = sigma / static_cast<double>(steps) / (h * h);
    std::vector<double> next(u.size(), 0.0);
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t iv = 1; iv + 1 < nv; ++iv) {
            for (std::size_t iw = 1; iw + 1 < nw; ++iw) {
                std::size_t id = iv * nw + iw;
                next[id] = u[id] + tau * (u[id - nw] + u[id + nw] + u[id - 1] + u[id + 1] - 4 * u[id]);
            }
        }
        std::swap(u, next);
        // boundaries (diagonal iw=0 and the outer truncation) stay 0
    }

    double fv = (qv - vmin) / h, fw = qw / h;
    std::size_t iv = static_cast<std::size_t>(fv), iw = static_cast<std::size_t>(fw);
    double av = fv - static_cast<double>(iv), aw = fw - static_cast<double>(iw);
    return u[iv * nw + iw] * (1 - av) * (1 - aw) + u[(iv + 1) * nw + iw] * av * (1 - aw) +
           u[iv * nw + iw + 1] * (1 - av) * aw + u[(iv + 1) * nw + iw + 1] * av * aw;
}

// Random diagram with up to max_points points, coordinates in [lo, hi].
inline pssk::PersistenceDiagram random_diagram(pssk::Rng& rng, std::size_t max_points, double lo,
                                               double hi, int dimension = 0) {
    std::size_t count = rng.next_below(max_points + 1);
    std::vector<pssk::DiagramPoint> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double a = rng.uniform(lo, hi);
        double b = rng.uniform(lo, hi);
        points.push_back({std::min(a, b), std::max(a, b)});
    }
    return pssk::PersistenceDiagram(std::move(points), dimension);
}

}  // namespace oracles
