#pragma once

#include <cstddef>
#include <vector>

#include "pssk/diagram.hpp"

namespace pssk {

// Piecewise-linear function, zero outside the breakpoint span.
// Breakpoint abscissae are strictly increasing; first and last y are 0.
struct PiecewiseLinear {
    std::vector<double> t;
    std::vector<double> y;

    double eval(double x) const;
};

// Landscape layers lambda_1 >= lambda_2 >= ... ; at most |D| nonzero layers.
struct Landscape {
    std::vector<PiecewiseLinear> layers;
};

// lambda_k(t) = k-th largest value of max(0, min(t - birth, death - t)) over
// the diagram's points. Exact: breakpoints sit at births, deaths, midpoints
// and tent crossings only.
Landscape build_landscape(const PersistenceDiagram& d);

// k^L(F,G) = sum_k integral lambda_k^F(t) * lambda_k^G(t) dt, integrated
// exactly (the integrand is piecewise quadratic over merged breakpoints).
double landscape_kernel(const PersistenceDiagram& f, const PersistenceDiagram& g);

// sqrt(k^L(F,F) + k^L(G,G) - 2 k^L(F,G)), clamped at 0.
double landscape_distance(const PersistenceDiagram& f, const PersistenceDiagram& g);

// Right-hand side of the landscape stability bound:
//   min over bijections gamma of
//   sqrt( sum_u pers(u) |u-gamma(u)|_inf^2 + (2/3) |u-gamma(u)|_inf^3 )
// after augmenting both diagrams with diagonal projections so bijections
// exist. Exhaustive enumeration; throws TooLarge above 7 points per diagram.
double landscape_stability_rhs(const PersistenceDiagram& f, const PersistenceDiagram& g);

// CSV export with columns (layer, t, y), one row per breakpoint.
std::string landscape_to_csv(const Landscape& l);

}  // namespace pssk
