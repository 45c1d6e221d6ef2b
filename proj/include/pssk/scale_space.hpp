#pragma once

#include "pssk/diagram.hpp"
#include "pssk/filtration.hpp"

namespace pssk {

// Heat-diffusion scale; must be positive (squared filtration units).
struct KernelScale {
    double sigma = 1.0;
};

struct PlanePoint {
    double x1 = 0.0;
    double x2 = 0.0;
};

// Persistence scale-space kernel
//   k_sigma(F,G) = 1/(8 pi sigma) * sum_{p in F, q in G}
//                  [exp(-|p-q|^2/(8 sigma)) - exp(-|p-mirror(q)|^2/(8 sigma))]
// evaluated by direct summation in canonical point order, O(|F|*|G|).
double pssk_eval(const PersistenceDiagram& f, const PersistenceDiagram& g, KernelScale scale);

// Feature map at a point x above the diagonal:
//   Phi_sigma(D)(x) = 1/(4 pi sigma) * sum_{p in D}
//                     [exp(-|x-p|^2/(4 sigma)) - exp(-|x-mirror(p)|^2/(4 sigma))]
// Zero on the diagonal (Dirichlet boundary).
double feature_map_eval(const PersistenceDiagram& d, KernelScale scale, PlanePoint x);

// Samples the feature map at cell centers of an nx-by-ny grid over
// [xmin,xmax] x [ymin,ymax]. Row 0 corresponds to ymax (image convention);
// entries strictly below the diagonal are set to 0.
GrayscaleImage feature_map_raster(const PersistenceDiagram& d, KernelScale scale,
                                  double xmin, double xmax, double ymin, double ymax,
                                  std::size_t nx, std::size_t ny);

// Kernel-induced pseudometric sqrt(k(F,F) + k(G,G) - 2 k(F,G)), clamped at 0.
double pssk_distance(const PersistenceDiagram& f, const PersistenceDiagram& g, KernelScale scale);

}  // namespace pssk
