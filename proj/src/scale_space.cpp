#include "pssk/scale_space.hpp"

#include <cmath>

#include "pssk/errors.hpp"
#include "pssk/io.hpp"

namespace pssk {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_scale(KernelScale scale) {
    if (!(scale.sigma > 0.0) || !std::isfinite(scale.sigma)) {
        throw NonPositiveScale("sigma must be positive, got " + format_real(scale.sigma));
    }
}

double sq_dist(double ax, double ay, double bx, double by) {
    double dx = ax - bx, dy = ay - by;
    return dx * dx + dy * dy;
}

}  // namespace

double pssk_eval(const PersistenceDiagram& f, const PersistenceDiagram& g, KernelScale scale) {
    check_scale(scale);
    const double inv = 1.0 / (8.0 * scale.sigma);
    double sum = 0.0;
    // Fixed canonical-order accumulation keeps results bit-reproducible.
    for (const auto& p : f.points()) {
        for (const auto& q : g.points()) {
            double direct = sq_dist(p.birth, p.death, q.birth, q.death);
            double mirrored = sq_dist(p.birth, p.death, q.death, q.birth);
            sum += std::exp(-direct * inv) - std::exp(-mirrored * inv);
        }
    }
    return sum / (8.0 * kPi * scale.sigma);
}

double feature_map_eval(const PersistenceDiagram& d, KernelScale scale, PlanePoint x) {
    check_scale(scale);
    if (x.x2 < x.x1) {
        throw OutsideDomain("point (" + format_real(x.x1) + ", " + format_real(x.x2) +
                            ") lies below the diagonal");
    }
    const double inv = 1.0 / (4.0 * scale.sigma);
    double sum = 0.0;
    for (const auto& p : d.points()) {
        double direct = sq_dist(x.x1, x.x2, p.birth, p.death);
        double mirrored = sq_dist(x.x1, x.x2, p.death, p.birth);
        sum += std::exp(-direct * inv) - std::exp(-mirrored * inv);
    }
    return sum / (4.0 * kPi * scale.sigma);
}

GrayscaleImage feature_map_raster(const PersistenceDiagram& d, KernelScale scale,
                                  double xmin, double xmax, double ymin, double ymax,
                                  std::size_t nx, std::size_t ny) {
    check_scale(scale);
    if (!(xmax > xmin) || !(ymax > ymin) || nx == 0 || ny == 0) {
        throw BadGrid("raster grid must satisfy xmax > xmin, ymax > ymin, nx,ny >= 1");
    }
    const double dx = (xmax - xmin) / static_cast<double>(nx);
    const double dy = (ymax - ymin) / static_cast<double>(ny);
    GrayscaleImage img{ny, nx, std::vector<double>(nx * ny, 0.0)};
    for (std::size_t r = 0; r < ny; ++r) {
        // Row 0 is the top of the grid (ymax side).
        double y = ymax - (static_cast<double>(r) + 0.5) * dy;
        for (std::size_t c = 0; c < nx; ++c) {
            double x = xmin + (static_cast<double>(c) + 0.5) * dx;
            if (y < x) continue;  // below the diagonal stays 0
            img.pixels[r * nx + c] = feature_map_eval(d, scale, {x, y});
        }
    }
    return img;
}

double pssk_distance(const PersistenceDiagram& f, const PersistenceDiagram& g, KernelScale scale) {
    check_scale(scale);
    double d2 = pssk_eval(f, f, scale) + pssk_eval(g, g, scale) - 2.0 * pssk_eval(f, g, scale);
    return std::sqrt(std::max(0.0, d2));
}

}  // namespace pssk
