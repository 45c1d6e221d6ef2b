#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace pssk {

// Function samples on a path graph.
struct ScalarField1D {
    std::vector<double> values;
};

// Row-major grayscale image; pixel (r,c) = pixels[r*cols + c].
struct GrayscaleImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> pixels;

    double at(std::size_t r, std::size_t c) const { return pixels[r * cols + c]; }
};

// Triangle mesh with a per-vertex scalar function.
struct MeshWithFunction {
    std::size_t vertex_count = 0;
    std::vector<std::array<std::size_t, 3>> triangles;
    std::vector<double> values;  // one per vertex
};

struct Cell {
    int dim = 0;
    double value = 0.0;
    std::vector<std::size_t> boundary;  // indices of codimension-1 faces
};

// Cells of a sublevel-set filtration, sorted ascending by
// (value, dimension, original index); boundary indices refer to this order.
struct FilteredComplex {
    std::vector<Cell> cells;

    int max_cell_dim() const;
};

// Sorts cells canonically, remaps boundary indices and checks the lower-star
// invariants (face dimension/value consistency). Throws InvalidComplex.
FilteredComplex canonicalize_complex(std::vector<Cell> cells);

// Re-checks the FilteredComplex invariants on an already-built complex.
void validate_complex(const FilteredComplex& c);

// Vertices carry the sample values; each edge between consecutive samples
// carries the max of its endpoints.
FilteredComplex build_path_filtration(const ScalarField1D& f);

// V-construction: one vertex per pixel, axis edges with the max of their two
// pixels, unit squares with the max of their four pixels.
FilteredComplex build_cubical_filtration(const GrayscaleImage& img);

// Lower-star filtration of a vertex function: every cell enters at the max
// value over its vertices; edges are deduplicated across triangles.
FilteredComplex build_lower_star_filtration(const MeshWithFunction& m);

}  // namespace pssk
