#include "pssk/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "pssk/errors.hpp"

namespace pssk {

int FilteredComplex::max_cell_dim() const {
    int d = 0;
    for (const auto& c : cells) d = std::max(d, c.dim);
    return d;
}

FilteredComplex canonicalize_complex(std::vector<Cell> cells) {
    const std::size_t n = cells.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cells[a].value != cells[b].value) return cells[a].value < cells[b].value;
        if (cells[a].dim != cells[b].dim) return cells[a].dim < cells[b].dim;
        return a < b;
    });
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

    FilteredComplex out;
    out.cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Cell c = std::move(cells[order[i]]);
        for (auto& b : c.boundary) {
            if (b >= n) throw InvalidComplex("boundary index " + std::to_string(b) + " out of range");
            b = position[b];
        }
        std::sort(c.boundary.begin(), c.boundary.end());
        out.cells.push_back(std::move(c));
    }
    validate_complex(out);
    return out;
}

void validate_complex(const FilteredComplex& c) {
    const std::size_t n = c.cells.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Cell& cell = c.cells[i];
        if (!std::isfinite(cell.value)) {
            throw InvalidComplex("cell " + std::to_string(i) + " has non-finite value");
        }
        if (i > 0) {
            const Cell& prev = c.cells[i - 1];
            if (cell.value < prev.value ||
                (cell.value == prev.value && cell.dim < prev.dim)) {
                throw InvalidComplex("cells not sorted by (value, dimension) at " + std::to_string(i));
            }
        }
        for (std::size_t b : cell.boundary) {
            if (b >= n) throw InvalidComplex("boundary index out of range at cell " + std::to_string(i));
            const Cell& face = c.cells[b];
            if (face.dim != cell.dim - 1) {
                throw InvalidComplex("boundary cell of dim " + std::to_string(face.dim) +
                                     " under cell of dim " + std::to_string(cell.dim));
            }
            if (face.value > cell.value) {
                throw InvalidComplex("boundary value exceeds cell value at cell " + std::to_string(i));
            }
        }
    }
}

FilteredComplex build_path_filtration(const ScalarField1D& f) {
    const std::size_t n = f.values.size();
    if (n == 0) throw EmptyInput("build_path_filtration: no samples");
    for (double v : f.values) {
        if (!std::isfinite(v)) throw NonFinite("build_path_filtration: non-finite sample");
    }
    std::vector<Cell> cells;
    cells.reserve(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        cells.push_back({0, f.values[i], {}});
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cells.push_back({1, std::max(f.values[i], f.values[i + 1]), {i, i + 1}});
    }
    return canonicalize_complex(std::move(cells));
}

FilteredComplex build_cubical_filtration(const GrayscaleImage& img) {
    const std::size_t rows = img.rows, cols = img.cols;
    if (rows == 0 || cols == 0 || img.pixels.size() != rows * cols) {
        throw InvalidComplex("build_cubical_filtration: inconsistent image dimensions");
    }
    for (double v : img.pixels) {
        if (!std::isfinite(v)) throw NonFinite("build_cubical_filtration: non-finite pixel");
    }

    std::vector<Cell> cells;
    auto vertex_id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };

    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            cells.push_back({0, img.at(r, c), {}});

    // Horizontal edges first, then vertical; squares reference both blocks.
    const std::size_t h_base = cells.size();
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c + 1 < cols; ++c)
            cells.push_back({1, std::max(img.at(r, c), img.at(r, c + 1)),
                             {vertex_id(r, c), vertex_id(r, c + 1)}});
    const std::size_t v_base = cells.size();
    for (std::size_t r = 0; r + 1 < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            cells.push_back({1, std::max(img.at(r, c), img.at(r + 1, c)),
                             {vertex_id(r, c), vertex_id(r + 1, c)}});

    auto h_edge = [&](std::size_t r, std::size_t c) { return h_base + r * (cols - 1) + c; };
    auto v_edge = [&](std::size_t r, std::size_t c) { return v_base + r * cols + c; };
    for (std::size_t r = 0; r + 1 < rows; ++r) {
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            double value = std::max(std::max(img.at(r, c), img.at(r, c + 1)),
                                    std::max(img.at(r + 1, c), img.at(r + 1, c + 1)));
            cells.push_back({2, value, {h_edge(r, c), h_edge(r + 1, c), v_edge(r, c), v_edge(r, c + 1)}});
        }
    }
    return canonicalize_complex(std::move(cells));
}

FilteredComplex build_lower_star_filtration(const MeshWithFunction& m) {
    const std::size_t n = m.vertex_count;
    if (m.values.size() != n) {
        throw InvalidComplex("build_lower_star_filtration: values/vertex count mismatch");
    }
    for (double v : m.values) {
        if (!std::isfinite(v)) throw NonFinite("build_lower_star_filtration: non-finite value");
    }

    std::vector<Cell> cells;
    for (std::size_t i = 0; i < n; ++i) cells.push_back({0, m.values[i], {}});

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_ids;
    auto edge_of = [&](std::size_t a, std::size_t b) {
        auto key = std::minmax(a, b);
        auto it = edge_ids.find(key);
        if (it != edge_ids.end()) return it->second;
        std::size_t id = cells.size();
        cells.push_back({1, std::max(m.values[a], m.values[b]), {key.first, key.second}});
        edge_ids.emplace(key, id);
        return id;
    };

    for (const auto& tri : m.triangles) {
        for (std::size_t v : tri) {
            if (v >= n) throw BadIndex("triangle vertex index " + std::to_string(v) + " out of range");
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw DegenerateTriangle("triangle with repeated vertex");
        }
        std::size_t e01 = edge_of(tri[0], tri[1]);
        std::size_t e12 = edge_of(tri[1], tri[2]);
        std::size_t e02 = edge_of(tri[0], tri[2]);
        double value = std::max({m.values[tri[0]], m.values[tri[1]], m.values[tri[2]]});
        cells.push_back({2, value, {e01, e12, e02}});
    }
    return canonicalize_complex(std::move(cells));
}

}  // namespace pssk
