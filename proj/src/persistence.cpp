#include "pssk/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "pssk/errors.hpp"

namespace pssk {

namespace {

// Symmetric difference of two ascending index lists (Z/2 column addition).
std::vector<std::size_t> xor_merge(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else if (b[j] < a[i]) {
            out.push_back(b[j++]);
        } else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

}  // namespace

std::vector<PersistenceDiagram> compute_persistence(const FilteredComplex& c) {
    validate_complex(c);
    const std::size_t n = c.cells.size();
    const int maxdim = std::max(0, c.max_cell_dim() - 1);

    std::vector<std::vector<std::size_t>> reduced(n);
    // pivot_owner[i] = column whose lowest one sits in row i, or npos.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_owner(n, npos);

    std::vector<std::vector<DiagramPoint>> points(maxdim + 1);

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> col = c.cells[j].boundary;
        while (!col.empty()) {
            std::size_t low = col.back();
            std::size_t owner = pivot_owner[low];
            if (owner == npos) break;
            col = xor_merge(col, reduced[owner]);
        }
        if (!col.empty()) {
            std::size_t low = col.back();
            pivot_owner[low] = j;
            double birth = c.cells[low].value;
            double death = c.cells[j].value;
            if (birth < death) {
                points[c.cells[low].dim].push_back({birth, death});
            }
            reduced[j] = std::move(col);
        }
    }

    std::vector<PersistenceDiagram> diagrams;
    diagrams.reserve(maxdim + 1);
    for (int d = 0; d <= maxdim; ++d) {
        diagrams.emplace_back(std::move(points[d]), d);
    }
    return diagrams;
}

PersistenceDiagram compute_persistence_dim0(const FilteredComplex& c) {
    validate_complex(c);
    const std::size_t n = c.cells.size();
    constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // parent[i] over vertex cell indices; creator index doubles as elder rank
    // because cells are already sorted by (value, dimension, original index).
    std::vector<std::size_t> parent(n, npos);
    auto find = [&](std::size_t x) {
        std::size_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) x = std::exchange(parent[x], root);
        return root;
    };

    std::vector<DiagramPoint> points;
    for (std::size_t i = 0; i < n; ++i) {
        const Cell& cell = c.cells[i];
        if (cell.dim == 0) {
            parent[i] = i;
        } else if (cell.dim == 1) {
            std::size_t a = find(cell.boundary[0]);
            std::size_t b = find(cell.boundary[1]);
            if (a == b) continue;
            // Elder rule: the component with the younger creator dies here.
            std::size_t young = std::max(a, b);
            std::size_t old_root = std::min(a, b);
            parent[young] = old_root;
            double birth = c.cells[young].value;
            if (birth < cell.value) points.push_back({birth, cell.value});
        }
    }
    return PersistenceDiagram(std::move(points), 0);
}

}  // namespace pssk
