#pragma once

#include <vector>

#include "pssk/diagram.hpp"
#include "pssk/filtration.hpp"

namespace pssk {

// Boundary-matrix reduction over Z/2. Returns one diagram per dimension
// 0..max_cell_dim-1 (at least the dim-0 diagram). Zero-persistence pairs and
// unpaired (essential) cells are discarded.
std::vector<PersistenceDiagram> compute_persistence(const FilteredComplex& c);

// Union-find over vertices and edges in filtration order with the elder rule;
// agrees exactly with dimension 0 of compute_persistence.
PersistenceDiagram compute_persistence_dim0(const FilteredComplex& c);

}  // namespace pssk
