#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pssk/filtration.hpp"

namespace pssk {

// Shortest decimal form with `digits` significant digits; 17 round-trips
// doubles exactly.
std::string format_real(double value, int digits = 17);

// 1D signal: one real per line, `#` comments ignored.
ScalarField1D load_signal1d(const std::string& path);

// Image: ASCII PGM (P2) or CSV matrix, chosen by content (`P2` magic).
GrayscaleImage load_image(const std::string& path);
GrayscaleImage parse_pgm(std::istream& in);
GrayscaleImage parse_csv_image(std::istream& in);

// Raster output. PGM scales min..max to 0..65535 and records the scale
// factors in a comment; CSV writes the raw reals.
void write_pgm(const GrayscaleImage& img, std::ostream& out);
void write_csv_image(const GrayscaleImage& img, std::ostream& out);

// Mesh: OFF file plus a separate per-vertex values file (one real per line).
MeshWithFunction load_mesh(const std::string& off_path, const std::string& values_path);

// Square matrix CSV with a header row of item ids.
struct LabeledMatrix {
    std::vector<std::string> ids;
    std::vector<double> entries;  // row-major, ids.size() x ids.size()
};
LabeledMatrix load_matrix_csv(const std::string& path);
void write_matrix_csv(const std::vector<std::string>& ids, const std::vector<double>& entries,
                      std::ostream& out, int digits = 17);

// Labels: one integer per line.
std::vector<int> load_labels(const std::string& path);

// Collection manifest: one `<label> <diagram-path>` per line, `#` comments.
struct CollectionEntry {
    int label;
    std::string path;
};
std::vector<CollectionEntry> load_collection(const std::string& path);

}  // namespace pssk
