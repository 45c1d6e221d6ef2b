#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace pssk {

// A single birth/death pair. Both coordinates are finite and death >= birth;
// essential features (death at infinity) are never stored.
struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;

    friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// (a,b) mirrored at the diagonal, i.e. (b,a).
inline DiagramPoint mirror(const DiagramPoint& p) { return {p.death, p.birth}; }

// death - birth, always >= 0.
inline double persistence(const DiagramPoint& p) { return p.death - p.birth; }

// Finite multiset of diagram points tagged with a homology dimension.
// Points are kept in canonical lexicographic (birth, death) order, so two
// diagrams are equal iff their point sequences and dimensions are equal.
class PersistenceDiagram {
  public:
    PersistenceDiagram() = default;

    // Validates the point invariants and canonicalizes the order.
    explicit PersistenceDiagram(std::vector<DiagramPoint> points, int dimension = 0);

    const std::vector<DiagramPoint>& points() const { return points_; }
    int dimension() const { return dimension_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

  private:
    std::vector<DiagramPoint> points_;
    int dimension_ = 0;
};

// Concatenated multiset of two diagrams of equal dimension, re-canonicalized.
PersistenceDiagram multiset_union(const PersistenceDiagram& f, const PersistenceDiagram& g);

// n-fold multiset self-union.
PersistenceDiagram multiset_power(const PersistenceDiagram& f, std::size_t n);

// Reads the diagram text format: one `<birth> <death>` pair per line,
// `#` starts a comment, an optional `# dim: <k>` line sets the dimension tag.
PersistenceDiagram parse_diagram(std::istream& in);
PersistenceDiagram parse_diagram(const std::string& text);

// Writes the same format with 17 significant digits, so that
// parse_diagram(write_diagram(d)) == d.
void write_diagram(const PersistenceDiagram& d, std::ostream& out);
std::string write_diagram(const PersistenceDiagram& d);

PersistenceDiagram load_diagram(const std::string& path);
void save_diagram(const PersistenceDiagram& d, const std::string& path);

}  // namespace pssk
