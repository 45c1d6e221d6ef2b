#include "pssk/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pssk/errors.hpp"
#include "pssk/io.hpp"

namespace pssk {

namespace {

void check_point(const DiagramPoint& p, const std::string& context) {
    if (!std::isfinite(p.birth) || !std::isfinite(p.death)) {
        throw NonFinite(context + ": coordinates must be finite");
    }
    if (p.death < p.birth) {
        throw DeathBeforeBirth(context + ": death " + format_real(p.death) +
                               " < birth " + format_real(p.birth));
    }
}

bool point_less(const DiagramPoint& a, const DiagramPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}

}  // namespace

PersistenceDiagram::PersistenceDiagram(std::vector<DiagramPoint> points, int dimension)
    : points_(std::move(points)), dimension_(dimension) {
    for (const auto& p : points_) check_point(p, "diagram point");
    std::sort(points_.begin(), points_.end(), point_less);
}

PersistenceDiagram multiset_union(const PersistenceDiagram& f, const PersistenceDiagram& g) {
    if (f.dimension() != g.dimension()) {
        throw DimensionMismatch("multiset_union: dimension " + std::to_string(f.dimension()) +
                                " vs " + std::to_string(g.dimension()));
    }
    std::vector<DiagramPoint> all = f.points();
    all.insert(all.end(), g.points().begin(), g.points().end());
    return PersistenceDiagram(std::move(all), f.dimension());
}

PersistenceDiagram multiset_power(const PersistenceDiagram& f, std::size_t n) {
    std::vector<DiagramPoint> all;
    all.reserve(f.size() * n);
    for (std::size_t i = 0; i < n; ++i) {
        all.insert(all.end(), f.points().begin(), f.points().end());
    }
    return PersistenceDiagram(std::move(all), f.dimension());
}

namespace {

double parse_token(const std::string& token, std::size_t line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        // from_chars accepts "nan"/"inf"; anything it rejects is malformed.
        throw MalformedLine("line " + std::to_string(line_no) + ": bad numeric token '" + token + "'");
    }
    if (!std::isfinite(value)) {
        throw NonFinite("line " + std::to_string(line_no) + ": non-finite coordinate '" + token + "'");
    }
    return value;
}

}  // namespace

PersistenceDiagram parse_diagram(std::istream& in) {
    std::vector<DiagramPoint> points;
    int dimension = 0;
    bool saw_dimension = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Strip comments; `# dim: <k>` is the dimension header.
        if (auto hash = line.find('#'); hash != std::string::npos) {
            std::istringstream comment(line.substr(hash + 1));
            std::string word;
            comment >> word;
            if (word == "dim:" && !saw_dimension) {
                int k = 0;
                if (comment >> k) {
                    dimension = k;
                    saw_dimension = true;
                }
            }
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        std::string token;
        while (fields >> token) tokens.push_back(token);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) {
            throw MalformedLine("line " + std::to_string(line_no) + ": expected two numeric tokens, got " +
                                std::to_string(tokens.size()));
        }
        DiagramPoint p{parse_token(tokens[0], line_no), parse_token(tokens[1], line_no)};
        if (p.death < p.birth) {
            throw DeathBeforeBirth("line " + std::to_string(line_no) + ": death " + tokens[1] +
                                   " < birth " + tokens[0]);
        }
        points.push_back(p);
    }
    return PersistenceDiagram(std::move(points), dimension);
}

PersistenceDiagram parse_diagram(const std::string& text) {
    std::istringstream in(text);
    return parse_diagram(in);
}

void write_diagram(const PersistenceDiagram& d, std::ostream& out) {
    if (d.dimension() != 0) {
        out << "# dim: " << d.dimension() << "\n";
    }
    for (const auto& p : d.points()) {
        out << format_real(p.birth) << " " << format_real(p.death) << "\n";
    }
}

std::string write_diagram(const PersistenceDiagram& d) {
    std::ostringstream out;
    write_diagram(d, out);
    return out.str();
}

PersistenceDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open diagram file: " + path);
    try {
        return parse_diagram(in);
    } catch (const MalformedLine& e) {
        throw MalformedLine(path + ": " + e.what());
    } catch (const DeathBeforeBirth& e) {
        throw DeathBeforeBirth(path + ": " + e.what());
    } catch (const NonFinite& e) {
        throw NonFinite(path + ": " + e.what());
    }
}

void save_diagram(const PersistenceDiagram& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write_diagram(d, out);
    if (!out.good()) throw Error("error writing diagram file: " + path);
}

}  // namespace pssk
