#include "pssk/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pssk/errors.hpp"

namespace pssk {

std::string format_real(double value, int digits) {
    digits = std::clamp(digits, 1, 17);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

namespace {

double parse_real(const std::string& token, const std::string& context) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw MalformedLine(context + ": bad numeric token '" + token + "'");
    }
    if (!std::isfinite(value)) {
        throw NonFinite(context + ": non-finite value '" + token + "'");
    }
    return value;
}

std::string strip_comment(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    return line;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // trim surrounding whitespace
        auto first = field.find_first_not_of(" \t\r");
        auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
    }
    return fields;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    return in;
}

}  // namespace

ScalarField1D load_signal1d(const std::string& path) {
    auto in = open_or_throw(path);
    ScalarField1D f;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        std::replace(line.begin(), line.end(), ',', ' ');  // tolerate CSV-style rows
        std::istringstream fields(line);
        std::string token;
        while (fields >> token) {
            f.values.push_back(parse_real(token, path + ":" + std::to_string(line_no)));
        }
    }
    if (f.values.empty()) throw EmptyInput("no samples in " + path);
    return f;
}

GrayscaleImage parse_pgm(std::istream& in) {
    // P2 with `#` comment lines between tokens.
    auto next_token = [&in]() {
        std::string token;
        while (in >> token) {
            if (token[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return token;
        }
        throw MalformedLine("PGM: unexpected end of file");
    };
    if (next_token() != "P2") throw MalformedLine("PGM: expected P2 magic");
    std::size_t cols = static_cast<std::size_t>(parse_real(next_token(), "PGM width"));
    std::size_t rows = static_cast<std::size_t>(parse_real(next_token(), "PGM height"));
    (void)next_token();  // maxval; values are used as-is
    if (rows == 0 || cols == 0) throw MalformedLine("PGM: zero dimension");
    GrayscaleImage img{rows, cols, {}};
    img.pixels.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        img.pixels.push_back(parse_real(next_token(), "PGM pixel"));
    }
    return img;
}

GrayscaleImage parse_csv_image(std::istream& in) {
    GrayscaleImage img;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        auto fields = split_csv(line);
        std::vector<double> row;
        for (const auto& f : fields) {
            if (!f.empty()) row.push_back(parse_real(f, "csv line " + std::to_string(line_no)));
        }
        if (img.cols == 0) {
            img.cols = row.size();
        } else if (row.size() != img.cols) {
            throw MalformedLine("csv line " + std::to_string(line_no) + ": ragged row");
        }
        img.pixels.insert(img.pixels.end(), row.begin(), row.end());
        ++img.rows;
    }
    if (img.rows == 0) throw EmptyInput("empty csv image");
    return img;
}

GrayscaleImage load_image(const std::string& path) {
    auto in = open_or_throw(path);
    // Peek at the magic; fall back to CSV.
    std::string head;
    in >> head;
    in.seekg(0);
    if (head == "P2") return parse_pgm(in);
    return parse_csv_image(in);
}

void write_pgm(const GrayscaleImage& img, std::ostream& out) {
    double lo = 0.0, hi = 0.0;
    if (!img.pixels.empty()) {
        auto [mn, mx] = std::minmax_element(img.pixels.begin(), img.pixels.end());
        lo = *mn;
        hi = *mx;
    }
    const double span = hi > lo ? hi - lo : 1.0;
    out << "P2\n";
    out << "# scale: min " << format_real(lo) << " max " << format_real(hi) << "\n";
    out << img.cols << " " << img.rows << "\n65535\n";
    for (std::size_t r = 0; r < img.rows; ++r) {
        for (std::size_t c = 0; c < img.cols; ++c) {
            long v = std::lround((img.at(r, c) - lo) / span * 65535.0);
            out << std::clamp(v, 0L, 65535L) << (c + 1 < img.cols ? ' ' : '\n');
        }
    }
}

void write_csv_image(const GrayscaleImage& img, std::ostream& out) {
    for (std::size_t r = 0; r < img.rows; ++r) {
        for (std::size_t c = 0; c < img.cols; ++c) {
            out << format_real(img.at(r, c)) << (c + 1 < img.cols ? "," : "\n");
        }
    }
}

MeshWithFunction load_mesh(const std::string& off_path, const std::string& values_path) {
    auto in = open_or_throw(off_path);
    auto next_token = [&in, &off_path]() {
        std::string token;
        while (in >> token) {
            if (token[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return token;
        }
        throw MalformedLine(off_path + ": unexpected end of file");
    };
    if (next_token() != "OFF") throw MalformedLine(off_path + ": expected OFF header");
    std::size_t nv = static_cast<std::size_t>(parse_real(next_token(), "OFF vertex count"));
    std::size_t nf = static_cast<std::size_t>(parse_real(next_token(), "OFF face count"));
    (void)next_token();  // edge count, ignored
    for (std::size_t i = 0; i < 3 * nv; ++i) (void)next_token();  // coordinates unused

    MeshWithFunction m;
    m.vertex_count = nv;
    for (std::size_t f = 0; f < nf; ++f) {
        std::size_t k = static_cast<std::size_t>(parse_real(next_token(), "OFF face size"));
        if (k != 3) throw MalformedLine(off_path + ": only triangle faces are supported");
        std::array<std::size_t, 3> tri{};
        for (auto& v : tri) v = static_cast<std::size_t>(parse_real(next_token(), "OFF face index"));
        m.triangles.push_back(tri);
    }

    auto vin = open_or_throw(values_path);
    std::string line;
    while (std::getline(vin, line)) {
        std::istringstream fields(strip_comment(line));
        std::string token;
        while (fields >> token) m.values.push_back(parse_real(token, values_path));
    }
    if (m.values.size() != nv) {
        throw MalformedLine(values_path + ": expected " + std::to_string(nv) + " values, got " +
                            std::to_string(m.values.size()));
    }
    return m;
}

LabeledMatrix load_matrix_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    LabeledMatrix m;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        auto fields = split_csv(line);
        if (!have_header) {
            m.ids = fields;
            have_header = true;
            continue;
        }
        if (fields.size() != m.ids.size()) {
            throw MalformedLine(path + ":" + std::to_string(line_no) + ": expected " +
                                std::to_string(m.ids.size()) + " entries");
        }
        for (const auto& f : fields) {
            m.entries.push_back(parse_real(f, path + ":" + std::to_string(line_no)));
        }
    }
    if (!have_header) throw EmptyInput("empty matrix file: " + path);
    if (m.entries.size() != m.ids.size() * m.ids.size()) {
        throw MalformedLine(path + ": expected " + std::to_string(m.ids.size()) + " rows");
    }
    return m;
}

void write_matrix_csv(const std::vector<std::string>& ids, const std::vector<double>& entries,
                      std::ostream& out, int digits) {
    const std::size_t n = ids.size();
    for (std::size_t i = 0; i < n; ++i) out << ids[i] << (i + 1 < n ? "," : "\n");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out << format_real(entries[i * n + j], digits) << (j + 1 < n ? "," : "\n");
        }
    }
}

std::vector<int> load_labels(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<int> labels;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(strip_comment(line));
        std::string token;
        while (fields >> token) {
            labels.push_back(static_cast<int>(parse_real(token, path)));
        }
    }
    return labels;
}

std::vector<CollectionEntry> load_collection(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<CollectionEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(strip_comment(line));
        std::string label_token, file_path;
        if (!(fields >> label_token)) continue;
        if (!(fields >> file_path)) {
            throw MalformedLine(path + ":" + std::to_string(line_no) + ": expected `<label> <path>`");
        }
        entries.push_back({static_cast<int>(parse_real(label_token, path)), file_path});
    }
    return entries;
}

}  // namespace pssk
