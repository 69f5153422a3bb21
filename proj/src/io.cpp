#include "cellshape/contour.hpp"
#include "cellshape/error.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cellshape {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) {
        return false;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Polyline read_contour_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open contour file '" + path.string() + "'");
    }
    Polyline pts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto comma = row.find(',');
        Point2 p;
        if (comma == std::string_view::npos || !parse_double(row.substr(0, comma), p.x) ||
            !parse_double(row.substr(comma + 1), p.y)) {
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": unparseable point '" +
                             std::string(row) + "'");
        }
        pts.push_back(p);
    }
    return pts;
}

void write_contour_file(const std::filesystem::path& path, std::span<const Point2> pts) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write contour file '" + path.string() + "'");
    }
    out << std::setprecision(17);
    for (const auto& p : pts) {
        out << p.x << ',' << p.y << '\n';
    }
}

std::vector<RawContour> load_contours(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw InputError("cannot open manifest '" + manifest_path.string() + "'");
    }
    const auto base = manifest_path.parent_path();
    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line) || trim(line) != "path,label") {
        throw InputError(manifest_path.string() + ": expected header 'path,label'");
    }
    std::vector<RawContour> out;
    while (std::getline(in, line)) {
        ++row;
        const std::string_view text = trim(line);
        if (text.empty()) {
            continue;
        }
        const std::string where = manifest_path.string() + " row " + std::to_string(row);
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || trim(text.substr(0, comma)).empty()) {
            throw InputError(where + ": malformed row '" + std::string(text) + "'");
        }
        const std::filesystem::path rel{std::string(trim(text.substr(0, comma)))};
        RawContour c;
        c.label = Label::parse(text.substr(comma + 1));
        c.id = (rel.parent_path() / rel.stem()).generic_string();
        try {
            c.points = read_contour_file(rel.is_absolute() ? rel : base / rel);
            c = validated(std::move(c));
        } catch (const Error& e) {
            throw InputError(where + ": " + e.what());
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace cellshape
