#include "rfis/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace rfis {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const SampledSurface& surface, std::ostream& out) {
    out << "x,y,f\n";
    const int side = surface.side;
    for (int k = 0; k <= side; ++k) {
        const double x = static_cast<double>(k) / side;
        for (int l = 0; l <= side; ++l) {
            const double y = static_cast<double>(l) / side;
            out << fmt(x) << ',' << fmt(y) << ',' << fmt(surface.values(k, l)) << '\n';
        }
    }
}

void write_pgm16(const SampledSurface& surface, std::ostream& out) {
    const int side = surface.side;
    double lo = surface.values(0, 0), hi = lo;
    for (double v : surface.values.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool constant = !(hi > lo);
    out << "P5\n";
    out << "# f_min=" << fmt(lo) << " f_max=" << fmt(hi);
    if (constant) out << " constant=1 (mid-gray payload)";
    out << "\n# rows run y=1 down to y=0, columns x=0 to x=1\n";
    out << side + 1 << ' ' << side + 1 << "\n65535\n";
    const double scale = constant ? 0.0 : 65535.0 / (hi - lo);
    for (int l = side; l >= 0; --l) {
        for (int k = 0; k <= side; ++k) {
            const unsigned value =
                constant ? 32768u
                         : static_cast<unsigned>(std::lround((surface.values(k, l) - lo) * scale));
            const unsigned char bytes[2] = {static_cast<unsigned char>((value >> 8) & 0xff),
                                            static_cast<unsigned char>(value & 0xff)};
            out.write(reinterpret_cast<const char*>(bytes), 2);
        }
    }
}

void write_obj(const SampledSurface& surface, std::ostream& out) {
    const int side = surface.side;
    for (int k = 0; k <= side; ++k) {
        const double x = static_cast<double>(k) / side;
        for (int l = 0; l <= side; ++l) {
            const double y = static_cast<double>(l) / side;
            out << "v " << fmt(x) << ' ' << fmt(y) << ' ' << fmt(surface.values(k, l)) << '\n';
        }
    }
    auto idx = [side](int k, int l) { return k * (side + 1) + l + 1; };
    for (int k = 0; k < side; ++k) {
        for (int l = 0; l < side; ++l) {
            out << "f " << idx(k, l) << ' ' << idx(k + 1, l) << ' ' << idx(k + 1, l + 1) << '\n';
            out << "f " << idx(k, l) << ' ' << idx(k + 1, l + 1) << ' ' << idx(k, l + 1) << '\n';
        }
    }
}

}  // namespace

ExportFormat parse_format(const std::string& name) {
    if (name == "csv") return ExportFormat::csv;
    if (name == "pgm16") return ExportFormat::pgm16;
    if (name == "obj") return ExportFormat::obj;
    throw Error(ErrorCode::UsageError, "unknown format '" + name + "' (csv, pgm16, obj)");
}

void export_surface(const SampledSurface& surface, ExportFormat format, std::ostream& out) {
    switch (format) {
        case ExportFormat::csv: write_csv(surface, out); break;
        case ExportFormat::pgm16: write_pgm16(surface, out); break;
        case ExportFormat::obj: write_obj(surface, out); break;
    }
    if (!out) throw Error(ErrorCode::IoError, "write failed");
}

void export_surface_file(const SampledSurface& surface, ExportFormat format,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open output file: " + path);
    export_surface(surface, format, out);
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

SampledSurface import_surface_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "x,y,f")
        throw Error(ErrorCode::ParseError, "csv surface must start with the 'x,y,f' header");
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw Error(ErrorCode::ParseError, "malformed csv row: " + line);
        values.push_back(std::stod(line.substr(c2 + 1)));
    }
    const auto nodes = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
    if (nodes * nodes != values.size() || nodes < 2)
        throw Error(ErrorCode::ParseError, "csv surface is not a square grid");

    SampledSurface surface;
    surface.level = 0;
    surface.K = 1;
    surface.base = static_cast<int>(nodes) - 1;
    surface.side = surface.base;
    surface.values = Matrix(static_cast<int>(nodes), static_cast<int>(nodes));
    std::size_t at = 0;
    for (std::size_t k = 0; k < nodes; ++k)
        for (std::size_t l = 0; l < nodes; ++l)
            surface.values(static_cast<int>(k), static_cast<int>(l)) = values[at++];
    return surface;
}

}  // namespace rfis
