#pragma once

#include <iosfwd>
#include <string>

#include "rfis/surface.hpp"

namespace rfis {

enum class ExportFormat { csv, pgm16, obj };

ExportFormat parse_format(const std::string& name);

// csv: "x,y,f" header then one row per node, row-major in the x index, full
//      17-significant-digit precision so a reparse is bit-exact.
// pgm16: binary P5, maxval 65535, min-max normalized; the normalization
//      range is recorded in a comment line. A constant surface maps to
//      mid-gray.
// obj: (side+1)^2 vertices and 2 side^2 counterclockwise triangles.
void export_surface(const SampledSurface& surface, ExportFormat format, std::ostream& out);
void export_surface_file(const SampledSurface& surface, ExportFormat format,
                         const std::string& path);

// Reads values back from the csv layout written by export_surface.
SampledSurface import_surface_csv(std::istream& in);

}  // namespace rfis
