#pragma once

#include <filesystem>
#include <iosfwd>

#include "mdllab/grid.hpp"

namespace mdllab {

/// Binary snapshot format, little-endian:
///   magic "MDL1", dims u32, n per axis u32, (min f64, max f64) per axis,
///   then interleaved (re, im) f64 pairs in row-major order.
void write_field_binary(const Field& f, const std::filesystem::path& path);
Field read_field_binary(const std::filesystem::path& path);

/// CSV export: header then rows  x[,y],re,im  with 17 significant digits.
void write_field_csv(const Field& f, const std::filesystem::path& path);

/// Format a double with 17 significant digits (diff-able output contract).
std::string format_g17(double v);

} // namespace mdllab
