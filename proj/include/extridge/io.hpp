#pragma once

#include <string>

#include "extridge/linalg.hpp"
#include "extridge/spectrum.hpp"

namespace extridge {

/// Shortest-width serialization with 17 significant digits: round-trips
/// exactly, so output files are byte-deterministic. Infinity prints "inf".
std::string format_double(double v);

/// Headerless CSV of decimal floats, one matrix row per line. Files ending
/// in .json are read as {"rows": R, "cols": C, "data": [row-major floats]}.
/// Parse failures report line and column.
Matrix read_matrix_file(const std::string& path);

/// Single CSV column (or one row), or JSON {"data": [...]}.
Vector read_vector_file(const std::string& path);

void write_vector_csv(const std::string& path, const Vector& v);

/// Reads a file in the cmd-spectrum layout (header "sample,eigenvalue")
/// back into a Spectrum.
Spectrum read_spectrum_csv(const std::string& path);

} // namespace extridge
