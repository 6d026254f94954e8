#pragma once

// Text formats for transition matrices and spectra.
//
// JSON matrix:  {"rows": R, "cols": C, "re": [...], "im": [...]}  (row-major;
//               "im" may be omitted for real matrices). A block partition may
//               accompany it either as top-level "m", "k", "l" or as
//               "partition": {"m":..,"k":..,"l":..}.
// CSV matrix:   one row per line, cells such as "0.5", "-2j", "0.1+0.3j",
//               "1e-3-4.5e-2j". Blank lines and lines starting with '#' skipped.
// Spectrum:     JSON array of reals, or a comma-separated list.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "privcap/matrix.hpp"
#include "privcap/mode_algebra.hpp"

namespace privcap {

struct MatrixDocument {
    ComplexMatrix matrix;
    std::optional<BlockPartition> partition;
};

[[nodiscard]] MatrixDocument parse_matrix_json(std::string_view text);
[[nodiscard]] ComplexMatrix parse_matrix_csv(std::string_view text);
[[nodiscard]] Complex parse_complex_cell(std::string_view cell);

/// Dispatches on extension: ".csv" is CSV, everything else JSON.
[[nodiscard]] MatrixDocument load_matrix_file(const std::filesystem::path& path);

[[nodiscard]] std::string matrix_to_json(const ComplexMatrix& m);

[[nodiscard]] std::vector<double> parse_spectrum(std::string_view text);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

}  // namespace privcap
