#ifndef VERMILION_MATRIX_IO_H_
#define VERMILION_MATRIX_IO_H_

#include <cstdint>
#include <optional>
#include <string>

#include "vermilion/square_matrix.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {

// Matrix as read from disk, before hose validation.
struct RawMatrix {
  SquareMatrix<double> entries;
  std::optional<double> link_capacity;
  std::optional<int> degree;
};

// Accepts either
//   CSV: n rows of n comma-separated decimals, optionally preceded by
//        `# c=<bits_per_sec>` and `# d=<degree>` comment lines; when those are
//        absent a `<path>.json` sidecar {"c":..,"d":..} is consulted.
//   JSON: {"n":..,"c":..,"d":..,"entries":[[..],..]}
// Throws Error{Parse} on ragged rows, bad numbers, or a non-square shape.
RawMatrix ParseMatrixText(const std::string& text);
RawMatrix ReadMatrixFile(const std::string& path);

// Reads and validates under the hose model. Missing c or d is a parse error.
TrafficMatrix ReadTrafficMatrix(const std::string& path);

std::string FormatDouble(double v);
std::string MatrixToCsv(const SquareMatrix<double>& m,
                        std::optional<double> link_capacity = std::nullopt,
                        std::optional<int> degree = std::nullopt);
std::string MatrixToCsv(const SquareMatrix<std::int64_t>& m);

std::string ReadFileToString(const std::string& path);
void WriteStringToFile(const std::string& path, const std::string& contents);

}  // namespace vermilion

#endif  // VERMILION_MATRIX_IO_H_
