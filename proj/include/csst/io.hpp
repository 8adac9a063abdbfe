#pragma once

#include <filesystem>
#include <string>

#include "csst/dataset.hpp"
#include "csst/index.hpp"
#include "csst/som.hpp"

namespace csst {

// All writers are deterministic (identical input -> byte-identical file),
// use '.' as decimal separator and '\n' line endings, and write through a
// temp-file-then-rename so readers never see a partial file.

// Header line of dimension names, then one row per input vector, comma
// separated, 17 significant digits (lossless for doubles).
void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& path);

// Throws ParseError (with line number) on empty files, ragged rows or
// unparsable fields.
Dataset read_dataset_csv(const std::filesystem::path& path);

// JSON document with "rows", "cols", "dim" and the row-major "prototypes"
// array. Round-trips exactly.
void write_codebook_json(const Codebook& codebook, const std::filesystem::path& path);

// Throws ParseError on malformed JSON, SchemaError on missing/invalid fields
// or a prototype count that differs from rows*cols.
Codebook read_codebook_json(const std::filesystem::path& path);

// Labeled square matrix: first row and column carry the region labels,
// values with 9 significant digits, absent entries as the literal "NA".
void write_matrix_csv(const LabeledMatrix& matrix, const std::filesystem::path& path);

// Plain rectangular CSV of values, 9 significant digits, no header.
void write_values_csv(const Matrix& values, const std::filesystem::path& path);

// Plain-text PGM ("P2", maxval 255) mapping [min, max] linearly onto
// [0, 255]; invert flips the ramp. A constant matrix renders all 0.
// Throws InvalidParameter on NaN or infinite entries.
void write_pgm_heatmap(const Matrix& values, const std::filesystem::path& path, bool invert);

// Writes content to path via a sibling temp file and an atomic rename.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

} // namespace csst
