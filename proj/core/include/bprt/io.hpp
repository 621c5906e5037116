#pragma once

// File formats.
//
// Family JSON: {"dim": D, "count": N, "vectors": [[D floats], ... N arrays]},
// one row per family member, 0-based order.
//
// Matrix dump: 16-byte header ("BPRT", u32 rows, u32 cols, u32 reserved = 0)
// followed by rows*cols little-endian IEEE-754 doubles in row-major order.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "bprt/certification.hpp"
#include "bprt/corpus.hpp"
#include "bprt/expansion.hpp"

namespace bprt {

using Json = nlohmann::ordered_json;

/// Column matrix of the family in a family JSON document. `source` names the
/// origin in error messages.
Matrix family_from_json(const Json& doc, const std::string& source);
Json family_to_json(const Matrix& columns);

/// Throws ParseError carrying the file and byte offset.
Json read_json_file(const std::filesystem::path& path);
Matrix read_family_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

/// Accepts a bare JSON array or {"dim": D, "vector": [...]}.
Vector vector_from_json(const Json& doc, const std::string& source);

Json to_json(const ClosenessReport& report);
Json to_json(const Certificate& cert);
Json to_json(const CorpusSpec& spec);
CorpusSpec corpus_spec_from_json(const Json& doc);

/// Non-finite doubles become null.
Json number_or_null(double value);

void write_matrix_binary(std::ostream& out, const Matrix& m);
void write_matrix_binary(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_binary(std::istream& in, const std::string& source = "<stream>");
Matrix read_matrix_binary(const std::filesystem::path& path);

/// Writes K.bin, A.bin, A_star.bin and operators.json (sidecar) into `dir`.
void dump_bundle(const std::filesystem::path& dir, const OperatorBundle& bundle);

}  // namespace bprt
