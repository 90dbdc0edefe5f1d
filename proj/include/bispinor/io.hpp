#pragma once

// JSON schema shared by the command-line tool and its tests.
//
// Quintuple object (all five tensors required, unknown keys rejected):
//   {"m": x, "j": [4], "s": [4], "H": [6], "n": x, "frame": "local"|"world", "metric": [16]}
// j is contravariant, s and H covariant; H lists H_01 H_02 H_03 H_12 H_13 H_23.
// "metric" (row-major g_ab) is only allowed with frame "world" and defaults to
// Minkowski there.
//
// Matrices: {"kind": "majorana_real"|"dirac_complex", "re": [16], "im": [16]},
// row-major, "im" omitted when the matrix is exactly real.

#include "bispinor/factorization.hpp"
#include "bispinor/spectrum.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bispinor::io {

using json = nlohmann::json;

inline constexpr const char* kCorpusSchema = "quintuple/1";

struct QuintupleRecord {
    TensorQuintuple q;
    std::optional<RMat4> metric;  // world frame only

    /// The quintuple in the local frame (tetrad from the metric for world input).
    TensorQuintuple local() const;
};

/// Throws InputError naming `context` and the offending field.
QuintupleRecord parse_quintuple(const json& value, const std::string& context = "input");
json to_json(const QuintupleRecord& record);
json to_json(const TensorQuintuple& q);

json to_json(const SpectralInvariants& inv);
json to_json(const SpectrumReport& report);

json matrix_to_json(const Mat4& m, RepKind kind);
/// Throws InputError on a malformed matrix object.
Mat4 matrix_from_json(const json& value, const std::string& context = "matrix");

struct CorpusRow {
    int line = 0;  // 1-based source line (or array index + 1)
    std::variant<QuintupleRecord, std::string> content;  // record or parse error message
};

struct Corpus {
    std::optional<json> header;
    std::vector<CorpusRow> rows;
};

/// Accepts newline-delimited JSON (optional header object with a "schema" key
/// first), a single quintuple object, or an array of them. Per-row problems
/// are collected in the rows; only an unreadable header throws InputError.
Corpus read_corpus(std::istream& in);

/// Strict parse of a comma-separated list of exactly `count` numbers.
std::vector<double> parse_number_list(const std::string& text, std::size_t count, const std::string& what);

}  // namespace bispinor::io
