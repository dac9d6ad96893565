#pragma once

// JSON file formats and record emission.
//
//   matrix:   {"dim": d, "re": [[...], ...], "im": [[...], ...]}   ("im" optional)
//   ensemble: {"priors": [...], "states": [matrix, ...]}
//   code:     {"M": m, "outputs": [matrix, ...], "labels": [...]}  ("labels" optional)
//
// Floating-point values are written with 17 significant digits.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qht/cq_channel.hpp"
#include "qht/discrimination.hpp"
#include "qht/operator.hpp"

namespace qht::io {

using Json = nlohmann::json;

/// Parses a matrix object. `where` prefixes error messages, e.g. "states[2]".
HermitianOperator hermitian_from_json(const Json& j, std::string_view where = "matrix");
/// As above, and rejects non-states with a message giving trace and minimum eigenvalue.
DensityOperator density_from_json(const Json& j, std::string_view where = "matrix");
Ensemble ensemble_from_json(const Json& j);
CqCodebookInstance code_from_json(const Json& j);

Json to_json(const HermitianOperator& op);
Json to_json(const Ensemble& ensemble);
Json to_json(const CqCodebookInstance& code);
Json to_json(const DiscriminationResult& result);

Json read_json_file(const std::filesystem::path& path);
DensityOperator load_density(const std::filesystem::path& path);
Ensemble load_ensemble(const std::filesystem::path& path);
CqCodebookInstance load_code(const std::filesystem::path& path);

/// %.17g; non-finite values become "null" in JSON and "nan"/"inf" in CSV.
std::string format_double(double x);
/// Compact JSON with 17-significant-digit floats.
std::string dump(const Json& j);

/// A flat record: the unit shared by JSON-lines and CSV emission.
using FieldValue = std::variant<double, std::int64_t, bool, std::string>;
struct Field {
  std::string name;
  FieldValue value;
};
using Record = std::vector<Field>;

enum class TableFormat { Jsonl, Csv };

void write_record(std::ostream& out, const Record& record, TableFormat format);
void write_csv_header(std::ostream& out, const Record& record);

Record to_record(const AlphaCurvePoint& point);
Record to_record(const VerificationReport& report);
Record to_record(const ConverseReport& report);

}  // namespace qht::io
