#pragma once

// JSON encodings shared by the manifest format, decomposition files and CLI
// reports. Complex scalars are [re, im] pairs; matrices are row-major arrays
// of rows.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ncplush/realization.hpp"

namespace ncplush {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json real_vector_to_json(const RealVector& v);

/// {"X": [matrix, ...]}
Json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const Json& j);

Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

/// Manifest image {"d", "g", "K", "B", "c"}; unknown keys are rejected.
Json realization_to_json(const SymmetricRealization& r);
SymmetricRealization realization_from_json(const Json& j, const Tolerances& tol = {});

std::string save_manifest(const SymmetricRealization& r);
SymmetricRealization load_manifest(std::string_view text, const Tolerances& tol = {});

/// Parses text, converting parser failures into ParseError.
Json parse_json(std::string_view text);

/// Throws ParseError if j has a key outside `allowed`.
void reject_unknown_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                         std::string_view context);

}  // namespace ncplush
