#include "ncplush/json_codec.hpp"

#include <algorithm>
#include <string>

#include "ncplush/errors.hpp"

namespace ncplush {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double number_from_json(const Json& j) {
  if (!j.is_number()) parse_fail("expected a number, got " + j.dump());
  return j.get<double>();
}

Index count_from_json(const Json& j, std::string_view key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    parse_fail("\"" + std::string(key) + "\" must be a nonnegative integer");
  }
  return static_cast<Index>(j.get<long long>());
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(e.what());
  }
}

void reject_unknown_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                         std::string_view context) {
  if (!j.is_object()) parse_fail(std::string(context) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      parse_fail("unknown key \"" + item.key() + "\" in " + std::string(context));
    }
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("complex scalar must be [re, im]");
  return {number_from_json(j[0]), number_from_json(j[1])};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  if (!j[0].is_array()) parse_fail("matrix rows must be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      parse_fail("matrix rows must have equal length");
    }
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("vector must be an array of [re, im]");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json real_vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json tuple_to_json(const MatrixTuple& t) {
  Json mats = Json::array();
  for (const Matrix& m : t.mats()) mats.push_back(matrix_to_json(m));
  return Json{{"X", std::move(mats)}};
}

MatrixTuple tuple_from_json(const Json& j) {
  reject_unknown_keys(j, {"X"}, "matrix tuple");
  if (!j.contains("X") || !j["X"].is_array()) parse_fail("matrix tuple needs an \"X\" array");
  std::vector<Matrix> mats;
  for (const Json& m : j["X"]) mats.push_back(matrix_from_json(m));
  try {
    return MatrixTuple(std::move(mats));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

Json word_to_json(const Word& w) { return Json(w.to_ints()); }

Word word_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("word must be an integer array");
  std::vector<int> codes;
  for (const Json& c : j) {
    if (!c.is_number_integer()) parse_fail("word letters must be integers");
    codes.push_back(c.get<int>());
  }
  return Word::from_ints(codes);
}

Json realization_to_json(const SymmetricRealization& r) {
  Json b = Json::array();
  for (const Matrix& bj : r.B()) b.push_back(matrix_to_json(bj));
  return Json{{"d", r.d()},
              {"g", r.g()},
              {"K", matrix_to_json(r.K())},
              {"B", std::move(b)},
              {"c", vector_to_json(r.c())}};
}

SymmetricRealization realization_from_json(const Json& j, const Tolerances& tol) {
  reject_unknown_keys(j, {"d", "g", "K", "B", "c"}, "manifest");
  for (const char* key : {"d", "g", "K", "B", "c"}) {
    if (!j.contains(key)) parse_fail(std::string("manifest is missing \"") + key + "\"");
  }
  const Index d = count_from_json(j["d"], "d");
  const Index g = count_from_json(j["g"], "g");
  Matrix k = matrix_from_json(j["K"]);
  if (!j["B"].is_array()) parse_fail("\"B\" must be an array of matrices");
  std::vector<Matrix> b;
  for (const Json& bj : j["B"]) b.push_back(matrix_from_json(bj));
  Vector c = vector_from_json(j["c"]);

  if (k.rows() != d || k.cols() != d) {
    throw Error(ErrorKind::InvalidRealization, "K is not d x d");
  }
  if (static_cast<Index>(b.size()) != g) {
    throw Error(ErrorKind::InvalidRealization, "B does not have g members");
  }
  return SymmetricRealization(std::move(k), std::move(b), std::move(c), tol);
}

std::string save_manifest(const SymmetricRealization& r) { return realization_to_json(r).dump(2); }

SymmetricRealization load_manifest(std::string_view text, const Tolerances& tol) {
  return realization_from_json(parse_json(text), tol);
}

}  // namespace ncplush
