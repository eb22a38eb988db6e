#pragma once

// Hand-checkable realizations and small helpers shared by the test binaries.

#include <initializer_list>
#include <vector>

#include "ncplush/realization.hpp"

namespace ncplush::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (Complex v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<Complex> entries) {
  Vector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (Complex e : entries) v(i++) = e;
  return v;
}

inline Matrix diag(std::initializer_list<Complex> entries) { return vec(entries).asDiagonal(); }

inline MatrixTuple scalars(std::initializer_list<Complex> xs) {
  std::vector<Matrix> mats;
  for (Complex x : xs) mats.push_back(mat({{x}}));
  return MatrixTuple(std::move(mats));
}

// d = 1: r(x) = 1 / (1 - 0.5 x - 0.5 x^*).
inline SymmetricRealization F1() { return {mat({{1.0}}), {mat({{0.5}})}, vec({1.0})}; }

// Not plush: ran B^* = span{e_2} is K-negative.
inline SymmetricRealization F2() {
  return {diag({1.0, -1.0}), {mat({{0.0, 1.0}, {0.0, 0.0}})}, vec({1.0, 1.0})};
}

// Plush, not convex.
inline SymmetricRealization F3() {
  return {diag({1.0, 1.0, -1.0}),
          {mat({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.6}, {0.6, 0.0, 0.0}})},
          vec({1.0, 1.0, 1.0})};
}

// F2 with an unreachable third coordinate.
inline SymmetricRealization F4() {
  return {diag({1.0, -1.0, 1.0}),
          {mat({{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}})},
          vec({1.0, 1.0, 0.0})};
}

// Plush with K B nilpotent: (K B)^2 = 0.
inline SymmetricRealization F5(double e = 0.5) {
  return {diag({1.0, -1.0}), {mat({{e, e}, {e, e}})}, vec({1.0, 0.0})};
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace ncplush::testing
