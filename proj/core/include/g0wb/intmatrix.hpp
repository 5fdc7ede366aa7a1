#pragma once

// 2x2 integer matrices, used for SL2(Z) predicates and the braid images.

#include <string>
#include <string_view>

#include "g0wb/exactnum.hpp"

namespace g0wb {

struct IntMatrix {
  BigInt a = 1;
  BigInt b = 0;
  BigInt c = 0;
  BigInt d = 1;

  static IntMatrix identity() { return {}; }
  static IntMatrix of(long a, long b, long c, long d) { return {BigInt(a), BigInt(b), BigInt(c), BigInt(d)}; }
  /// Parses "a,b,c,d" (row-major).
  static IntMatrix parse(std::string_view text);

  BigInt det() const { return a * d - b * c; }
  bool is_unimodular() const { return det() == 1; }
  /// Inverse of a determinant-1 matrix; throws NotUnimodular otherwise.
  IntMatrix inverse() const;

  /// "((a,b),(c,d))".
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend IntMatrix operator-(const IntMatrix& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

}  // namespace g0wb
