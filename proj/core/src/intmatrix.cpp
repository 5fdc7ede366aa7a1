#include "g0wb/intmatrix.hpp"

namespace g0wb {

IntMatrix IntMatrix::parse(std::string_view text) {
  BigInt v[4];
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t end = i < 3 ? text.find(',', start) : text.size();
    if (end == std::string_view::npos) throw PreconditionError("matrix must be given as a,b,c,d");
    std::string part(text.substr(start, end - start));
    if (part.empty() || v[i].set_str(part, 10) != 0) throw PreconditionError("bad matrix entry '" + part + "'");
    start = end + 1;
  }
  if (start <= text.size()) throw PreconditionError("matrix must have exactly four entries");
  return {v[0], v[1], v[2], v[3]};
}

IntMatrix IntMatrix::inverse() const {
  if (!is_unimodular()) throw NotUnimodular();
  return {d, -b, -c, a};
}

std::string IntMatrix::to_string() const {
  return "((" + a.get_str() + "," + b.get_str() + "),(" + c.get_str() + "," + d.get_str() + "))";
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

}  // namespace g0wb
