#include "mulgeo/mvec.hpp"

#include <vector>

namespace mulgeo {

MVec3 mcross(const MVec3& u, const MVec3& v) {
  const auto a = u.logs();
  const auto b = v.logs();
  return MVec3::from_logs({a[1] * b[2] - a[2] * b[1],
                           a[2] * b[0] - a[0] * b[2],
                           a[0] * b[1] - a[1] * b[0]});
}

MPlane make_plane(const MVec3& normal, MNum offset) {
  if (mnorm(normal).log() == 0.0) throw DomainError("make_plane: normal is the zero vector");
  return MPlane{normal, offset};
}

MNum plane_eval(const MPlane& plane, const MVec3& point) {
  MNum sum = MNum::zero();
  for (std::size_t i = 0; i < 3; ++i) sum = madd(sum, mmul(plane.normal[i], point[i]));
  return msub(sum, plane.offset);
}

bool plane_contains(const MPlane& plane, const MVec3& point, double atol, double rtol) {
  // Scale the relative part by the size of the terms being cancelled.
  double scale = std::abs(plane.offset.log());
  for (std::size_t i = 0; i < 3; ++i) scale += std::abs(plane.normal[i].log() * point[i].log());
  return std::abs(plane_eval(plane, point).log()) <= atol + rtol * scale;
}

template <std::size_t N>
MVec<N> parse_mvec(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && text[b] == ' ') ++b;
  while (e > b && text[e - 1] == ' ') --e;
  if (e - b < 2 || text[b] != '(' || text[e - 1] != ')') {
    throw ParseError("vector literal must be parenthesized: '" + std::string(text) + "'", b, {"("});
  }
  std::vector<MNum> parts;
  std::size_t start = b + 1;
  for (std::size_t i = b + 1; i <= e - 1; ++i) {
    if (i == e - 1 || text[i] == ',') {
      try {
        parts.push_back(parse_mnum(text.substr(start, i - start)));
      } catch (const ParseError& err) {
        throw ParseError(err.what(), start + err.offset(), err.expected());
      }
      start = i + 1;
    }
  }
  if (parts.size() != N) {
    throw DimensionError("vector literal has " + std::to_string(parts.size()) +
                         " components, expected " + std::to_string(N));
  }
  MVec<N> v;
  for (std::size_t i = 0; i < N; ++i) v[i] = parts[i];
  return v;
}

template MVec2 parse_mvec<2>(std::string_view);
template MVec3 parse_mvec<3>(std::string_view);

}  // namespace mulgeo
