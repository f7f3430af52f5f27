#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "amlab/field.hpp"
#include "amlab/grid.hpp"
#include "amlab/vec3.hpp"

namespace amlab::test {

template <typename F>
ScalarField sample(const Grid3& g, F&& f) {
  ScalarField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out(0, i) = f(g.node(i));
  return out;
}

template <typename F>
VectorField sample_vec(const Grid3& g, F&& f) {
  VectorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) set(out, i, f(g.node(i)));
  return out;
}

inline double gauss(const Vec3& x, const Vec3& c, double s) {
  const Vec3 d = x - c;
  return std::exp(-dot(d, d) / (2.0 * s * s));
}

/// Normalized charge distribution of total charge q and width s.
inline double gauss_charge(const Vec3& x, const Vec3& c, double s, double q) {
  return q * gauss(x, c, s) / std::pow(2.0 * std::numbers::pi * s * s, 1.5);
}

template <typename T, int K>
double max_abs_diff(const Field<T, K>& a, const Field<T, K>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

template <typename T, int K>
double max_abs(const Field<T, K>& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

template <typename T, int K>
bool bitwise_equal(const Field<T, K>& a, const Field<T, K>& b) {
  return a.grid() == b.grid() && a.data().size() == b.data().size() &&
         std::memcmp(a.data().data(), b.data().data(), a.data().size_bytes()) == 0;
}

inline bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

inline bool bitwise_equal(const Vec3& a, const Vec3& b) {
  return bitwise_equal(a.x, b.x) && bitwise_equal(a.y, b.y) && bitwise_equal(a.z, b.z);
}

inline double rel(const Vec3& a, const Vec3& b) { return norm(a - b) / std::max(norm(b), 1e-300); }

}  // namespace amlab::test
