#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "amlab/field.hpp"

namespace amlab {

/// Sum with a fixed pairwise tree. Leaf blocks are reduced in parallel but the
/// tree shape depends only on the length, so the result is bitwise identical
/// for any thread count.
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);

/// Sum of f(node) * dV. Throws NonFiniteError identifying the first offending node.
double integrate(const ScalarField& f);
cplx integrate(const ComplexField& f);
Vec3 integrate(const VectorField& f);

/// Integral of a scalar integrand evaluated node by node. The integrand receives
/// the flat node index and the node coordinate.
double integrate_fn(const Grid3& grid, const std::function<double(std::size_t, const Vec3&)>& f);

/// Integral of a vector integrand; each component is reduced with its own tree.
Vec3 integrate_vec(const Grid3& grid, const std::function<Vec3(std::size_t, const Vec3&)>& f);

}  // namespace amlab
