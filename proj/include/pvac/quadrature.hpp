#pragma once

#include <span>
#include <vector>

#include "pvac/grid.hpp"
#include "pvac/initial_data.hpp"

namespace pvac {

enum class QuadratureRule { Trapezoid, Simpson };

/// Nodal quadrature weights on [0,1]. Simpson needs an even cell count.
std::vector<double> quadrature_weights(const Grid1D& grid,
                                       QuadratureRule rule = QuadratureRule::Trapezoid);

double integrate(std::span<const double> values, const Grid1D& grid,
                 QuadratureRule rule = QuadratureRule::Trapezoid);

/// (int omega^(2p) f^2 dx)^(1/2). Weights are sampled analytically at the
/// nodes. Throws NegativeExponent for p < 0.
double weighted_l2(std::span<const double> field, double p, const Grid1D& grid,
                   const WeightField& weight, QuadratureRule rule = QuadratureRule::Trapezoid);

/// Plain L2 norm, int f^2 dx.
double l2_norm(std::span<const double> field, const Grid1D& grid,
               QuadratureRule rule = QuadratureRule::Trapezoid);

/// Unweighted H^k norm (sum_{a<=k} ||D^a f||_0^2)^(1/2), k <= 4.
double sobolev_norm(std::span<const double> field, int k, const Grid1D& grid,
                    QuadratureRule rule = QuadratureRule::Trapezoid);

}  // namespace pvac
