#pragma once

#include <set>

#include "racp/system.hpp"

namespace racp {

enum class Axis { x = 0, y = 1, z = 2 };
enum class Face { xmin, xmax, ymin, ymax, zmin, zmax };

/// Structured hex grid of a unit cube, trilinear elements, isotropic
/// linear elasticity. The fracture plane duplicates the grid nodes at
/// `fracture_index` along `fracture_axis` (interior planes only); a
/// negative index disables the fracture.
struct GridParams {
  index_t nx = 2;
  index_t ny = 2;
  index_t nz = 2;
  double young_modulus = 1.0;
  double poisson_ratio = 0.25;
  double distortion = 0.0;  // in [0, 1); 0 keeps the tensor grid
  Axis fracture_axis = Axis::x;
  index_t fracture_index = 1;
  std::set<Face> dirichlet_faces = {Face::xmin, Face::xmax};
};

/// Fractured elasticity cube with node-to-node tying across the plane.
/// Each free interface pair contributes three multiplier columns (normal
/// direction first); a column carries +w on the minus-side DOF and -w on
/// the plus-side duplicate, w being the tributary interface area of the
/// pair. Pairs whose nodes are Dirichlet-constrained carry no multipliers.
/// Requires every fracture side to touch at least one Dirichlet face so A
/// is SPD after elimination.
SaddleSystem generate_fracture_cube(const GridParams& p);

/// Same mesh, but Dirichlet only on the min face of the fracture axis:
/// the plus side floats and A acquires the six rigid-body modes of that
/// body. The full block system stays nonsingular through the coupling.
SaddleSystem generate_floating_side(const GridParams& p);

/// Random algebraic instance: A = L L^T + delta I with unit-scale sparse
/// lower-triangular L and delta = 1e-3 * ||L L^T||_2; B sparse with 2..5
/// entries per column, magnitudes in [0.3, 1.3], redrawn (at most 10
/// times) until sigma_min(B) > 1e-6 * sigma_max(B). Deterministic in seed.
SaddleSystem random_spd_saddle(index_t n_u, index_t n_t, std::uint64_t seed);

}  // namespace racp
