// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_IO_HPP
#define STEKLOV_IO_HPP

#include <iosfwd>
#include <string>

#include "steklov/eig.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

/// Plain-text mesh format: header
///   nodes <N> triangles <T> inner_edges <I> outer_edges <O>
/// then node lines `x y`, triangle lines `i j k`, edge lines `i j tag`
/// with 17 significant digits on coordinates.
void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

/// Coordinate text format for a symmetric sparse matrix: header
/// `symmetric <N>`, then `i j value` with each off-diagonal stored once.
void write_symmetric_matrix(std::ostream& os, const SparseMat& m);

/// Eigenpair export: `sigma <value>`, `residual <value>`, then one nodal
/// value per line in mesh node order.
void write_eigenpair(std::ostream& os, const EigenPair& pair);

} // namespace steklov

#endif
