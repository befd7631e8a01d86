// SPDX-License-Identifier: Apache-2.0
#include "steklov/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

namespace steklov {

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << "nodes " << mesh.nodes.size() << " triangles " << mesh.triangles.size()
     << " inner_edges " << mesh.inner_edges.size() << " outer_edges "
     << mesh.outer_edges.size() << "\n";
  os << std::setprecision(17);
  for (const auto& p : mesh.nodes) os << p.x() << " " << p.y() << "\n";
  for (const auto& t : mesh.triangles)
    os << t[0] << " " << t[1] << " " << t[2] << "\n";
  for (const auto& e : mesh.inner_edges)
    os << e[0] << " " << e[1] << " INNER\n";
  for (const auto& e : mesh.outer_edges)
    os << e[0] << " " << e[1] << " OUTER\n";
}

Mesh read_mesh(std::istream& is) {
  Mesh mesh;
  std::string tag;
  size_t nn = 0, nt = 0, ni = 0, no = 0;
  is >> tag >> nn >> tag >> nt >> tag >> ni >> tag >> no;
  mesh.nodes.resize(nn);
  for (auto& p : mesh.nodes) is >> p.x() >> p.y();
  mesh.triangles.resize(nt);
  for (auto& t : mesh.triangles) is >> t[0] >> t[1] >> t[2];
  for (size_t k = 0; k < ni + no; ++k) {
    std::array<int, 2> e{};
    is >> e[0] >> e[1] >> tag;
    if (tag == "INNER") mesh.inner_edges.push_back(e);
    else mesh.outer_edges.push_back(e);
  }
  if (!is) throw Error("malformed mesh stream");
  return mesh;
}

void write_symmetric_matrix(std::ostream& os, const SparseMat& m) {
  os << "symmetric " << m.rows() << "\n";
  os << std::setprecision(17);
  for (int col = 0; col < m.outerSize(); ++col)
    for (SparseMat::InnerIterator it(m, col); it; ++it)
      if (it.row() >= it.col())
        os << it.row() << " " << it.col() << " " << it.value() << "\n";
}

void write_eigenpair(std::ostream& os, const EigenPair& pair) {
  os << std::setprecision(17);
  os << "sigma " << pair.sigma << "\n";
  os << "residual " << pair.residual << "\n";
  for (int i = 0; i < pair.u.size(); ++i) os << pair.u[i] << "\n";
}

} // namespace steklov
