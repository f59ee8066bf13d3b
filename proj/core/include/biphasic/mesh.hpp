#pragma once

// Simplicial meshes (triangles in 2D, tetrahedra in 3D) with tagged
// boundary facets.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "biphasic/types.hpp"

namespace biphasic {

class Mesh {
 public:
  /// Cells are reoriented to positive signed volume. `cells` is flat with
  /// stride dim+1, `facets` flat with stride dim.
  Mesh(int dim, std::vector<SmallVector> vertices, std::vector<int> cells,
       std::vector<int> facets, std::vector<int> facet_tags);

  int dim() const { return dim_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()) / (dim_ + 1); }
  int num_facets() const { return static_cast<int>(facet_tags_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const SmallVector& vertex(int i) const { return vertices_[i]; }
  const std::vector<SmallVector>& vertices() const { return vertices_; }
  std::span<const int> cell(int c) const {
    return {cells_.data() + static_cast<std::size_t>(c) * (dim_ + 1),
            static_cast<std::size_t>(dim_ + 1)};
  }
  std::span<const int> facet(int f) const {
    return {facets_.data() + static_cast<std::size_t>(f) * dim_, static_cast<std::size_t>(dim_)};
  }
  int facet_tag(int f) const { return facet_tags_[f]; }
  const std::vector<int>& cell_data() const { return cells_; }
  const std::vector<int>& facet_data() const { return facets_; }
  const std::vector<int>& facet_tags() const { return facet_tags_; }

  /// Edge e as a sorted vertex pair. Edges are numbered in order of first
  /// appearance while walking cells and their local edges.
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  /// Global edge indices of cell c in local-edge order (see local_edges()).
  std::span<const int> cell_edges(int c) const;
  /// Global edge index of the edge between vertices a and b, or -1.
  int find_edge(int a, int b) const;

  /// Cell owning boundary facet f, or -1 for an orphan facet.
  int facet_cell(int f) const { return facet_cell_[f]; }

  double cell_volume(int c) const;
  double volume() const;
  /// Total measure of the tagged boundary facets.
  double boundary_measure() const;
  double facet_measure(int f) const;
  /// Unit normal of facet f pointing out of its owning cell.
  SmallVector facet_normal(int f) const;
  double max_edge_length() const;

  /// Local edges of the reference simplex as pairs of local vertex indices.
  static std::span<const std::array<int, 2>> local_edges(int dim);

 private:
  int dim_;
  std::vector<SmallVector> vertices_;
  std::vector<int> cells_;
  std::vector<int> facets_;
  std::vector<int> facet_tags_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<int> cell_edges_;
  std::vector<int> facet_cell_;
  std::unordered_map<std::uint64_t, int> edge_index_;
};

/// Structured mesh of [0,1]^2: each of the n*n squares split along its
/// (0,0)-(1,1) diagonal. All boundary facets carry tag 1.
Mesh generate_unit_square(int n);

/// Polyhedral approximation of the unit disk (dim 2) or ball (dim 3):
/// a coarse fan (hexagon / octahedron) refined `level` times, with new
/// boundary midpoints projected radially onto the unit sphere.
Mesh generate_unit_ball(int level, int dim);

/// Uniform red refinement. Boundary facets are refined along with cells.
Mesh refine(const Mesh& mesh);

struct ValidationIssue {
  enum class Kind { DegenerateCell, OrphanFacet, UntaggedBoundary, InconsistentDimension, BadIndex };
  Kind kind;
  std::vector<int> indices;
  std::string message;
};

/// Degenerate cells (volume below 1e-14 of the mean), facets not owned by
/// exactly one cell, boundary faces without a tagged facet.
std::vector<ValidationIssue> validate(const Mesh& mesh);

/// Parses the ASCII mesh format; throws ParseError (with line number) or
/// ValidationError (with offending indices).
Mesh read_mesh(std::istream& in);
Mesh load_mesh(const std::string& path);
void write_mesh(std::ostream& out, const Mesh& mesh);
void save_mesh(const std::string& path, const Mesh& mesh);

}  // namespace biphasic
