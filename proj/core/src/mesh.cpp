#include "biphasic/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "biphasic/errors.hpp"

namespace biphasic {
namespace {

constexpr std::array<std::array<int, 2>, 3> kTriEdges{{{0, 1}, {1, 2}, {0, 2}}};
constexpr std::array<std::array<int, 2>, 6> kTetEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

using FaceKey = std::array<int, 3>;

FaceKey face_key(std::span<const int> verts) {
  FaceKey k{-1, -1, -1};
  std::copy(verts.begin(), verts.end(), k.begin());
  std::sort(k.begin(), k.begin() + static_cast<long>(verts.size()));
  return k;
}

double signed_volume(int dim, const std::vector<SmallVector>& v, std::span<const int> c) {
  SmallMatrix j(dim, dim);
  for (int k = 0; k < dim; ++k) j.col(k) = v[c[k + 1]] - v[c[0]];
  const double fact = dim == 2 ? 2.0 : 6.0;
  return j.determinant() / fact;
}

/// Faces of cell c: face k omits local vertex k.
std::vector<int> cell_face(std::span<const int> cell, int omit) {
  std::vector<int> f;
  for (int i = 0; i < static_cast<int>(cell.size()); ++i) {
    if (i != omit) f.push_back(cell[i]);
  }
  return f;
}

std::map<FaceKey, std::vector<int>> face_owners(const Mesh& m) {
  std::map<FaceKey, std::vector<int>> owners;
  for (int c = 0; c < m.num_cells(); ++c) {
    auto cell = m.cell(c);
    for (int k = 0; k <= m.dim(); ++k) owners[face_key(cell_face(cell, k))].push_back(c);
  }
  return owners;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::span<const std::array<int, 2>> Mesh::local_edges(int dim) {
  if (dim == 2) return kTriEdges;
  return kTetEdges;
}

Mesh::Mesh(int dim, std::vector<SmallVector> vertices, std::vector<int> cells,
           std::vector<int> facets, std::vector<int> facet_tags)
    : dim_(dim),
      vertices_(std::move(vertices)),
      cells_(std::move(cells)),
      facets_(std::move(facets)),
      facet_tags_(std::move(facet_tags)) {
  if (dim_ != 2 && dim_ != 3) throw Error(ErrorCode::ValidationError, "dim must be 2 or 3");
  if (cells_.size() % static_cast<std::size_t>(dim_ + 1) != 0 ||
      facets_.size() != facet_tags_.size() * static_cast<std::size_t>(dim_)) {
    throw Error(ErrorCode::ValidationError, "connectivity arrays have inconsistent lengths");
  }
  for (const auto& v : vertices_) {
    if (v.size() != dim_) throw Error(ErrorCode::ValidationError, "vertex dimension mismatch");
  }
  const int nv = num_vertices();
  auto check_index = [nv](int i, const char* what) {
    if (i < 0 || i >= nv) {
      throw Error(ErrorCode::ValidationError,
                  std::string(what) + " references nonexistent vertex " + std::to_string(i));
    }
  };
  for (int i : cells_) check_index(i, "cell");
  for (int i : facets_) check_index(i, "facet");

  for (int c = 0; c < num_cells(); ++c) {
    int* cv = cells_.data() + static_cast<std::size_t>(c) * (dim_ + 1);
    if (signed_volume(dim_, vertices_, {cv, static_cast<std::size_t>(dim_ + 1)}) < 0) {
      std::swap(cv[0], cv[1]);
    }
  }

  auto& edge_ids = edge_index_;
  const auto le = local_edges(dim_);
  cell_edges_.reserve(static_cast<std::size_t>(num_cells()) * le.size());
  for (int c = 0; c < num_cells(); ++c) {
    auto cv = cell(c);
    for (const auto& e : le) {
      const auto key = edge_key(cv[e[0]], cv[e[1]]);
      auto [it, inserted] = edge_ids.try_emplace(key, num_edges());
      if (inserted) {
        edges_.push_back({std::min(cv[e[0]], cv[e[1]]), std::max(cv[e[0]], cv[e[1]])});
      }
      cell_edges_.push_back(it->second);
    }
  }

  facet_cell_.assign(facet_tags_.size(), -1);
  if (!facet_tags_.empty()) {
    const auto owners = face_owners(*this);
    for (int f = 0; f < num_facets(); ++f) {
      auto it = owners.find(face_key(facet(f)));
      if (it != owners.end() && it->second.size() == 1) facet_cell_[f] = it->second.front();
    }
  }
}

std::span<const int> Mesh::cell_edges(int c) const {
  const std::size_t n = local_edges(dim_).size();
  return {cell_edges_.data() + static_cast<std::size_t>(c) * n, n};
}

int Mesh::find_edge(int a, int b) const {
  auto it = edge_index_.find(edge_key(a, b));
  return it == edge_index_.end() ? -1 : it->second;
}

double Mesh::cell_volume(int c) const { return signed_volume(dim_, vertices_, cell(c)); }

double Mesh::volume() const {
  double v = 0.0;
  for (int c = 0; c < num_cells(); ++c) v += cell_volume(c);
  return v;
}

double Mesh::facet_measure(int f) const {
  auto fv = facet(f);
  const SmallVector a = vertices_[fv[1]] - vertices_[fv[0]];
  if (dim_ == 2) return a.norm();
  const SmallVector b = vertices_[fv[2]] - vertices_[fv[0]];
  return 0.5 * Eigen::Vector3d(a).cross(Eigen::Vector3d(b)).norm();
}

double Mesh::boundary_measure() const {
  double s = 0.0;
  for (int f = 0; f < num_facets(); ++f) s += facet_measure(f);
  return s;
}

SmallVector Mesh::facet_normal(int f) const {
  auto fv = facet(f);
  SmallVector n(dim_);
  const SmallVector a = vertices_[fv[1]] - vertices_[fv[0]];
  if (dim_ == 2) {
    n << a(1), -a(0);
  } else {
    const SmallVector b = vertices_[fv[2]] - vertices_[fv[0]];
    n = Eigen::Vector3d(a).cross(Eigen::Vector3d(b));
  }
  n.normalize();
  const int c = facet_cell_[f];
  if (c >= 0) {
    for (int v : cell(c)) {
      if (std::find(fv.begin(), fv.end(), v) == fv.end()) {
        if (n.dot(vertices_[v] - vertices_[fv[0]]) > 0) n = -n;
        break;
      }
    }
  }
  return n;
}

double Mesh::max_edge_length() const {
  double h = 0.0;
  for (const auto& e : edges_) h = std::max(h, (vertices_[e[0]] - vertices_[e[1]]).norm());
  return h;
}

Mesh generate_unit_square(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "unit square needs n >= 1");
  const int np = n + 1;
  std::vector<SmallVector> verts;
  verts.reserve(static_cast<std::size_t>(np) * np);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      SmallVector p(2);
      p << static_cast<double>(i) / n, static_cast<double>(j) / n;
      verts.push_back(p);
    }
  }
  auto id = [np](int i, int j) { return j * np + i; };
  std::vector<int> cells;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      cells.insert(cells.end(), {id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      cells.insert(cells.end(), {id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  std::vector<int> facets;
  for (int i = 0; i < n; ++i) {
    facets.insert(facets.end(), {id(i, 0), id(i + 1, 0)});
    facets.insert(facets.end(), {id(n, i), id(n, i + 1)});
    facets.insert(facets.end(), {id(i + 1, n), id(i, n)});
    facets.insert(facets.end(), {id(0, i + 1), id(0, i)});
  }
  std::vector<int> tags(facets.size() / 2, 1);
  return Mesh(2, std::move(verts), std::move(cells), std::move(facets), std::move(tags));
}

namespace {

Mesh refine_impl(const Mesh& m, bool project_boundary) {
  const int dim = m.dim();
  std::vector<SmallVector> verts = m.vertices();
  std::vector<int> midpoint(static_cast<std::size_t>(m.num_edges()), -1);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& ed = m.edge(e);
    midpoint[e] = static_cast<int>(verts.size());
    verts.push_back(0.5 * (m.vertex(ed[0]) + m.vertex(ed[1])));
  }
  std::unordered_map<std::uint64_t, int> edge_lookup;
  for (int e = 0; e < m.num_edges(); ++e) edge_lookup[edge_key(m.edge(e)[0], m.edge(e)[1])] = e;
  auto mid = [&](int a, int b) { return midpoint[edge_lookup.at(edge_key(a, b))]; };

  std::vector<int> cells;
  for (int c = 0; c < m.num_cells(); ++c) {
    auto v = m.cell(c);
    if (dim == 2) {
      const int m01 = mid(v[0], v[1]), m12 = mid(v[1], v[2]), m02 = mid(v[0], v[2]);
      cells.insert(cells.end(), {v[0], m01, m02, m01, v[1], m12, m02, m12, v[2], m01, m12, m02});
    } else {
      const int x01 = mid(v[0], v[1]), x02 = mid(v[0], v[2]), x03 = mid(v[0], v[3]);
      const int x12 = mid(v[1], v[2]), x13 = mid(v[1], v[3]), x23 = mid(v[2], v[3]);
      cells.insert(cells.end(), {v[0], x01, x02, x03, x01, v[1], x12, x13, x02, x12, v[2], x23,
                                 x03, x13, x23, v[3], x01, x02, x03, x13, x01, x02, x12, x13,
                                 x02, x03, x13, x23, x02, x12, x13, x23});
    }
  }

  std::vector<int> facets, tags;
  for (int f = 0; f < m.num_facets(); ++f) {
    auto v = m.facet(f);
    const int tag = m.facet_tag(f);
    if (dim == 2) {
      const int mm = mid(v[0], v[1]);
      facets.insert(facets.end(), {v[0], mm, mm, v[1]});
      tags.insert(tags.end(), {tag, tag});
      if (project_boundary) verts[mm].normalize();
    } else {
      const int m01 = mid(v[0], v[1]), m12 = mid(v[1], v[2]), m02 = mid(v[0], v[2]);
      facets.insert(facets.end(), {v[0], m01, m02, m01, v[1], m12, m02, m12, v[2], m01, m12, m02});
      tags.insert(tags.end(), {tag, tag, tag, tag});
      if (project_boundary) {
        verts[m01].normalize();
        verts[m12].normalize();
        verts[m02].normalize();
      }
    }
  }
  return Mesh(dim, std::move(verts), std::move(cells), std::move(facets), std::move(tags));
}

}  // namespace

Mesh refine(const Mesh& mesh) { return refine_impl(mesh, false); }

Mesh generate_unit_ball(int level, int dim) {
  if (level < 0) throw Error(ErrorCode::InvalidParameter, "ball refinement level must be >= 0");
  std::vector<SmallVector> verts;
  std::vector<int> cells, facets, tags;
  SmallVector origin = SmallVector::Zero(dim);
  verts.push_back(origin);
  if (dim == 2) {
    constexpr int kSides = 6;
    for (int k = 0; k < kSides; ++k) {
      const double t = 2.0 * M_PI * k / kSides;
      SmallVector p(2);
      p << std::cos(t), std::sin(t);
      verts.push_back(p);
    }
    for (int k = 0; k < kSides; ++k) {
      const int a = 1 + k, b = 1 + (k + 1) % kSides;
      cells.insert(cells.end(), {0, a, b});
      facets.insert(facets.end(), {a, b});
      tags.push_back(1);
    }
  } else if (dim == 3) {
    for (int axis = 0; axis < 3; ++axis) {
      for (double s : {1.0, -1.0}) {
        SmallVector p = SmallVector::Zero(3);
        p(axis) = s;
        verts.push_back(p);
      }
    }
    // +x=1, -x=2, +y=3, -y=4, +z=5, -z=6
    for (int sx : {1, 2}) {
      for (int sy : {3, 4}) {
        for (int sz : {5, 6}) {
          cells.insert(cells.end(), {0, sx, sy, sz});
          facets.insert(facets.end(), {sx, sy, sz});
          tags.push_back(1);
        }
      }
    }
  } else {
    throw Error(ErrorCode::InvalidParameter, "ball dimension must be 2 or 3");
  }
  Mesh m(dim, std::move(verts), std::move(cells), std::move(facets), std::move(tags));
  for (int l = 0; l < level; ++l) m = refine_impl(m, true);
  return m;
}

std::vector<ValidationIssue> validate(const Mesh& m) {
  using Kind = ValidationIssue::Kind;
  std::vector<ValidationIssue> issues;
  for (const auto& v : m.vertices()) {
    if (v.size() != m.dim()) {
      issues.push_back({Kind::InconsistentDimension, {}, "vertex dimension differs from mesh"});
      return issues;
    }
  }
  double mean = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) mean += std::abs(m.cell_volume(c));
  mean = m.num_cells() > 0 ? mean / m.num_cells() : 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    auto cv = m.cell(c);
    std::vector<int> sorted(cv.begin(), cv.end());
    std::sort(sorted.begin(), sorted.end());
    const bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (repeated || std::abs(m.cell_volume(c)) < 1e-14 * mean) {
      issues.push_back({Kind::DegenerateCell, {c}, "cell " + std::to_string(c) + " is degenerate"});
    }
  }
  const auto owners = face_owners(m);
  std::map<FaceKey, int> tagged;
  for (int f = 0; f < m.num_facets(); ++f) {
    const auto key = face_key(m.facet(f));
    tagged[key] = f;
    auto it = owners.find(key);
    if (it == owners.end() || it->second.size() != 1) {
      issues.push_back({Kind::OrphanFacet, {f},
                        "facet " + std::to_string(f) + " is not owned by exactly one cell"});
    }
  }
  for (const auto& [key, cells] : owners) {
    if (cells.size() == 1 && !tagged.contains(key)) {
      issues.push_back({Kind::UntaggedBoundary, {cells.front()},
                        "boundary face of cell " + std::to_string(cells.front()) + " has no tag"});
    } else if (cells.size() > 2) {
      issues.push_back({Kind::BadIndex, cells, "face shared by more than two cells"});
    }
  }
  return issues;
}

Mesh read_mesh(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#') {
        return std::istringstream(line);
      }
    }
    parse_fail(line_no + 1, "unexpected end of file");
  };
  int dim = 0, nv = 0, nc = 0, nf = 0;
  {
    auto ls = next();
    if (!(ls >> dim >> nv >> nc >> nf)) parse_fail(line_no, "header must be 'dim nv nc nf'");
    if (dim != 2 && dim != 3) parse_fail(line_no, "dimension must be 2 or 3");
    if (nv < 0 || nc < 0 || nf < 0) parse_fail(line_no, "negative entity count");
  }
  std::vector<SmallVector> verts(static_cast<std::size_t>(nv), SmallVector(dim));
  for (int i = 0; i < nv; ++i) {
    auto ls = next();
    for (int k = 0; k < dim; ++k) {
      if (!(ls >> verts[i](k))) parse_fail(line_no, "expected " + std::to_string(dim) + " coordinates");
    }
  }
  auto read_indices = [&](int count, std::vector<int>& out) {
    auto ls = next();
    for (int k = 0; k < count; ++k) {
      int idx;
      if (!(ls >> idx)) parse_fail(line_no, "expected " + std::to_string(count) + " indices");
      if (idx < 0 || idx >= nv) parse_fail(line_no, "vertex index " + std::to_string(idx) + " out of range");
      out.push_back(idx);
    }
    return ls;
  };
  std::vector<int> cells, facets, tags;
  for (int i = 0; i < nc; ++i) read_indices(dim + 1, cells);
  for (int i = 0; i < nf; ++i) {
    auto ls = read_indices(dim, facets);
    int tag;
    if (!(ls >> tag)) parse_fail(line_no, "facet line missing tag");
    tags.push_back(tag);
  }
  Mesh mesh(dim, std::move(verts), std::move(cells), std::move(facets), std::move(tags));
  const auto issues = validate(mesh);
  if (!issues.empty()) {
    std::string msg;
    for (const auto& is : issues) msg += is.message + "; ";
    throw Error(ErrorCode::ValidationError, msg);
  }
  return mesh;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& m) {
  out << m.dim() << ' ' << m.num_vertices() << ' ' << m.num_cells() << ' ' << m.num_facets() << '\n';
  out << std::setprecision(17);
  for (const auto& v : m.vertices()) {
    for (int k = 0; k < m.dim(); ++k) out << (k ? " " : "") << v(k);
    out << '\n';
  }
  for (int c = 0; c < m.num_cells(); ++c) {
    auto cv = m.cell(c);
    for (std::size_t k = 0; k < cv.size(); ++k) out << (k ? " " : "") << cv[k];
    out << '\n';
  }
  for (int f = 0; f < m.num_facets(); ++f) {
    for (int v : m.facet(f)) out << v << ' ';
    out << m.facet_tag(f) << '\n';
  }
}

void save_mesh(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write mesh file '" + path + "'");
  write_mesh(out, mesh);
}

}  // namespace biphasic
