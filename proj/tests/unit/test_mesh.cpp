#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <biphasic/errors.hpp>
#include <biphasic/mesh.hpp>

namespace biphasic {
namespace {

TEST(UnitSquare, Counts) {
  const Mesh m1 = generate_unit_square(1);
  EXPECT_EQ(m1.num_cells(), 2);
  EXPECT_EQ(m1.num_vertices(), 4);
  EXPECT_EQ(m1.num_facets(), 4);
  const Mesh m2 = generate_unit_square(2);
  EXPECT_EQ(m2.num_cells(), 8);
  EXPECT_EQ(m2.num_vertices(), 9);
  EXPECT_EQ(m2.num_facets(), 8);
}

TEST(UnitSquare, VolumeAndBoundary) {
  for (int n : {1, 3, 7, 16}) {
    const Mesh m = generate_unit_square(n);
    EXPECT_NEAR(m.volume(), 1.0, 1e-14);
    EXPECT_NEAR(m.boundary_measure(), 4.0, 1e-13);
    EXPECT_TRUE(validate(m).empty());
    for (int c = 0; c < m.num_cells(); ++c) EXPECT_GT(m.cell_volume(c), 0.0);
  }
}

TEST(UnitSquare, OutwardNormals) {
  const Mesh m = generate_unit_square(4);
  for (int f = 0; f < m.num_facets(); ++f) {
    const auto fv = m.facet(f);
    const SmallVector mid = 0.5 * (m.vertex(fv[0]) + m.vertex(fv[1]));
    const SmallVector n = m.facet_normal(f);
    const SmallVector centre = SmallVector::Constant(2, 0.5);
    EXPECT_GT(n.dot(mid - centre), 0.0);
    EXPECT_NEAR(n.norm(), 1.0, 1e-14);
  }
}

TEST(UnitBall, DiskVolumeApproachesPi) {
  const Mesh coarse = generate_unit_ball(0, 2);
  EXPECT_EQ(coarse.num_cells(), 6);
  EXPECT_EQ(coarse.num_vertices(), 7);
  for (int v = 1; v < 7; ++v) EXPECT_NEAR(coarse.vertex(v).norm(), 1.0, 1e-14);
  const Mesh fine = generate_unit_ball(4, 2);
  EXPECT_LT(std::abs(fine.volume() - M_PI) / M_PI, 0.02);
  EXPECT_TRUE(validate(fine).empty());
}

TEST(UnitBall, BallVolumeWithinTwoPercent) {
  const Mesh m = generate_unit_ball(4, 3);
  EXPECT_LT(std::abs(m.volume() - 4.0 * M_PI / 3.0) / (4.0 * M_PI / 3.0), 0.02);
  EXPECT_TRUE(validate(m).empty());
}

TEST(UnitBall, EulerCharacteristicOfDisk) {
  for (int level = 0; level < 4; ++level) {
    const Mesh m = generate_unit_ball(level, 2);
    EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_cells(), 1) << "level " << level;
  }
}

TEST(UnitBall, InteriorFacetsSharedByTwoCells) {
  const Mesh m = generate_unit_ball(2, 3);
  std::map<std::vector<int>, int> count;
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto cv = m.cell(c);
    for (int skip = 0; skip < 4; ++skip) {
      std::vector<int> face;
      for (int k = 0; k < 4; ++k) {
        if (k != skip) face.push_back(cv[k]);
      }
      std::sort(face.begin(), face.end());
      ++count[face];
    }
  }
  std::set<std::vector<int>> boundary;
  for (int f = 0; f < m.num_facets(); ++f) {
    std::vector<int> face(m.facet(f).begin(), m.facet(f).end());
    std::sort(face.begin(), face.end());
    boundary.insert(face);
  }
  for (const auto& [face, n] : count) {
    EXPECT_EQ(n, boundary.count(face) ? 1 : 2);
  }
}

TEST(Edges, FindEdgeIsSymmetric) {
  const Mesh m = generate_unit_square(3);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto [a, b] = m.edge(e);
    EXPECT_EQ(m.find_edge(a, b), e);
    EXPECT_EQ(m.find_edge(b, a), e);
  }
  EXPECT_EQ(m.find_edge(0, 15), -1);
}

TEST(Refine, QuadruplesCellsAndPreservesArea) {
  const Mesh m = generate_unit_square(2);
  const Mesh r = refine(m);
  EXPECT_EQ(r.num_cells(), 4 * m.num_cells());
  EXPECT_EQ(r.num_facets(), 2 * m.num_facets());
  EXPECT_NEAR(r.volume(), 1.0, 1e-14);
  EXPECT_TRUE(validate(r).empty());
}

TEST(MeshIo, RoundTrip) {
  const Mesh m = generate_unit_square(2);
  std::stringstream ss;
  write_mesh(ss, m);
  const Mesh back = read_mesh(ss);
  ASSERT_EQ(back.num_vertices(), m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) EXPECT_EQ(back.vertex(v), m.vertex(v));
  EXPECT_EQ(back.cell_data(), m.cell_data());
  EXPECT_EQ(back.facet_data(), m.facet_data());
  EXPECT_EQ(back.facet_tags(), m.facet_tags());
}

TEST(MeshIo, RepeatedVertexCellIsValidationError) {
  std::stringstream ss("2 4 2 4\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 2\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n");
  try {
    read_mesh(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_NE(std::string(e.what()).find("cell 1"), std::string::npos) << e.what();
  }
}

TEST(MeshIo, BadFacetIndexIsParseError) {
  std::stringstream ss("2 4 2 4\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\n0 1 1\n1 2 1\n2 3 1\n3 9 1\n");
  try {
    read_mesh(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
  }
}

TEST(MeshIo, MissingFile) { EXPECT_THROW(load_mesh("/nonexistent/mesh.txt"), Error); }

}  // namespace
}  // namespace biphasic
