#include "biphasic_app/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <biphasic/errors.hpp>

namespace biphasic::app {

namespace {

double vertex_value(const FieldFunction& f, int vertex, int component) {
  const int dof = f.space->node_dof(vertex, component);
  return dof < 0 ? 0.0 : f.coefficients(dof);
}

void write_vector(std::ostream& out, const std::string& name, const FieldFunction& f) {
  const int nv = f.space->mesh().num_vertices();
  const int d = f.space->value_dim();
  out << "VECTORS " << name << " double\n";
  for (int v = 0; v < nv; ++v) {
    for (int i = 0; i < 3; ++i) {
      out << (i ? " " : "") << format_double(i < d ? vertex_value(f, v, i) : 0.0);
    }
    out << '\n';
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_vtk(std::ostream& out, const SolutionTriple& solution, const std::string& title) {
  const Mesh& mesh = solution.V.space->mesh();
  const int dim = mesh.dim();
  const int nv = mesh.num_vertices();
  const int nc = mesh.num_cells();

  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (int v = 0; v < nv; ++v) {
    const SmallVector& x = mesh.vertex(v);
    for (int i = 0; i < 3; ++i) out << (i ? " " : "") << format_double(i < dim ? x(i) : 0.0);
    out << '\n';
  }
  out << "CELLS " << nc << ' ' << nc * (dim + 2) << '\n';
  for (int c = 0; c < nc; ++c) {
    out << dim + 1;
    for (int v : mesh.cell(c)) out << ' ' << v;
    out << '\n';
  }
  out << "CELL_TYPES " << nc << '\n';
  const int type = dim == 2 ? 5 : 10;  // VTK_TRIANGLE, VTK_TETRA
  for (int c = 0; c < nc; ++c) out << type << '\n';

  out << "POINT_DATA " << nv << '\n';
  write_vector(out, "V_f", solution.V);
  write_vector(out, "U_s", solution.U);
  out << "SCALARS P double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < nv; ++v) out << format_double(vertex_value(solution.P, v, 0)) << '\n';
}

void write_vtk(const std::filesystem::path& path, const SolutionTriple& solution,
               const std::string& title) {
  std::ofstream out = open_for_write(path);
  write_vtk(out, solution, title);
}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(double v) { return add(format_double(v)); }
CsvTable& CsvTable::add(int v) { return add(std::to_string(v)); }
CsvTable& CsvTable::add(bool v) { return add(std::string(v ? "true" : "false")); }

CsvTable& CsvTable::add(const std::string& v) {
  if (rows_.empty()) rows_.emplace_back();
  rows_.back().push_back(v);
  return *this;
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

void CsvTable::save(const std::filesystem::path& path) const {
  std::ofstream out = open_for_write(path);
  out << str();
}

std::string picard_csv(const PicardReport& report) {
  CsvTable t({"iteration", "v_h1", "grad_u", "p_l2", "step_diff", "linear_residual", "within_bound"});
  for (std::size_t i = 0; i < report.iterates.size(); ++i) {
    const PicardIterate& it = report.iterates[i];
    t.row()
        .add(static_cast<int>(i + 1))
        .add(it.v_h1)
        .add(it.grad_u)
        .add(it.p_l2)
        .add(it.step_diff)
        .add(it.linear_residual)
        .add(it.within_bound);
  }
  return t.str();
}

}  // namespace biphasic::app
