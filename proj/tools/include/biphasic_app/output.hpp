#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <biphasic/assembly.hpp>
#include <biphasic/solver.hpp>

namespace biphasic::app {

/// VTK legacy ASCII unstructured grid. Fields are sampled at mesh vertices;
/// 2D vectors are padded with a zero third component.
void write_vtk(std::ostream& out, const SolutionTriple& solution, const std::string& title);
void write_vtk(const std::filesystem::path& path, const SolutionTriple& solution,
               const std::string& title);

/// Small CSV writer with 17 significant digits for floating-point cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  CsvTable& row();
  CsvTable& add(double v);
  CsvTable& add(int v);
  CsvTable& add(bool v);
  CsvTable& add(const std::string& v);
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

std::string picard_csv(const PicardReport& report);

}  // namespace biphasic::app
