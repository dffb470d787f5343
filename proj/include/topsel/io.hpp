#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topsel/optimize.hpp"
#include "topsel/persistence.hpp"

namespace topsel {

/// Shortest round-trip safe text: 17 significant digits, `inf`/`-inf` for
/// infinities.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;  // empty when the file has none
  Eigen::MatrixXd values;
};

/// Numeric CSV. A first row that does not parse as numbers is taken as a
/// header. Errors name the offending line.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m, const std::vector<std::string>& header = {});

/// `degree,birth,death`
void write_diagram_csv(std::ostream& os, const GradedDiagram& d);
/// `step,f_value,v_1,...,v_p`
void write_path_csv(std::ostream& os, const GradientPath& path);
/// Per-step event flags plus run-level outcome.
void write_events_json(std::ostream& os, const GradientPath& path);

/// Opens for writing with LF line endings; throws `io` errors.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace topsel
