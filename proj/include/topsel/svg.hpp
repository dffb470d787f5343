#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topsel/persistence.hpp"

namespace topsel {

/// Birth/death scatter with the diagonal; infinite deaths drawn on a top band.
void write_diagram_svg(std::ostream& os, const GradedDiagram& d, const std::string& title);

/// One bar per variable, optional error whiskers.
void write_scores_svg(std::ostream& os, const Eigen::VectorXd& scores, const Eigen::VectorXd* sd,
                      const std::string& title);

/// Path projected onto its first two principal coordinates.
void write_path_svg(std::ostream& os, const std::vector<Eigen::VectorXd>& points, const std::string& title);

}  // namespace topsel
