#pragma once

#include <span>

#include <Eigen/Dense>

#include "topsel/persistence.hpp"

namespace topsel {

/// Diagrams of the matrix-induced weight w_M in the requested degrees,
/// computed on the (k+1)-skeleton for the largest requested k. Uses the
/// canonical base order for ties and reduces coboundary matrices with
/// clearing, degree by degree starting at -1. Every point carries provenance.
///
/// Produces the same pairs as `compute_diagram` on the full augmented simplex.
GradedDiagram rips_diagram(const Eigen::MatrixXd& M, std::span<const int> degrees, bool validate = true);

/// Lexicographic rank of a strictly increasing vertex list among all subsets
/// of {0..m-1} of the same size.
std::uint64_t lex_rank(std::span<const int> vertices, int m);

/// Canonical base rank (empty simplex first, then by dimension, then lex).
std::uint64_t canonical_rank(std::span<const int> vertices, int m);

}  // namespace topsel
