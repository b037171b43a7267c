#pragma once

#include "problem.hpp"

#include <Eigen/SparseCore>

#include <span>
#include <string>
#include <vector>

namespace stagbox {

enum class JacobianMode { autodiff, finite_difference };

std::string to_string(JacobianMode mode);
JacobianMode parse_jacobian_mode(const std::string& name);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

//! Sparse Jacobian of the coupled residual. The sparsity pattern is traced once;
//! columns are grouped by a distance-2 coloring so that one directional
//! derivative per color recovers all entries.
class JacobianAssembler {
public:
    explicit JacobianAssembler(const CoupledProblem& problem);

    const CoupledProblem& problem() const { return *problem_; }
    int num_colors() const { return num_colors_; }
    const std::vector<int>& colors() const { return color_; }
    const SparseMatrix& pattern() const { return pattern_; }

    //! Residual at x and Jacobian with the traced pattern.
    void assemble(std::span<const double> x, std::vector<double>& r, SparseMatrix& J,
                  JacobianMode mode = JacobianMode::autodiff) const;

private:
    const CoupledProblem* problem_;
    SparseMatrix pattern_;
    std::vector<int> color_;
    int num_colors_ = 0;
    // per color: (row, index into the value array) of every entry in that color
    std::vector<std::vector<std::pair<int, int>>> entries_;
    std::vector<std::vector<int>> color_columns_;
};

} // namespace stagbox
