#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace bkdv {

/// Symmetric linear map on R^n applied to a block of column vectors.
using BlockOperator = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

struct EigenPairs {
    Eigen::VectorXd values;    ///< ascending
    Eigen::MatrixXd vectors;   ///< unit Euclidean columns
    int iterations = 0;
    double max_residual = 0.0; ///< max_i ||A x_i - λ_i x_i||
};

/// Lowest k eigenpairs of a dense symmetric matrix.
EigenPairs dense_lowest(const Eigen::MatrixXd& a, int k);

/// Materialize an operator as a dense matrix (n applications of the identity block).
Eigen::MatrixXd to_dense(const BlockOperator& op, Eigen::Index n);

struct LobpcgOptions {
    int k = 1;
    double tol = 1e-10;         ///< on ||A x - λ x|| for unit x
    int max_iter = 1000;
    std::uint64_t seed = 12345;
    /// Orthonormal columns spanning the excluded subspace; may be empty.
    Eigen::MatrixXd constraints;
    /// Optional starting block (n × k); random when empty.
    Eigen::MatrixXd initial;
};

/// Locally optimal block preconditioned conjugate gradient for the lowest k eigenpairs of a
/// symmetric operator restricted to the orthogonal complement of `constraints`.
/// Throws ConvergenceError (with the residual history) when max_iter is exhausted.
EigenPairs lobpcg(const BlockOperator& a, const BlockOperator& precond, Eigen::Index n, const LobpcgOptions& opts);

}  // namespace bkdv
