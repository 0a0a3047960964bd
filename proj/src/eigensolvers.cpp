#include "bkdv/eigensolvers.hpp"

#include <random>
#include <sstream>
#include <vector>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

void project_out(Eigen::MatrixXd& v, const Eigen::MatrixXd& y) {
    if (y.cols() == 0) return;
    v -= y * (y.transpose() * v);
}

// Orthonormal basis of span(s) via the Gram matrix; columns whose Gram eigenvalue falls
// below the threshold are dropped. Returns the coefficient map C with basis = s * C.
Eigen::MatrixXd orthonormal_coefficients(const Eigen::MatrixXd& s) {
    Eigen::MatrixXd gram = s.transpose() * s;
    gram = 0.5 * (gram + gram.transpose());
    Eigen::VectorXd scale = gram.diagonal().cwiseSqrt();
    for (Eigen::Index i = 0; i < scale.size(); ++i) {
        if (!(scale(i) > 0.0)) scale(i) = 1.0;
    }
    const Eigen::MatrixXd d = scale.cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d * gram * d);
    const auto& w = es.eigenvalues();
    const double cut = 1e-13 * w.maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) > cut) keep.push_back(i);
    }
    Eigen::MatrixXd c(s.cols(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        c.col(static_cast<Eigen::Index>(j)) = d * es.eigenvectors().col(keep[j]) / std::sqrt(w(keep[j]));
    }
    return c;
}

}  // namespace

EigenPairs dense_lowest(const Eigen::MatrixXd& a, int k) {
    if (k < 1 || k > a.rows()) throw InputError("requested eigenpair count out of range");
    Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense symmetric eigensolver failed", {});
    EigenPairs out;
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    out.max_residual = ((sym * out.vectors) - out.vectors * out.values.asDiagonal()).colwise().norm().maxCoeff();
    return out;
}

Eigen::MatrixXd to_dense(const BlockOperator& op, Eigen::Index n) {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    return op(id);
}

EigenPairs lobpcg(const BlockOperator& a, const BlockOperator& precond, Eigen::Index n, const LobpcgOptions& opts) {
    const int k = opts.k;
    if (k < 1 || k >= n / 3) throw InputError("lobpcg block size out of range");
    const Eigen::MatrixXd& y = opts.constraints;
    if (y.cols() > 0 && y.rows() != n) throw InputError("constraint block has the wrong height");

    Eigen::MatrixXd x;
    if (opts.initial.size() > 0) {
        if (opts.initial.rows() != n || opts.initial.cols() != k) throw InputError("initial block has the wrong shape");
        x = opts.initial;
    } else {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> gauss;
        x.resize(n, k);
        for (Eigen::Index j = 0; j < k; ++j)
            for (Eigen::Index i = 0; i < n; ++i) x(i, j) = gauss(rng);
    }
    project_out(x, y);
    {
        const Eigen::MatrixXd c = orthonormal_coefficients(x);
        if (c.cols() < k) throw InputError("initial block is rank deficient after deflation");
        x = x * c;
    }
    Eigen::MatrixXd ax = a(x);
    {
        Eigen::MatrixXd h = x.transpose() * ax;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
        x = x * es.eigenvectors();
        ax = ax * es.eigenvectors();
    }
    Eigen::VectorXd lambda = (x.transpose() * ax).diagonal();
    Eigen::MatrixXd p, ap;
    std::vector<double> history;

    for (int it = 0; it < opts.max_iter; ++it) {
        Eigen::MatrixXd r = ax - x * lambda.asDiagonal();
        // Residual of the deflated operator: components along the constraints do not count.
        project_out(r, y);
        const Eigen::VectorXd rn = r.colwise().norm();
        history.push_back(rn.maxCoeff());
        if (rn.maxCoeff() <= opts.tol) {
            EigenPairs out;
            out.values = lambda;
            out.vectors = x;
            out.iterations = it;
            out.max_residual = rn.maxCoeff();
            return out;
        }
        Eigen::MatrixXd w = precond(r);
        project_out(w, y);
        Eigen::MatrixXd aw = a(w);

        const Eigen::Index pc = p.cols();
        Eigen::MatrixXd s(n, 2 * k + pc), as(n, 2 * k + pc);
        s.leftCols(k) = x;
        s.middleCols(k, k) = w;
        as.leftCols(k) = ax;
        as.middleCols(k, k) = aw;
        if (pc > 0) {
            s.rightCols(pc) = p;
            as.rightCols(pc) = ap;
        }
        const Eigen::MatrixXd c = orthonormal_coefficients(s);
        const Eigen::MatrixXd basis = s * c;
        const Eigen::MatrixXd abasis = as * c;
        Eigen::MatrixXd h = basis.transpose() * abasis;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
        const Eigen::MatrixXd coef = c * es.eigenvectors().leftCols(k);

        // Search direction: contribution of the W and P blocks.
        Eigen::MatrixXd coef_dir = coef;
        coef_dir.topRows(k).setZero();
        p = s * coef_dir;
        ap = as * coef_dir;
        x = s * coef;
        project_out(x, y);
        ax = a(x);
        lambda = es.eigenvalues().head(k);
        // Re-normalize against drift.
        for (Eigen::Index j = 0; j < k; ++j) {
            const double nx = x.col(j).norm();
            x.col(j) /= nx;
            ax.col(j) /= nx;
            lambda(j) = x.col(j).dot(ax.col(j));
        }
    }
    std::ostringstream os;
    os << "lobpcg did not converge in " << opts.max_iter << " iterations (residual " << history.back() << ")";
    throw ConvergenceError(os.str(), history);
}

}  // namespace bkdv
