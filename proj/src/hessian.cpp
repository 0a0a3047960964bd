#include "bkdv/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bkdv/errors.hpp"
#include "bkdv/reg_symplectic.hpp"

namespace bkdv {

namespace {

Eigen::VectorXd to_vector(const GridFunction& f) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t j = 0; j < f.size(); ++j) v(static_cast<Eigen::Index>(j)) = f[j];
    return v;
}

GridFunction to_grid(const Grid& g, const Eigen::VectorXd& v) {
    return GridFunction(g, std::vector<double>(v.data(), v.data() + v.size()));
}

// Applies a real Fourier symbol to every column.
Eigen::MatrixXd apply_symbol_block(const Grid& g, const Eigen::MatrixXd& x, const std::vector<double>& symbol) {
    Spectral fft(g);
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd out(n, x.cols());
    std::vector<std::complex<double>> hat(g.modes());
    std::vector<double> col(g.size()), res(g.size());
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        std::copy(x.col(c).data(), x.col(c).data() + n, col.begin());
        fft.forward(col, hat);
        for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= symbol[j];
        fft.inverse(hat, res);
        std::copy(res.begin(), res.end(), out.col(c).data());
    }
    return out;
}

double localized_fraction(const GridFunction& v, double a) {
    const Grid& g = v.grid();
    double inside = 0.0, total = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double w = v[j] * v[j];
        total += w;
        if (std::abs(g.wrap(g.x(j) - a)) <= 0.25 * g.length()) inside += w;
    }
    return total > 0.0 ? inside / total : 0.0;
}

// Orthonormal (Euclidean) columns spanning {u, w}.
Eigen::MatrixXd orthonormal_pair(const GridFunction& u, const GridFunction& w) {
    Eigen::MatrixXd y(static_cast<Eigen::Index>(u.size()), 2);
    y.col(0) = to_vector(u);
    y.col(1) = to_vector(w);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), 2);
}

double l2_normalized(GridFunction& v) {
    const double n = l2_norm(v);
    v = (1.0 / n) * v;
    return n;
}

}  // namespace

GridFunction apply_hessian(const GridFunction& v, const GridFunction& q, double c, const Nonlinearity& nl) {
    require_same_grid(v, q);
    std::vector<double> pot(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) pot[j] = (c - nl.df(q[j])) * v[j];
    return -derivative(v, 2) + GridFunction(v.grid(), std::move(pot));
}

GridFunction apply_hessian(const GridFunction& v, const SolitonFamily& fam, const SolitonParams& p) {
    return apply_hessian(v, fam.profile(p.c, p.a), p.c, fam.nonlinearity());
}

BlockOperator hessian_block(const GridFunction& q, double c, const Nonlinearity& nl) {
    const Grid g = q.grid();
    std::vector<double> symbol(g.modes());
    for (std::size_t j = 0; j < symbol.size(); ++j) symbol[j] = g.wavenumber(j) * g.wavenumber(j);
    Eigen::VectorXd pot(static_cast<Eigen::Index>(g.size()));
    for (std::size_t j = 0; j < g.size(); ++j) pot(static_cast<Eigen::Index>(j)) = c - nl.df(q[j]);
    return [g, symbol, pot](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
        Eigen::MatrixXd out = apply_symbol_block(g, x, symbol);
        out += pot.asDiagonal() * x;
        return out;
    };
}

BlockOperator shifted_laplacian_inverse(const Grid& g, double c) {
    std::vector<double> symbol(g.modes());
    for (std::size_t j = 0; j < symbol.size(); ++j) symbol[j] = 1.0 / (g.wavenumber(j) * g.wavenumber(j) + c);
    return [g, symbol](const Eigen::MatrixXd& x) { return apply_symbol_block(g, x, symbol); };
}

SpectralReport spectrum(const SolitonFamily& fam, double c, double a, int k, const SpectrumOptions& opts) {
    if (k < 1 || k > 10) throw InputError("spectrum supports 1 <= k <= 10");
    const Grid& g = fam.grid();
    const auto q = fam.profile(c, a);
    const auto op = hessian_block(q, c, fam.nonlinearity());
    const auto n = static_cast<Eigen::Index>(g.size());

    EigenMethod method = opts.method;
    if (method == EigenMethod::automatic) method = g.size() <= 1024 ? EigenMethod::dense : EigenMethod::iterative;
    EigenPairs pairs;
    if (method == EigenMethod::dense) {
        pairs = dense_lowest(to_dense(op, n), k);
    } else {
        LobpcgOptions lo;
        lo.k = k;
        lo.tol = opts.tol;
        lo.max_iter = 5000;
        pairs = lobpcg(op, shifted_laplacian_inverse(g, c), n, lo);
    }

    SpectralReport rep;
    rep.max_residual = pairs.max_residual;
    const auto ztr = fam.translation_tangent(c, a);
    rep.nullspace_residual = l2_norm(apply_hessian(ztr, q, c, fam.nonlinearity())) / l2_norm(ztr);
    rep.essential_onset = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> local_values;
    for (int i = 0; i < k; ++i) {
        const double lam = pairs.values(i);
        auto v = to_grid(g, pairs.vectors.col(i));
        l2_normalized(v);
        const bool loc = localized_fraction(v, a) >= 0.9;
        rep.eigenvalues.push_back(lam);
        rep.localized.push_back(loc);
        if (lam < -opts.zero_tol) ++rep.negative_count;
        if (std::abs(lam) <= opts.zero_tol) {
            rep.zero_mode_cosine = std::max(rep.zero_mode_cosine,
                                            std::abs(inner_product(v, ztr)) / l2_norm(ztr));
        }
        if (loc) {
            local_values.push_back(lam);
        } else if (std::isnan(rep.essential_onset)) {
            rep.essential_onset = lam;
        }
        rep.eigenvectors.push_back(std::move(v));
    }
    rep.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < local_values.size(); ++i) {
        rep.min_gap = std::min(rep.min_gap, local_values[i] - local_values[i - 1]);
    }
    return rep;
}

CoercivityResult coercivity(const SolitonFamily& fam, const SolitonParams& p, const CoercivityOptions& opts) {
    const Grid& g = fam.grid();
    const Nonlinearity& nl = fam.nonlinearity();
    const auto n = static_cast<Eigen::Index>(g.size());
    CoercivityResult r(fam.profile(p.c, p.a), apply_reg_inverse(fam.scaling_tangent(p.c, p.a), p.alpha));
    const Eigen::MatrixXd y = orthonormal_pair(r.q, r.reg_scaling);
    const auto op = hessian_block(r.q, p.c, nl);

    EigenMethod method = opts.method == EigenMethod::automatic ? EigenMethod::iterative : opts.method;
    EigenPairs pairs;
    if (method == EigenMethod::dense) {
        const Eigen::MatrixXd l = to_dense(op, n);
        const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - y * y.transpose();
        const double kmax = g.max_wavenumber();
        const double shift = 10.0 * (kmax * kmax + std::abs(p.c) + l.diagonal().cwiseAbs().maxCoeff() + 1.0);
        pairs = dense_lowest(proj * l * proj + shift * (y * y.transpose()), 2);
    } else {
        LobpcgOptions lo;
        lo.k = 2;
        lo.tol = opts.tol;
        lo.max_iter = 5000;
        lo.constraints = y;
        if (opts.initial) {
            require_same_grid(*opts.initial, r.q);
            std::mt19937_64 rng(lo.seed);
            std::normal_distribution<double> gauss;
            lo.initial.resize(n, 2);
            lo.initial.col(0) = to_vector(*opts.initial);
            for (Eigen::Index i = 0; i < n; ++i) lo.initial(i, 1) = gauss(rng);
        }
        pairs = lobpcg(op, shifted_laplacian_inverse(g, p.c), n, lo);
    }

    r.sigma = pairs.values(0);
    r.second = pairs.values(1);
    if (!(r.sigma > 0.0)) {
        std::ostringstream os;
        os << "constrained Hessian minimum is not positive (sigma = " << r.sigma << " at c = " << p.c << ")";
        throw StabilityError(os.str());
    }
    if (r.sigma >= p.c) {
        std::ostringstream os;
        os << "constrained Hessian minimum " << r.sigma << " reaches the continuum at c = " << p.c
           << "; alpha = " << p.alpha << " is too large";
        throw AdmissibilityError(os.str());
    }

    auto eta = to_grid(g, pairs.vectors.col(0));
    l2_normalized(eta);
    const auto ztr = fam.translation_tangent(p.c, p.a);
    double gamma = inner_product(eta, ztr) / inner_product(ztr, ztr);
    if (gamma < 0.0) {
        eta = -eta;
        gamma = -gamma;
    }
    r.eta = eta;
    r.gamma = gamma;
    r.eta_perp = eta - gamma * ztr;

    const auto leta = apply_hessian(eta, r.q, p.c, nl);
    r.beta = inner_product(leta, eta);
    Eigen::Matrix2d gram;
    gram << inner_product(r.q, r.q), inner_product(r.reg_scaling, r.q), inner_product(r.q, r.reg_scaling),
        inner_product(r.reg_scaling, r.reg_scaling);
    const Eigen::Vector2d rhs(inner_product(leta, r.q), inner_product(leta, r.reg_scaling));
    const Eigen::Vector2d mult = gram.partialPivLu().solve(rhs);
    r.beta1 = mult(0);
    r.beta2 = mult(1);
    r.euler_lagrange_residual = l2_norm(leta - r.beta * eta - r.beta1 * r.q - r.beta2 * r.reg_scaling);
    r.constraint_residual = std::max(std::abs(inner_product(eta, r.q)) / l2_norm(r.q),
                                     std::abs(inner_product(eta, r.reg_scaling)) / l2_norm(r.reg_scaling));

    double k = 0.0;
    for (std::size_t j = 0; j < r.q.size(); ++j) k = std::max(k, nl.df(r.q[j]) - p.c);
    r.potential_bound = k;
    r.good_constant = r.second / (r.second + k + 1.0);
    const double eh1 = sobolev_norm_h1(eta);
    r.bad_constant = r.sigma / (eh1 * eh1);
    return r;
}

std::pair<GridFunction, GridFunction> anisotropic_split(const GridFunction& xi, const GridFunction& eta) {
    require_same_grid(xi, eta);
    const double s = inner_product(xi, eta) / inner_product(eta, eta);
    auto b = s * eta;
    auto gpart = xi - b;
    return {std::move(b), std::move(gpart)};
}

GridFunction project_admissible(const GridFunction& xi, const CoercivityResult& r) {
    // Gram-Schmidt in the L² pairing.
    auto e1 = r.q;
    l2_normalized(e1);
    auto e2 = r.reg_scaling - inner_product(r.reg_scaling, e1) * e1;
    l2_normalized(e2);
    auto out = xi - inner_product(xi, e1) * e1;
    out = out - inner_product(out, e2) * e2;
    return out - inner_product(out, e1) * e1;
}

TrialBound trial_function_bound(const SolitonFamily& fam, const SolitonParams& p) {
    const auto q = fam.profile(p.c, p.a);
    const auto ztr = fam.translation_tangent(p.c, p.a);
    const auto rz = apply_reg_inverse(fam.scaling_tangent(p.c, p.a), p.alpha);
    const double qr = inner_product(q, rz);
    const double qq = inner_product(q, q);
    const double rr = inner_product(rz, rz);
    const double tr = inner_product(ztr, rz);
    if (tr == 0.0) throw InputError("translation tangent is orthogonal to the regularized scaling tangent");
    TrialBound b;
    // Unnormalized solution with λ₂ = 1, then scale to unit norm.
    double l2 = 1.0;
    double l3 = -qr / qq;
    double l1 = -(rr + l3 * qr) / tr;
    auto xi = l1 * ztr + l2 * rz + l3 * q;
    const double nrm = l2_norm(xi);
    b.lambda1 = l1 / nrm;
    b.lambda2 = l2 / nrm;
    b.lambda3 = l3 / nrm;
    xi = (1.0 / nrm) * xi;
    b.rayleigh = inner_product(apply_hessian(xi, q, p.c, fam.nonlinearity()), xi);
    return b;
}

}  // namespace bkdv
