#include "bkdv/reg_symplectic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("regularization parameter must be positive");
}

GridFunction weighted_by_x(const GridFunction& f) {
    const Grid& g = f.grid();
    std::vector<double> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = g.x(j) * f[j];
    return make_unchecked(g, std::move(v));
}

GridFunction roll(const GridFunction& f, std::size_t m) {
    std::vector<double> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[(j + m) % v.size()] = f[j];
    return make_unchecked(f.grid(), std::move(v));
}

void require_negligible_tails(const GridFunction& f, double tol, const char* name) {
    const std::size_t n = f.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 20);
    double tail = 0.0;
    for (std::size_t j = 0; j < edge; ++j) tail = std::max({tail, std::abs(f[j]), std::abs(f[n - 1 - j])});
    const double peak = f.max_abs();
    if (peak > 0.0 && tail > tol * peak) {
        std::ostringstream os;
        os << name << " is not negligible near the box edge (tail/peak = " << tail / peak << ")";
        throw InputError(os.str());
    }
}

double sq(double v) { return v * v; }

}  // namespace

GridFunction apply_K(const GridFunction& f) {
    const double mean = integral(f);
    const double scale = l1_norm(f);
    if (std::abs(mean) > 1e-10 * std::max(scale, 1e-300) && scale > 0.0) {
        std::ostringstream os;
        os << "antiderivative requires a zero-mean input; got ∫f = " << mean;
        throw InputError(os.str());
    }
    const Grid& g = f.grid();
    Spectral fft(g);
    auto out = fft.apply(f, [&](std::size_t j) -> std::complex<double> {
        const double k = g.odd_wavenumber(j);
        if (k == 0.0) return 0.0;
        return std::complex<double>(0.0, -1.0 / k);
    });
    return out - GridFunction::constant(g, out[0]);
}

GridFunction line_antiderivative(const GridFunction& f) {
    const Grid& g = f.grid();
    const double mean = integral(f) / g.length();
    const auto periodic = apply_K(f - GridFunction::constant(g, mean));
    std::vector<double> v(f.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = periodic[j] + mean * (g.x(j) + 0.5 * g.length());
    return make_unchecked(g, std::move(v));
}

GridFunction apply_reg_inverse(const GridFunction& f, double alpha) {
    require_alpha(alpha);
    const Grid& g = f.grid();
    Spectral fft(g);
    return fft.apply(f, [&](std::size_t j) {
        return 1.0 / std::complex<double>(alpha, g.odd_wavenumber(j));
    });
}

GridFunction reg_inverse_line(const std::function<double(double)>& phi, const Grid& grid, double alpha) {
    require_alpha(alpha);
    const double h = grid.spacing();
    const double decay = std::exp(-alpha * h);
    std::vector<double> v(grid.size());
    double acc = 0.0;
    double left = grid.x(0);
    v[0] = 0.0;
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double right = grid.x(j);
        double cell = 0.0;
        for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
            const double y = left + 0.5 * h * (kGlNodes[q] + 1.0);
            cell += kGlWeights[q] * phi(y) * std::exp(alpha * (y - right));
        }
        acc = decay * acc + 0.5 * h * cell;
        v[j] = acc;
        left = right;
    }
    return GridFunction(grid, std::move(v));
}

bool InverseClauseReport::all_pass() const noexcept {
    return std::all_of(std::begin(clause), std::end(clause), [](bool b) { return b; });
}

std::string InverseClauseReport::to_text() const {
    std::ostringstream os;
    os.precision(10);
    for (int i = 0; i < 6; ++i) os << "clause" << (i + 1) << " = " << (clause[i] ? "pass" : "fail") << '\n';
    for (const auto& [k, v] : values) os << k << " = " << v << '\n';
    return os.str();
}

InverseClauseReport check_inverse_clauses(const GridFunction& phi, const GridFunction& psi, double alpha,
                            const InverseClauseOptions& opts) {
    require_alpha(alpha);
    require_same_grid(phi, psi);
    const Grid& g = phi.grid();
    if (alpha * g.length() < 8.0) {
        std::ostringstream os;
        os << "box too short for this regularization: alpha*L = " << alpha * g.length() << " < 8";
        throw InputError(os.str());
    }
    require_negligible_tails(phi, opts.tail_tol, "phi");
    require_negligible_tails(psi, opts.tail_tol, "psi");

    InverseClauseReport rep;
    const auto rphi = apply_reg_inverse(phi, alpha);
    const double phi_l1 = l1_norm(phi);
    const double psi_l1 = l1_norm(psi);
    const double xphi_l1 = l1_norm(weighted_by_x(phi));
    const double xpsi_l1 = l1_norm(weighted_by_x(psi));

    // (1) commutation with ∂_x and with translation by a grid multiple
    {
        const auto rhs = phi - alpha * rphi;
        const double scale = std::max(phi.max_abs(), 1e-300);
        const double r1 = (derivative(rphi, 1) - rhs).max_abs() / scale;
        const double r2 = (apply_reg_inverse(derivative(phi, 1), alpha) - rhs).max_abs() / scale;
        const std::size_t m = g.size() / 16 + 3;
        const double r3 = (apply_reg_inverse(roll(phi, m), alpha) - roll(rphi, m)).max_abs() /
                          std::max(rphi.max_abs(), 1e-300);
        rep.values["c1_commutation"] = std::max(r1, r2);
        rep.values["c1_translation"] = r3;
        rep.clause[0] = std::max({r1, r2, r3}) <= opts.commutation_tol;
    }
    // (2) sup bound
    {
        const double ratio = rphi.max_abs() / phi_l1;
        rep.values["c2_sup_over_l1"] = ratio;
        rep.clause[1] = ratio <= 1.0;
    }
    // (3) L2 bound, C = 2^{-1/2} from Young's inequality with ||e^{-αx}1_{x>0}||_2 = (2α)^{-1/2}
    {
        const double c3 = l2_norm(rphi) * std::sqrt(alpha) / phi_l1;
        rep.values["c3_constant"] = c3;
        rep.clause[2] = c3 <= 1.0 / std::sqrt(2.0);
    }
    // (4) x-weighted bound, same kernel argument with ||x e^{-αx}1_{x>0}||_2 = α^{-3/2}/2
    {
        const double lhs = l2_norm(weighted_by_x(rphi));
        const double rhs = std::pow(alpha, -1.5) * phi_l1 + std::pow(alpha, -0.5) * xphi_l1;
        rep.values["c4_constant"] = lhs / rhs;
        rep.clause[3] = lhs <= rhs / std::sqrt(2.0);
    }
    // (5) closeness of the regularized and plain antiderivative pairings
    {
        const double lhs = std::abs(inner_product(phi, apply_reg_inverse(psi, alpha)) -
                                    inner_product(phi, line_antiderivative(psi)));
        const double rhs = alpha * (phi_l1 * xpsi_l1 + xphi_l1 * psi_l1);
        const double self = inner_product(phi, rphi);
        const double self_lhs = std::abs(self - 0.5 * sq(integral(phi)));
        const double self_rhs = 2.0 * alpha * phi_l1 * xphi_l1;
        rep.values["c5_lhs"] = lhs;
        rep.values["c5_rhs"] = rhs;
        rep.values["c5_self_pairing"] = self;
        rep.values["c5_self_lhs"] = self_lhs;
        rep.values["c5_self_rhs"] = self_rhs;
        rep.clause[4] = lhs <= rhs && self_lhs <= self_rhs;
    }
    // (6) leading order of the squared L2 norm. On the box the periodized kernel has
    // squared norm coth(αL/2)/(2α), which replaces 1/(2α).
    {
        const auto remainder = [&](double a, const GridFunction& r) {
            const double lead = sq(integral(phi)) / (2.0 * a * std::tanh(0.5 * a * g.length()));
            return inner_product(r, r) - lead;
        };
        const double r_full = remainder(alpha, rphi);
        const double r_half = remainder(0.5 * alpha, apply_reg_inverse(phi, 0.5 * alpha));
        rep.values["c6_remainder"] = r_full;
        rep.values["c6_remainder_half"] = r_half;
        rep.clause[5] = std::abs(r_half) <= 2.0 * std::abs(r_full) + opts.remainder_floor * (1.0 + sq(phi_l1));
    }
    return rep;
}

}  // namespace bkdv
