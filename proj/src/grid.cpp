#include "bkdv/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(double length, std::size_t n_points) : length_(length), n_(n_points) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw InputError("grid length must be positive and finite");
    }
    if (n_points < 8 || !is_power_of_two(n_points)) {
        std::ostringstream os;
        os << "grid size must be a power of two >= 8, got " << n_points;
        throw InputError(os.str());
    }
}

std::vector<double> Grid::points() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
    return xs;
}

double Grid::wavenumber(std::size_t j) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / length_;
}

double Grid::wrap(double x) const noexcept {
    double y = std::fmod(x + 0.5 * length_, length_);
    if (y < 0.0) y += length_;
    return y - 0.5 * length_;
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw InputError("grid function length does not match grid size");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw InputError("grid function contains non-finite values");
    }
}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values, Unchecked)
    : grid_(grid), values_(std::move(values)) {}

GridFunction make_unchecked(const Grid& grid, std::vector<double> values) {
    return GridFunction(grid, std::move(values), GridFunction::Unchecked{});
}

GridFunction GridFunction::zeros(const Grid& grid) { return constant(grid, 0.0); }

GridFunction GridFunction::constant(const Grid& grid, double value) {
    return GridFunction(grid, std::vector<double>(grid.size(), value));
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(grid.x(j));
    return GridFunction(grid, std::move(v));
}

double GridFunction::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridFunction GridFunction::operator-() const {
    std::vector<double> v(values_);
    for (double& x : v) x = -x;
    return make_unchecked(grid_, std::move(v));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.values_);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += b.values_[j];
    return make_unchecked(a.grid_, std::move(v));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.values_);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= b.values_[j];
    return make_unchecked(a.grid_, std::move(v));
}

GridFunction operator*(double s, const GridFunction& a) {
    std::vector<double> v(a.values_);
    for (double& x : v) x *= s;
    return make_unchecked(a.grid_, std::move(v));
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.values_);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= b.values_[j];
    return make_unchecked(a.grid_, std::move(v));
}

GridFunction GridFunction::map(const std::function<double(double)>& fn) const {
    std::vector<double> v(values_);
    for (double& x : v) x = fn(x);
    return GridFunction(grid_, std::move(v));
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid() == b.grid())) throw InputError("grid functions live on different grids");
}

// ---------------------------------------------------------------------------

struct Spectral::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    ~Plans() {
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

Spectral::Spectral(const Grid& grid) : grid_(grid) {
    static std::map<std::size_t, std::shared_ptr<const Spectral::Plans>> cache;
    std::lock_guard lock(planner_mutex());
    auto it = cache.find(grid.size());
    if (it != cache.end()) {
        plans_ = it->second;
        return;
    }
    const int n = static_cast<int>(grid.size());
    auto plans = std::make_shared<Plans>();
    // Planning scratch only; execution goes through the new-array interface.
    double* rbuf = fftw_alloc_real(grid.size());
    fftw_complex* cbuf = fftw_alloc_complex(grid.modes());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->r2c = fftw_plan_dft_r2c_1d(n, rbuf, cbuf, flags);
    plans->c2r = fftw_plan_dft_c2r_1d(n, cbuf, rbuf, flags | FFTW_DESTROY_INPUT);
    fftw_free(rbuf);
    fftw_free(cbuf);
    plans_ = plans;
    cache.emplace(grid.size(), plans_);
}

void Spectral::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    // r2c does not modify its input; the cast is required by the C interface.
    fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

void Spectral::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
    thread_local std::vector<std::complex<double>> scratch;
    scratch.assign(in.begin(), in.end());
    fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    const double inv_n = 1.0 / static_cast<double>(grid_.size());
    for (double& v : out) v *= inv_n;
}

std::vector<std::complex<double>> Spectral::forward(const GridFunction& f) const {
    std::vector<std::complex<double>> out(grid_.modes());
    forward(f.values(), out);
    return out;
}

GridFunction Spectral::inverse(std::span<const std::complex<double>> in) const {
    std::vector<double> out(grid_.size());
    inverse(in, out);
    return make_unchecked(grid_, std::move(out));
}

GridFunction Spectral::apply(const GridFunction& f,
                             const std::function<std::complex<double>(std::size_t)>& symbol) const {
    if (!(f.grid() == grid_)) throw InputError("spectral operator applied on a foreign grid");
    auto hat = forward(f);
    for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= symbol(j);
    return inverse(hat);
}

// ---------------------------------------------------------------------------

GridFunction derivative(const GridFunction& f, int order) {
    if (order < 1 || order > 3) throw InputError("derivative order must be 1, 2 or 3");
    for (double v : f.values()) {
        if (!std::isfinite(v)) throw InputError("derivative of a field with non-finite values");
    }
    const Grid& g = f.grid();
    Spectral fft(g);
    return fft.apply(f, [&](std::size_t j) -> std::complex<double> {
        const double k = (order % 2 == 1) ? g.odd_wavenumber(j) : g.wavenumber(j);
        switch (order) {
            case 1: return {0.0, k};
            case 2: return {-k * k, 0.0};
            default: return {0.0, -k * k * k};
        }
    });
}

GridFunction shift(const GridFunction& f, double a) {
    const Grid& g = f.grid();
    Spectral fft(g);
    return fft.apply(f, [&](std::size_t j) {
        // The Nyquist phase must stay real; a symmetric cosine factor keeps the result real.
        const double k = g.wavenumber(j);
        if (j == g.size() / 2) return std::complex<double>(std::cos(k * a), 0.0);
        return std::polar(1.0, -k * a);
    });
}

double inner_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    double s = 0.0;
    auto fv = f.values();
    auto gv = g.values();
    for (std::size_t j = 0; j < fv.size(); ++j) s += fv[j] * gv[j];
    return s * f.grid().spacing();
}

double integral(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * f.grid().spacing();
}

double l1_norm(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s += std::abs(v);
    return s * f.grid().spacing();
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner_product(f, f)); }

double sobolev_norm_h1(const GridFunction& f) {
    const auto df = derivative(f, 1);
    return std::sqrt(inner_product(f, f) + inner_product(df, df));
}

}  // namespace bkdv
