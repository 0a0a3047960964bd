#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace bkdv {

/// Uniform periodic grid on [-L/2, L/2). N must be a power of two, N >= 8.
class Grid {
public:
    Grid(double length, std::size_t n_points);

    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return length_ / static_cast<double>(n_); }
    double x(std::size_t j) const noexcept { return -0.5 * length_ + static_cast<double>(j) * spacing(); }
    std::vector<double> points() const;

    /// Number of r2c coefficients, N/2 + 1.
    std::size_t modes() const noexcept { return n_ / 2 + 1; }
    /// Angular wavenumber of r2c coefficient j.
    double wavenumber(std::size_t j) const noexcept;
    /// Wavenumber used by odd-order operators: zero at the Nyquist mode.
    double odd_wavenumber(std::size_t j) const noexcept { return j == n_ / 2 ? 0.0 : wavenumber(j); }
    double max_wavenumber() const noexcept { return wavenumber(n_ / 2); }

    /// Wrap a coordinate into [-L/2, L/2).
    double wrap(double x) const noexcept;

    bool operator==(const Grid&) const = default;

private:
    double length_;
    std::size_t n_;
};

/// Real samples on a Grid. Immutable after construction; every entry is finite.
class GridFunction {
public:
    GridFunction(const Grid& grid, std::vector<double> values);

    static GridFunction zeros(const Grid& grid);
    static GridFunction constant(const Grid& grid, double value);
    static GridFunction sample(const Grid& grid, const std::function<double(double)>& fn);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    double max_abs() const noexcept;

    GridFunction operator-() const;
    friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
    friend GridFunction operator*(double s, const GridFunction& a);
    friend GridFunction operator*(const GridFunction& a, double s) { return s * a; }
    /// Pointwise product.
    friend GridFunction operator*(const GridFunction& a, const GridFunction& b);

    /// Pointwise map.
    GridFunction map(const std::function<double(double)>& fn) const;

private:
    struct Unchecked {};
    GridFunction(const Grid& grid, std::vector<double> values, Unchecked);

    Grid grid_;
    std::vector<double> values_;

    friend class Spectral;
    friend GridFunction make_unchecked(const Grid&, std::vector<double>);
};

/// Construct without the finiteness scan; for internal hot paths whose inputs were already validated.
GridFunction make_unchecked(const Grid& grid, std::vector<double> values);

void require_same_grid(const GridFunction& a, const GridFunction& b);

/// Real-to-complex FFT bound to one grid size. Plans are cached per N and shared across threads;
/// execution is reentrant.
class Spectral {
public:
    explicit Spectral(const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }

    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
    /// Inverse transform including the 1/N factor. `in` is left untouched.
    void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

    std::vector<std::complex<double>> forward(const GridFunction& f) const;
    GridFunction inverse(std::span<const std::complex<double>> in) const;

    /// Multiply the spectrum of f by symbol(j) for every r2c index j.
    GridFunction apply(const GridFunction& f,
                       const std::function<std::complex<double>(std::size_t)>& symbol) const;

private:
    struct Plans;
    Grid grid_;
    std::shared_ptr<const Plans> plans_;
};

/// Spectral derivative of order 1..3. Odd orders drop the Nyquist mode.
GridFunction derivative(const GridFunction& f, int order);

/// f(x - a) by a Fourier phase shift (exact for band-limited data).
GridFunction shift(const GridFunction& f, double a);

/// Rectangle-rule L2 pairing h * sum f_j g_j.
double inner_product(const GridFunction& f, const GridFunction& g);
double integral(const GridFunction& f);
double l1_norm(const GridFunction& f);
double l2_norm(const GridFunction& f);
double sobolev_norm_h1(const GridFunction& f);

}  // namespace bkdv
