#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bkdv {

/// Polynomial nonlinearity f(u) = sum_n a_n u^n with f(0) = f'(0) = 0.
/// The pure power u^p is the distinguished case with closed-form solitons.
class Nonlinearity {
public:
    static Nonlinearity power(int p);
    /// f = 0, for linear dispersion checks. Has no solitary waves.
    static Nonlinearity zero();
    /// Coefficients indexed by degree. Throws InputError unless a_0 = a_1 = 0.
    static Nonlinearity polynomial(std::vector<double> coefficients);
    /// Parse "power:<p>" or "poly:<a0>,<a1>,...".
    static Nonlinearity parse(const std::string& text);

    /// Exponent p when f = u^p, empty otherwise.
    std::optional<int> power_exponent() const noexcept { return power_; }
    bool is_power() const noexcept { return power_.has_value(); }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::string describe() const;

    double f(double u) const noexcept { return eval(coeffs_, u); }
    double df(double u) const noexcept { return eval(d1_, u); }
    double d2f(double u) const noexcept { return eval(d2_, u); }
    double d3f(double u) const noexcept { return eval(d3_, u); }
    /// Antiderivative with F(0) = 0.
    double F(double u) const noexcept { return eval(anti_, u); }

private:
    Nonlinearity(std::vector<double> coefficients, std::optional<int> power, bool allow_zero = false);
    static double eval(const std::vector<double>& c, double u) noexcept;

    std::vector<double> coeffs_, d1_, d2_, d3_, anti_;
    std::optional<int> power_;
};

}  // namespace bkdv
