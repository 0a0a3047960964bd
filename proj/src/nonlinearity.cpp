#include "bkdv/nonlinearity.hpp"

#include <cmath>
#include <sstream>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

std::vector<double> differentiate(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t n = 1; n < c.size(); ++n) d[n - 1] = static_cast<double>(n) * c[n];
    return d;
}

std::vector<double> antiderivative(const std::vector<double>& c) {
    std::vector<double> a(c.size() + 1, 0.0);
    for (std::size_t n = 0; n < c.size(); ++n) a[n + 1] = c[n] / static_cast<double>(n + 1);
    return a;
}

}  // namespace

Nonlinearity::Nonlinearity(std::vector<double> coefficients, std::optional<int> power, bool allow_zero)
    : coeffs_(std::move(coefficients)), power_(power) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    for (double a : coeffs_) {
        if (!std::isfinite(a)) throw InputError("nonlinearity coefficients must be finite");
    }
    if ((coeffs_.size() > 0 && coeffs_[0] != 0.0) || (coeffs_.size() > 1 && coeffs_[1] != 0.0)) {
        throw InputError("nonlinearity must satisfy f(0) = 0 and f'(0) = 0");
    }
    if (coeffs_.size() < 3 && !allow_zero) throw InputError("nonlinearity is identically zero");
    d1_ = differentiate(coeffs_);
    d2_ = differentiate(d1_);
    d3_ = differentiate(d2_);
    anti_ = antiderivative(coeffs_);
}

Nonlinearity Nonlinearity::zero() { return Nonlinearity({0.0}, std::nullopt, true); }

Nonlinearity Nonlinearity::power(int p) {
    if (p < 2) throw InputError("power nonlinearity requires p >= 2");
    std::vector<double> c(static_cast<std::size_t>(p) + 1, 0.0);
    c[static_cast<std::size_t>(p)] = 1.0;
    return Nonlinearity(std::move(c), p);
}

Nonlinearity Nonlinearity::polynomial(std::vector<double> coefficients) {
    // A single monomial u^p with unit coefficient is promoted to the power family.
    int nonzero = 0;
    int last = -1;
    for (std::size_t n = 0; n < coefficients.size(); ++n) {
        if (coefficients[n] != 0.0) {
            ++nonzero;
            last = static_cast<int>(n);
        }
    }
    if (nonzero == 1 && last >= 2 && coefficients[static_cast<std::size_t>(last)] == 1.0) {
        return power(last);
    }
    return Nonlinearity(std::move(coefficients), std::nullopt);
}

Nonlinearity Nonlinearity::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("nonlinearity must be 'power:<p>' or 'poly:<a0>,...'");
    const std::string kind = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (kind == "power") {
        std::size_t used = 0;
        int p = 0;
        try {
            p = std::stoi(body, &used);
        } catch (const std::exception&) {
            throw InputError("cannot parse power exponent '" + body + "'");
        }
        if (used != body.size()) throw InputError("cannot parse power exponent '" + body + "'");
        return power(p);
    }
    if (kind == "poly") {
        std::vector<double> c;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                c.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw InputError("cannot parse polynomial coefficient '" + item + "'");
            }
        }
        return polynomial(std::move(c));
    }
    throw InputError("unknown nonlinearity kind '" + kind + "'");
}

std::string Nonlinearity::describe() const {
    std::ostringstream os;
    if (power_) {
        os << "power:" << *power_;
        return os.str();
    }
    os << "poly:";
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (n) os << ',';
        os << coeffs_[n];
    }
    return os.str();
}

double Nonlinearity::eval(const std::vector<double>& c, double u) noexcept {
    double acc = 0.0;
    for (std::size_t n = c.size(); n-- > 0;) acc = acc * u + c[n];
    return acc;
}

}  // namespace bkdv
