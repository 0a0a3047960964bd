#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bkdv {

/// Base for every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an input was violated (non-finite samples, grid mismatch, bad parameter).
class InputError : public Error {
public:
    using Error::Error;
};

/// delta'(c) <= 0: the solitary wave is not orbitally stable at this speed.
class StabilityError : public Error {
public:
    using Error::Error;
};

/// The regularization parameter is too large for the symplectic matrix to stay invertible,
/// or the constrained Hessian minimum reaches the essential spectrum.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// An iterative method stopped without meeting its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history)) {}
    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

/// The state left the tubular neighbourhood of the soliton manifold.
class TubeExitError : public Error {
public:
    TubeExitError(const std::string& what, double time = 0.0) : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// The extracted speed left the configured compact interval I.
class IntervalExitError : public Error {
public:
    IntervalExitError(const std::string& what, double time = 0.0) : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// The time integration produced NaN or exceeded the amplitude ceiling.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, double time) : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace bkdv
