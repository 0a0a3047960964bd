#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bkdv/bottom.hpp"
#include "bkdv/grid.hpp"
#include "bkdv/nonlinearity.hpp"

namespace bkdv {

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 10.0;
    int output_stride = 100;            ///< steps between stored snapshots
    std::string integrator = "etdrk4";
    double dealias_fraction = 2.0 / 3.0;
    int contour_points = 64;
};

/// Stored (t, u) samples of a run.
struct Trajectory {
    std::vector<double> times;
    std::vector<GridFunction> states;
};

/// Pseudospectral solver for u_t = -∂_x(u_xx + f(u) - b(t,x) u) on a periodic grid.
/// The dispersive term is integrated exactly; the flux uses fourth-order exponential
/// Runge-Kutta with contour-evaluated coefficients.
class PdeSolver {
public:
    PdeSolver(Grid grid, Nonlinearity nl, BottomProfile bottom, SolverConfig cfg = {});

    const SolverConfig& config() const noexcept { return cfg_; }

    /// One step of size dt (negative dt integrates backwards).
    GridFunction step(const GridFunction& u, double t, double dt) const;

    /// Snapshots at t = 0, stride·dt, 2·stride·dt, ... up to t_end.
    /// Throws BlowUpError on NaN or amplitude growth beyond 1e3 times the initial maximum.
    Trajectory evolve(const GridFunction& u0) const;

    /// dt · k_dealias · (max|f'(u)| + max|b|); the run is refused when this exceeds 2.
    double stability_number(const GridFunction& u) const;

private:
    struct Coefficients {
        std::vector<std::complex<double>> e, e2, q, f1, f2, f3;
    };
    const Coefficients& coefficients(double dt) const;
    void flux(const std::vector<std::complex<double>>& vhat, double t, std::vector<std::complex<double>>& out) const;

    Grid grid_;
    Nonlinearity nl_;
    BottomProfile bottom_;
    SolverConfig cfg_;
    Spectral fft_;
    std::vector<double> kodd_;
    std::vector<double> mask_;
    std::vector<double> static_b_;
    mutable std::map<double, std::shared_ptr<const Coefficients>> cache_;
};

/// Binary rows: t followed by N samples, all little-endian IEEE-754 doubles. A JSON sidecar
/// "<path>.json" records the grid, solver settings and model.
void write_snapshots(const std::string& path, const Trajectory& traj, const SolverConfig& cfg,
                     const Nonlinearity& nl, const BottomProfile& b);
Trajectory read_snapshots(const std::string& path);

}  // namespace bkdv
