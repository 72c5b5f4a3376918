#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "tsfe/bernstein.hpp"
#include "tsfe/errors.hpp"

namespace tsfe {

/// Periodic lattice [-L, L)^d with n points per axis plus a uniform time grid
/// on [t_start, T]. t_start < 0 gives the two-sided grids used by G0/G1.
struct SpaceTimeGrid {
    int d = 1;
    int n = 64;        // per axis, power of two
    double L = 10.0;   // box half-width
    int n_time = 64;
    double T = 1.0;
    double t_start = 0.0;

    void validate() const;
    size_t points() const;               // n^d
    double dx() const { return 2.0 * L / n; }
    double dt() const { return (T - t_start) / n_time; }
    double time(int j) const { return t_start + j * dt(); }
    double cell_volume() const;
    /// frequency of axis index k in [0, n): xi = pi*k'/L with k' wrapped to
    /// [-n/2, n/2)
    double xi(int k) const;
    /// coordinate of axis index j: x = -L + j*dx
    double coord(int j) const { return -L + j * dx(); }

    bool operator==(const SpaceTimeGrid&) const = default;
};

enum class FieldDomain { space, spacetime };

/// Complex lattice data: one spatial slice (space) or n_time+1 slices
/// (spacetime), flattened row-major over axes.
struct Field {
    SpaceTimeGrid grid;
    FieldDomain domain = FieldDomain::space;
    std::vector<std::complex<double>> values;

    static Field zeros(const SpaceTimeGrid& g, FieldDomain dom);
    int n_slices() const {
        return domain == FieldDomain::space ? 1 : grid.n_time + 1;
    }
    std::complex<double>& at(int tj, size_t xi) {
        return values[size_t(tj) * grid.points() + xi];
    }
    const std::complex<double>& at(int tj, size_t xi) const {
        return values[size_t(tj) * grid.points() + xi];
    }
    void check_finite() const;
};

/// Unnormalized forward DFT (sign=-1) / normalized inverse (sign=+1) of every
/// time slice, via FFTW.
Field dft_space(const Field& f, int sign);

/// Mode-wise multiply in frequency space by m(xi, |xi|^2) and transform back.
Field apply_multiplier(
    const Field& f,
    const std::function<std::complex<double>(const std::array<double, 3>& xi,
                                             double xi2)>& m);

/// phi(Delta): multiplier -phi(|xi|^2), zero mode -> 0.
Field apply_phi_delta(const BernsteinFunction& phi, const Field& f);

/// (I - phi(Delta))^{s/2}: multiplier (1 + phi(|xi|^2))^{s/2}.
Field apply_bessel(const BernsteinFunction& phi, double s, const Field& f);

/// L1 Caputo derivative of order alpha in t; node 0 is 0 by convention.
Field caputo_l1(const Field& f, double alpha);

/// Riemann-Liouville fractional integral J^alpha by product integration,
/// exact on piecewise-linear data.
Field fractional_integral(const Field& f, double alpha);

/// Flat little-endian f64 binary (re, im interleaved) + JSON sidecar
/// at path + ".json".
void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

/// CSV export (x, re, im) of one time slice; d=1 only.
void export_csv(const std::string& path, const Field& f, int time_index);

}  // namespace tsfe
