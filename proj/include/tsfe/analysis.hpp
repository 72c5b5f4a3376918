#pragma once

#include <vector>

#include "tsfe/bernstein.hpp"
#include "tsfe/grid.hpp"
#include "tsfe/specfun.hpp"

namespace tsfe {

/// Positive samples over a spatial lattice (n^d, row-major like Field) or a
/// time grid (n_time + 1 nodes).
struct Weight {
    std::vector<double> samples;

    void validate() const;
};

Weight weight_ones(size_t n);
/// |x|^a over the spatial lattice, clamped at one cell width near the origin.
Weight power_weight_space(const SpaceTimeGrid& g, double a);
/// |t|^a over the time nodes, clamped at one time step near 0.
Weight power_weight_time(const SpaceTimeGrid& g, double a);

/// Muckenhoupt characteristic [mu]_p: brute-force sup over lattice-aligned
/// balls (radius >= 2 cells, fully inside the domain) of
/// (avg mu)(avg mu^{-1/(p-1)})^{p-1}. d in {1,2}.
double ap_characteristic(const Weight& mu, double p, int d);

struct MixedNormParams {
    double p;
    double q;
    double T;
    Weight mu1;  // spatial, g.points() samples
    Weight mu2;  // temporal, n_time+1 samples
};

/// (int_0^T (int |f|^p mu1 dx)^{q/p} mu2 dt)^{1/q}: midpoint in x,
/// trapezoid in t over the nodes with time in [0, T].
double mixed_norm(const Field& f, const MixedNormParams& params);

enum class MaximalMode { space, time, spacetime_cylinder };

/// Hardy-Littlewood maximal function of |f|, pointwise sup of ball averages.
/// space: per time slice over periodic intervals; time: per spatial point
/// over clipped intervals; spacetime_cylinder: over parabolic cylinders
/// Q_rho = (t0 - lambda(rho), t0] x B_rho(x0), rho on a dyadic ladder from
/// 2 cells to the domain width. d = 1 only. Output is a real field.
Field hl_maximal(const Field& f, MaximalMode mode, const BernsteinFunction& phi,
                 double alpha);

/// Fefferman-Stein sharp function: sup over the enumerated parabolic cylinder
/// family containing the point of the mean oscillation of f. d = 1 only.
Field sharp_function(const Field& f, const BernsteinFunction& phi, double alpha);

/// Littlewood-Paley norm ||Sf||_{L_p(mu)} +
/// ||(sum_j phi(2^{2j})^s |Delta_j f|^2)^{1/2}||_{L_p(mu)} with a fixed
/// smooth dyadic bump partition; comparable to ||(I - phi(Delta))^{s/2} f||.
double littlewood_paley_norm(const Field& f, const BernsteinFunction& phi,
                             double s, double p, const Weight& mu);

struct LemmaReport {
    double max_ratio = 0.0;
    double refinement_growth = 0.0;
    int used = 0;
    int skipped = 0;
    unsigned seed = 0;
};

struct OscillationReport {
    LemmaReport g0;
    LemmaReport g1;
};

enum class SupportCase { local, time_strip, past_ball, past_complement };

/// Lemmas 3.5-3.8: cylinder averages of |G_k h|^p (or the two-point
/// oscillation for past_complement) against the maximal functions of |h|^p,
/// over random smooth h with the case's support geometry. Includes the
/// grid-doubling growth factor. d = 1.
OscillationReport verify_oscillation_lemmas(const BernsteinFunction& phi,
                                            double alpha, double p0,
                                            SupportCase support, int trials,
                                            unsigned seed, int n = 64,
                                            int n_time = 64);

/// Lemma 3.9: (G_k h)^sharp(t,x) vs (M_{t,x}|h|^p)^{1/p} +
/// (M_t M_x |h|^p)^{1/p} pointwise, random smooth compactly supported h.
OscillationReport verify_sharp_bound(const BernsteinFunction& phi, double alpha,
                                     double p0, int trials, unsigned seed,
                                     int n = 64, int n_time = 64);

struct Theorem1Report {
    double c0_hat = 0.0;   // max ||phi(Delta)w|| / ||h||
    double c1_hat = 0.0;   // max (||d_t^alpha w|| + ||w|| + ||phi(Delta)w||)/||h||
    double growth_c0 = 0.0;
    double growth_c1 = 0.0;
    double ap_space = 0.0;  // sampled A_p characteristic of mu1
    double ap_time = 0.0;   // sampled A_q characteristic of mu2
    int used = 0;
    int skipped = 0;
    unsigned seed = 0;
};

/// Theorem 4.1 empirical constants over random band-limited h, with power
/// weights |x|^{a_space}, |t|^{a_time} and mixed-norm exponents (p, q).
Theorem1Report verify_theorem1(const BernsteinFunction& phi, double alpha,
                               double p, double q, double a_space,
                               double a_time, int trials, unsigned seed,
                               int n = 64, int n_time = 64, double L = 8.0,
                               double T = 1.0);

/// Random band-limited h with smooth time envelope; the generator behind the
/// verification sweeps, exposed for the harness (deterministic in seed,
/// draws independent of grid resolution).
Field random_bandlimited_field(const SpaceTimeGrid& g, int k_max, unsigned seed);

}  // namespace tsfe
