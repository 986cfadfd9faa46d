#pragma once

#include "looptheta/central_ext.hpp"

#include <random>

namespace looptheta {

// S(x) = sum_m e^{-pi x m^2}, cut at |m| < m_cut with a certified remainder.
struct GaussianSum {
    Real value;
    Real tail;
    long m_cut = 0;
};
GaussianSum gaussian_sum_1d(const Real& x, const Real& eps);

// sum_m e^{-pi lambda (m+x0)^2} and its Poisson dual (real part)
Real shifted_gaussian_sum(const Real& lambda, const Real& x0, const Real& eps);
Real shifted_dual_sum(const Real& lambda, const Real& x0, const Real& eps);

// |S(a^{-2} q^{-2i}) - |a| q^i S(a^2 q^{2i})|
Real poisson_check(const Rat& a, const Context& ctx, int i);
Real poisson_check_shifted(const Real& lambda, const Real& x0);

// Raw sum_{v in L} e^{-pi (v,v)_g} restricted to an adaptive window, with a
// certified bound on everything omitted (deep degrees + sphere tail).
struct LatticeSum {
    Real value;
    Real tail;
    long points = 0;
    int floor_deg = 0;
    Real radius2;
};
LatticeSum lattice_gaussian_sum(const MetricOperator& m, const GradedLattice& L, const Real& eps,
                                long max_points = 5000000);

struct ThetaRow {
    int d = 0;
    Real theta_d;
    Real tail_d;
    Real ratio_comparison; // theta_{L^d + extra} / theta_d, the (com) diagnostic
    bool has_ratio = false;
};

struct ThetaResult {
    Real value;
    Real tail_bound;
    std::vector<ThetaRow> table;
    bool stabilized = false;
};

ThetaResult partial_theta(const TripleGL& triple, const GradedLattice& L, const Real& eps,
                          long max_points = 5000000);

// Lattice-limit driver over L^0 .. L^{d_max}; stabilized once consecutive
// partial values agree within eps including tails.
ThetaResult theta(const TripleGL& triple, const Real& eps, int d_max);

// raw (g, c0) entry point for diagonal experiments
ThetaResult theta_raw(const LaurentMat& g, const Context& ctx, const Real& c0, const Real& eps,
                      int d_max);

ThetaResult theta_of_element(const ExtendedElement& e, const Context& ctx, const Real& eps,
                             int d_max, const Real& scalar_prefactor = Real(1));

// (red): sum over L^d of e^{-pi(v,v)_au} <= same with metric a, with slack
// accounting from both certificates.
struct RedCheck {
    bool holds = false;
    Real margin;
    Real lhs, rhs, slack;
};
RedCheck reduction_inequality_check(const LaurentMat& a, const LaurentMat& u, int d,
                                    const Context& ctx, const Real& eps);

// finite-dimensional blockwise-unipotent inequality, direct summation over a
// box in hardware floats with an explicit tail + roundoff allowance
struct BlockwiseCheck {
    bool holds = false;
    double lhs = 0, rhs = 0, slack = 0;
};
BlockwiseCheck blockwise_unipotent_check(const std::vector<int>& dims,
                                         const std::vector<std::vector<double>>& U,
                                         const std::vector<double>& scales, int box = 6);

// theta_d against the convergent product bound for diagonal metrics
struct UpperBoundCheck {
    Real theta_d;
    Real bound;
    Real slack;
    bool holds = false;
};
UpperBoundCheck upper_bound_check(const std::vector<Rat>& a_diag, const Real& c0, int d,
                                  const Context& ctx, const Real& eps);

struct AutomorphyReport {
    struct Entry {
        Real deviation; // relative
        Real tails;     // combined certified tails
        bool stabilized = false;
    };
    Real base_value;
    Real base_tail;
    std::vector<Entry> left;  // one per gamma
    std::vector<Entry> right; // one per k
};
AutomorphyReport automorphy_suite(const ExtendedElement& e, const std::vector<LaurentMat>& gammas,
                                  const std::vector<LaurentMat>& ks, const Context& ctx,
                                  const Real& eps, int d_max);

// Parameter box for the Borel part: central coordinate, diagonal entries,
// unipotent coefficients bounded with delta(u) <= delta_u_max.
struct SiegelBox {
    Rat c_lo = Rat(1), c_hi = Rat(1);
    std::vector<std::pair<Rat, Rat>> a_ranges;
    Rat u_coeff_bound = Rat(0);
    int delta_u_max = 0;
    int sample_count = 0;
};

struct SiegelScanReport {
    struct Sample {
        Real c;
        int stabilization_d = 0;
        bool stabilized = false;
        Real value;
    };
    std::vector<Sample> samples;
    int max_stabilization_d = 0;
    bool all_stabilized = false;
};
SiegelScanReport siegel_scan(const SiegelBox& box, const Context& ctx, const Real& eps, int d_max,
                             unsigned seed);

} // namespace looptheta
