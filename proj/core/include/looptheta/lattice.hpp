#pragma once

#include "looptheta/metric.hpp"

#include <map>

namespace looptheta {

struct NotNested : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoStabilization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// L = L^d_Z + sum Z*extra, the summation domains of the theta limits.
// Extra generators are integer Laurent vectors, Z-independent modulo L^d_Z.
struct GradedLattice {
    int n = 1;
    int d = 0;
    std::vector<LaurentVec> extra;

    static GradedLattice base(int n, int d) { return {n, d, {}}; }
    GradedLattice with_extra(const LaurentVec& v) const;

    // lowest degree any generator data reaches below d (== d when extras are shallow)
    int support_floor() const;
    int support_ceiling() const;
    void validate() const; // integrality + independence mod L^d_Z
};

struct QuotientBasis {
    std::vector<LaurentVec> reps; // classes form a Z-basis of the free part of Lp/L
    Int torsion = 1;              // product of invariant factors > 1
};

// Z-basis of Lp/L computed by Smith reduction on a covering window.
QuotientBasis quotient_basis(const GradedLattice& L, const GradedLattice& Lp);

bool lattice_contains(const GradedLattice& L, const LaurentVec& v);
bool lattice_nested(const GradedLattice& L, const GradedLattice& Lp); // L subset of Lp

// free rank of L/L^f for f <= everything
int rank_above(const GradedLattice& L, int f);

// The closed real span L^level_R + span(extras); extras may be rational here
// (needed for intersection lattices in the central extension).
struct RealSpan {
    int n = 1;
    int level = 0;
    std::vector<LaurentVec> extras;

    static RealSpan of(const GradedLattice& L) { return {L.n, L.d, L.extra}; }
};

struct Projection {
    std::map<std::pair<int, int>, Real> coeffs; // (degree, coordinate) -> value of v_perp
    Real norm2;                                 // (v_perp, v_perp)_g at the stabilized window
    int window_floor = 0;
    int doublings = 0;
    bool stabilized = false;
};

// Component of v orthogonal to the closure of the span, by normal equations on
// windows of doubling depth until the projected squared norm moves < tol.
Projection project_perp(const LaurentVec& v, const RealSpan& span, const MetricOperator& m,
                        const Real& tol);

// Gram matrix of the projections of vs (Schur complement against the span
// basis), stabilized the same way; shares one window loop across all vs.
RealMat projected_gram(const std::vector<LaurentVec>& vs, const RealSpan& span,
                       const MetricOperator& m, const Real& tol, int* floor_out = nullptr);

// sqrt(det projected Gram of a quotient basis) / torsion index.
Real covolume(const GradedLattice& L, const GradedLattice& Lp, const MetricOperator& m,
              const Real& tol = Real("1e-30"));

// (rcov): covolume(L'', Lp) / covolume(L'', L) for the canonical common
// sublattice L'' = L^{min(dL,dLp)}_Z, or an explicit override.
Real relative_covolume(const MetricOperator& m, const GradedLattice& L, const GradedLattice& Lp,
                       const Real& tol = Real("1e-30"));
Real relative_covolume_via(const MetricOperator& m, const GradedLattice& L,
                           const GradedLattice& Lp, int dpp, const Real& tol = Real("1e-30"));

struct CovolumeTheoryGL {
    GradedLattice base;
    Real base_value = Real(1);
    MetricOperator form;
};

Real covolume_theory_value(const CovolumeTheoryGL& c, const GradedLattice& L,
                           const Real& tol = Real("1e-30"));

struct DimensionTheory {
    long base_value = 0; // at L^0_Z
};

// base_value + signed relative dimension of L against L^0_Z
long dimension_theory_value(const DimensionTheory& D, const GradedLattice& L);
long relative_dimension(const GradedLattice& L); // against L^0_Z

// Canonical window covering both lattices' generator supports.
Window covering_window(const GradedLattice& L, const GradedLattice& Lp, const Context& ctx);

// gamma * L as a graded lattice, for integral gamma with unit determinant.
GradedLattice image_lattice(const LaurentMat& gamma, const GradedLattice& L);

} // namespace looptheta
