#pragma once

#include "looptheta/lattice.hpp"

namespace looptheta {

// Element of the determinant torsor det(L^0, gL^0)^x, stored as the exact
// coordinate of omega_g against the canonical (degree-lex echelon) wedge.
struct DetTorsorElement {
    LaurentMat g;
    Rat scalar = Rat(1); // nonzero

    void validate() const {
        if (scalar == 0) throw std::invalid_argument("DetTorsorElement: zero scalar");
    }
};

struct ExtendedElement {
    LaurentMat g;
    Rat scalar = Rat(1);

    DetTorsorElement omega() const { return {g, scalar}; }
};

// Representative bases for gL^0/(L^0 cap gL^0) (plus) and L^0/(L^0 cap gL^0)
// (minus), together with a basis of the intersection above the frame floor.
struct CanonicalBasis {
    std::vector<LaurentVec> plus;
    std::vector<LaurentVec> minus;
    std::vector<LaurentVec> inter; // basis of (L^0 cap gL^0)/L^{floor}
    int floor = 0;                 // L^{floor}_R lies inside both lattices

    int dim_plus() const { return int(plus.size()); }
    int dim_minus() const { return int(minus.size()); }
};

CanonicalBasis canonical_basis(const LaurentMat& g);

// (g, omega_g)(h, omega_h) = (gh, omega_g ^ g omega_h); exact scalar.
ExtendedElement ext_mul(const ExtendedElement& a, const ExtendedElement& b);
ExtendedElement ext_inverse(const ExtendedElement& a);

// Norm on det(L^0, gL^0) induced by the metric via completed orthogonal
// projections: |scalar| * cov(plus reps) / cov(minus reps).
Real omega_norm(const ExtendedElement& e, const MetricOperator& m,
                const Real& tol = Real("1e-30"), const Real& scalar_prefactor = Real(1));

// Integral lift: omega = sign * (integral canonical wedge) under the natural
// isomorphism with the real determinant line.
ExtendedElement lift_integral(const LaurentMat& gamma, int sign);

// Compact lift: the true omega is unit.scalar * wedge / norm_one, i.e. the
// irrational normalizer ||omega_k||_1 is returned separately so the group
// law can stay exact.
struct KLift {
    ExtendedElement unit; // scalar 1
    Real norm_one;        // ||canonical wedge||_1
};
KLift lift_K(const LaurentMat& k, const Context& ctx, const Real& tol = Real("1e-30"));

struct TripleGL {
    MetricOperator metric;
    CovolumeTheoryGL ctheory;
};

// The metric (,)_g and the covolume theory with c(L^0_Z) = ||omega_g||_g^{-1}.
// scalar_prefactor multiplies the stored rational scalar (used for compact
// normalizations).
TripleGL triple_of(const ExtendedElement& e, const Context& ctx,
                   const Real& tol = Real("1e-30"), const Real& scalar_prefactor = Real(1));

} // namespace looptheta
