#pragma once

#include "looptheta/laurent.hpp"
#include "looptheta/linalg.hpp"

namespace looptheta {

// Inclusive degree range; the finite-dimensional slice V_{lo..hi}.
struct Window {
    int lo = 0, hi = 0;
    Context ctx;

    Window() = default;
    Window(int lo_, int hi_, Context ctx_) : lo(lo_), hi(hi_), ctx(std::move(ctx_)) {
        if (lo > hi) throw std::invalid_argument("Window: empty degree range");
    }
    int degrees() const { return hi - lo + 1; }
    int size() const { return degrees() * ctx.n; }
    int index(int deg, int coord) const { return (deg - lo) * ctx.n + coord; }
    std::pair<int, int> deg_coord(int idx) const { return {lo + idx / ctx.n, idx % ctx.n}; }
    bool contains_deg(int deg) const { return deg >= lo && deg <= hi; }
};

// Coordinates of a Laurent vector on a window (degree-ascending, coordinate-minor
// order); throws if the support sticks out.
RatVec to_coords(const LaurentVec& v, const Window& w);
LaurentVec from_coords(const RatVec& coords, const Window& w);

// Truncation to the window degrees (classes modulo L^{lo-1} on the upper side
// capped at hi; caller guarantees nothing lives above hi).
RatVec to_coords_truncated(const LaurentVec& v, const Window& w);

// The twisted inner product (,)_g = (g^{-1}., g^{-1}.)_1 with cached exact inverse.
struct MetricOperator {
    Context ctx;
    LaurentMat g, g_inv;

    static MetricOperator identity_metric(const Context& ctx);
    static MetricOperator from_matrix(const Context& ctx, const LaurentMat& g); // throws NotAUnit
    int bandwidth() const { return std::max(g.bandwidth(), g_inv.bandwidth()); }
    bool is_diagonal_monomial() const;
};

// (t^i e_a, t^j e_b)_1 = delta delta q^{-2i}, extended bilinearly; exact.
Rat inner_one(const LaurentVec& v, const LaurentVec& w, const Rat& q);
Rat inner(const LaurentVec& v, const LaurentVec& w, const MetricOperator& m);

// Trapezoidal contour quadrature on |t| = q^{-1}; the independent oracle.
Real inner_quadrature(const LaurentVec& v, const LaurentVec& w, const MetricOperator& m,
                      int points);

RatMat gram(const std::vector<LaurentVec>& vs, const MetricOperator& m);

// Constant term of v(t) vstar(t)^T, summed over coordinates.
Rat pairing_const_term(const LaurentVec& v, const LaurentVec& vstar);

// Gram matrix of the dual basis on the window = inverse of the monomial Gram.
RatMat dual_gram(const Window& w, const MetricOperator& m);

std::vector<LaurentVec> window_monomials(const Window& w);

Rat q_pow(const Rat& q, long k);

} // namespace looptheta
