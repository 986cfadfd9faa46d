#pragma once

#include "looptheta/numeric.hpp"

#include <optional>
#include <vector>

namespace looptheta {

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    T& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const T& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }
};

using RatMat = Mat<Rat>;
using IntMat = Mat<Int>;
using RealMat = Mat<Real>;
using CMat = Mat<Cplx>;

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
    Mat<T> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& v = x.at(i, k);
            if (v == T(0)) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

template <class T>
Mat<T> mat_transpose(const Mat<T>& x) {
    Mat<T> r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

template <class T>
std::vector<T> mat_apply(const Mat<T>& x, const std::vector<T>& v) {
    std::vector<T> r(x.rows, T(0));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] += x.at(i, j) * v[j];
    return r;
}

// ---- exact rational subspace algebra (vectors are coordinate arrays) ----

using RatVec = std::vector<Rat>;

// Reduced echelon basis of the span, pivots at the first nonzero coordinate,
// pivot positions strictly increasing, pivot entries 1, pivots cleared from
// the other basis vectors. Coordinate order is the caller's canonical order.
std::vector<RatVec> echelon_basis(std::vector<RatVec> vs);

// Eliminate the echelon pivots from v; returns the residual and (optionally)
// the coefficients used.
RatVec reduce_against(const RatVec& v, const std::vector<RatVec>& echelon,
                      std::vector<Rat>* coeffs = nullptr);

bool in_span(const RatVec& v, const std::vector<RatVec>& echelon);

// Coefficients of v as a combination of basis (not necessarily echelon);
// throws std::logic_error if v is outside the span.
std::vector<Rat> express_in_basis(const RatVec& v, const std::vector<RatVec>& basis);

std::vector<RatVec> intersect_spans(const std::vector<RatVec>& a, const std::vector<RatVec>& b);

// Representatives from `amb` completing `sub` to a basis of span(amb);
// their classes form a basis of span(amb)/span(sub).
std::vector<RatVec> quotient_reps(const std::vector<RatVec>& sub, const std::vector<RatVec>& amb);

Rat rat_det(RatMat m);
RatMat rat_inverse(const RatMat& m); // throws std::logic_error if singular

// Determinant of the matrix expressing vs in the given basis of their span.
Rat transition_det(const std::vector<RatVec>& vs, const std::vector<RatVec>& basis);

// ---- integer lattice algebra ----

using IntVec = std::vector<Int>;

// Z-basis of the column span (Hermite-style column reduction).
std::vector<IntVec> hnf_basis(std::vector<IntVec> gens);

// Solve sum_i x_i gens[i] = target over Z.
std::optional<IntVec> int_solve(const std::vector<IntVec>& gens, const IntVec& target);

// Z-basis of the intersection of two column spans.
std::vector<IntVec> int_intersect(const std::vector<IntVec>& a, const std::vector<IntVec>& b);

struct QuotientData {
    bool nested = false;
    std::vector<IntVec> free_reps; // classes form a Z-basis of the free part
    Int torsion = 1;               // product of invariant factors > 1
    int rank_sub = 0, rank_sup = 0;
};

// Structure of span(sup)/span(sub); nested=false if span(sub) is not contained.
QuotientData integer_quotient(const std::vector<IntVec>& sub, const std::vector<IntVec>& sup);

// ---- float-tier solvers ----

// Cholesky of a symmetric positive-definite matrix; returns false if a
// nonpositive pivot appears.
bool cholesky(const RealMat& g, RealMat& lower);

std::vector<Real> solve_cholesky(const RealMat& lower, std::vector<Real> b);

// Solve g x = b for symmetric positive-definite g.
std::vector<Real> solve_spd(const RealMat& g, const std::vector<Real>& b);

std::vector<Cplx> solve_gepp(CMat m, std::vector<Cplx> b); // throws on singular
CMat inverse_gepp(const CMat& m);
Real condition_estimate(const CMat& m); // max|entry(inv)| * max|entry(m)| * n

// Eigenvalues of a small complex matrix: Faddeev-LeVerrier characteristic
// polynomial + Durand-Kerner root finding.
std::vector<Cplx> eigenvalues(const CMat& m);

} // namespace looptheta
