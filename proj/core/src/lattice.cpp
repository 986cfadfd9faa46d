#include "looptheta/lattice.hpp"

#include <algorithm>

namespace looptheta {

GradedLattice GradedLattice::with_extra(const LaurentVec& v) const {
    GradedLattice out = *this;
    out.extra.push_back(v);
    out.validate();
    return out;
}

int GradedLattice::support_floor() const {
    int f = d;
    for (auto& v : extra)
        if (!v.is_zero()) f = std::min(f, v.deg_min());
    return f;
}

int GradedLattice::support_ceiling() const {
    int c = d;
    for (auto& v : extra)
        if (!v.is_zero()) c = std::max(c, v.deg_max());
    return c;
}

namespace {

IntVec int_coords_above(const LaurentVec& v, int floor, int hi, int n) {
    // class of v modulo L^floor_Z, in window coordinates (floor, hi]
    IntVec out(size_t((hi - floor) * n), 0);
    for (int a = 0; a < n; ++a)
        for (auto& [deg, c] : v.c[a].terms()) {
            if (deg <= floor) continue;
            if (deg > hi) throw std::logic_error("int_coords_above: window too small");
            if (denominator(c) != 1) throw std::logic_error("int_coords_above: non-integral vector");
            out[size_t((deg - floor - 1) * n + a)] = numerator(c);
        }
    return out;
}

LaurentVec vec_from_int_coords(const IntVec& coords, int floor, int n) {
    LaurentVec v(n);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        int deg = floor + 1 + int(i) / n;
        int a = int(i) % n;
        v.c[a].set_coeff(deg, Rat(coords[i]));
    }
    return v;
}

// generator classes of L modulo L^floor_Z on the window (floor, hi]
std::vector<IntVec> lattice_gens_above(const GradedLattice& L, int floor, int hi) {
    std::vector<IntVec> gens;
    for (int deg = floor + 1; deg <= L.d; ++deg)
        for (int a = 0; a < L.n; ++a)
            gens.push_back(int_coords_above(LaurentVec::basis(L.n, a, deg), floor, hi, L.n));
    for (auto& v : L.extra) gens.push_back(int_coords_above(v, floor, hi, L.n));
    return gens;
}

} // namespace

void GradedLattice::validate() const {
    if (n < 1) throw std::invalid_argument("GradedLattice: n must be positive");
    for (auto& v : extra) {
        if (v.n != n) throw DimensionMismatch("GradedLattice: extra with wrong coordinate count");
        if (!v.is_integral())
            throw std::invalid_argument("GradedLattice: extra generators must be integral");
    }
    int hi = support_ceiling();
    std::vector<IntVec> classes;
    for (auto& v : extra) classes.push_back(int_coords_above(v, d, std::max(hi, d), n));
    if (hnf_basis(classes).size() != extra.size())
        throw std::invalid_argument("GradedLattice: extras dependent modulo L^d_Z");
}

Window covering_window(const GradedLattice& L, const GradedLattice& Lp, const Context& ctx) {
    int lo = std::min(L.support_floor(), Lp.support_floor());
    int hi = std::max(L.support_ceiling(), Lp.support_ceiling());
    return Window(lo, hi, ctx);
}

QuotientBasis quotient_basis(const GradedLattice& L, const GradedLattice& Lp) {
    if (L.n != Lp.n) throw DimensionMismatch("quotient_basis: coordinate count mismatch");
    int floor = std::min(L.d, Lp.d);
    int hi = std::max({L.support_ceiling(), Lp.support_ceiling(), floor});
    QuotientData qd = integer_quotient(lattice_gens_above(L, floor, hi),
                                       lattice_gens_above(Lp, floor, hi));
    if (!qd.nested) throw NotNested("quotient_basis: L is not contained in Lp");
    QuotientBasis out;
    out.torsion = qd.torsion;
    for (auto& r : qd.free_reps) out.reps.push_back(vec_from_int_coords(r, floor, L.n));
    return out;
}

bool lattice_contains(const GradedLattice& L, const LaurentVec& v) {
    if (v.n != L.n) throw DimensionMismatch("lattice_contains: coordinate count mismatch");
    if (v.is_zero()) return true;
    if (!v.is_integral()) return false;
    int floor = std::min(L.support_floor(), v.deg_min()) - 1;
    floor = std::min(floor, L.d);
    int hi = std::max(L.support_ceiling(), v.deg_max());
    auto gens = lattice_gens_above(L, floor, hi);
    return bool(int_solve(gens, int_coords_above(v, floor, hi, L.n)));
}

bool lattice_nested(const GradedLattice& L, const GradedLattice& Lp) {
    if (L.d > Lp.d) {
        // monomials t^i e_a, Lp.d < i <= L.d must lie in Lp
        for (int deg = Lp.d + 1; deg <= L.d; ++deg)
            for (int a = 0; a < L.n; ++a)
                if (!lattice_contains(Lp, LaurentVec::basis(L.n, a, deg))) return false;
    }
    for (auto& v : L.extra)
        if (!lattice_contains(Lp, v)) return false;
    return true;
}

int rank_above(const GradedLattice& L, int f) {
    int hi = std::max(L.support_ceiling(), f);
    return int(hnf_basis(lattice_gens_above(L, f, hi)).size());
}

long relative_dimension(const GradedLattice& L) {
    int f = std::min({0, L.d, L.support_floor()}) - 1;
    GradedLattice zero = GradedLattice::base(L.n, 0);
    return long(rank_above(L, f)) - long(rank_above(zero, f));
}

long dimension_theory_value(const DimensionTheory& D, const GradedLattice& L) {
    return D.base_value + relative_dimension(L);
}

namespace {

std::vector<LaurentVec> span_basis_at_floor(const RealSpan& span, int floor) {
    std::vector<LaurentVec> basis;
    for (int deg = floor + 1; deg <= span.level; ++deg)
        for (int a = 0; a < span.n; ++a) basis.push_back(LaurentVec::basis(span.n, a, deg));
    for (auto& v : span.extras) basis.push_back(v);
    return basis;
}

int initial_floor(const RealSpan& span, const std::vector<LaurentVec>& vs,
                  const MetricOperator& m) {
    int f = span.level;
    for (auto& v : span.extras)
        if (!v.is_zero()) f = std::min(f, v.deg_min());
    for (auto& v : vs)
        if (!v.is_zero()) f = std::min(f, v.deg_min());
    return f - m.bandwidth() - 1;
}

// Schur complements A - R^T G^{-1} R over the window sequence; one loop
// shared by project_perp and projected_gram.
struct SchurState {
    RealMat gram_perp;
    std::vector<std::vector<Real>> solve_coeffs; // per vs: coefficients x = G^{-1} r
    std::vector<LaurentVec> basis;
    int floor = 0;
    int doublings = 0;
    bool stabilized = false;
};

SchurState stabilize_projection(const std::vector<LaurentVec>& vs, const RealSpan& span,
                                const MetricOperator& m, const Real& tol) {
    const int max_doublings = 6;
    int f0 = initial_floor(span, vs, m);
    int depth = std::max(1, span.level - f0);
    SchurState st;
    RealMat prev;
    bool have_prev = false;
    for (int k = 0; k <= max_doublings; ++k) {
        int floor = span.level - depth;
        std::vector<LaurentVec> basis = span_basis_at_floor(span, floor);
        std::vector<LaurentVec> all = basis;
        all.insert(all.end(), vs.begin(), vs.end());
        RatMat big = gram(all, m);
        int nb = int(basis.size()), nv = int(vs.size());
        RealMat G(nb, nb);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) G.at(i, j) = to_real(big.at(i, j));
        RealMat L;
        if (!cholesky(G, L))
            throw NoStabilization("projection: window Gram not positive definite");
        RealMat S(nv, nv);
        std::vector<std::vector<Real>> coeffs(static_cast<size_t>(nv));
        std::vector<std::vector<Real>> sol(static_cast<size_t>(nv));
        for (int j = 0; j < nv; ++j) {
            std::vector<Real> r(static_cast<size_t>(nb));
            for (int i = 0; i < nb; ++i) r[size_t(i)] = to_real(big.at(i, nb + j));
            sol[size_t(j)] = solve_cholesky(L, r);
            coeffs[size_t(j)] = sol[size_t(j)];
        }
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) {
                Real s = to_real(big.at(nb + i, nb + j));
                for (int b = 0; b < nb; ++b)
                    s -= to_real(big.at(b, nb + i)) * sol[size_t(j)][size_t(b)];
                S.at(i, j) = s;
            }
        if (have_prev) {
            Real worst = 0;
            for (int i = 0; i < nv * nv; ++i) {
                Real diff = abs(S.a[size_t(i)] - prev.a[size_t(i)]);
                if (diff > worst) worst = diff;
            }
            if (worst < tol) {
                st.gram_perp = S;
                st.solve_coeffs = coeffs;
                st.basis = std::move(basis);
                st.floor = floor;
                st.doublings = k;
                st.stabilized = true;
                return st;
            }
        }
        prev = S;
        have_prev = true;
        st.gram_perp = S;
        st.solve_coeffs = coeffs;
        st.basis = std::move(basis);
        st.floor = floor;
        st.doublings = k;
        depth *= 2;
    }
    throw NoStabilization("projection did not stabilize after 6 window doublings");
}

} // namespace

Projection project_perp(const LaurentVec& v, const RealSpan& span, const MetricOperator& m,
                        const Real& tol) {
    SchurState st = stabilize_projection({v}, span, m, tol);
    Projection out;
    out.norm2 = st.gram_perp.at(0, 0);
    out.window_floor = st.floor;
    out.doublings = st.doublings;
    out.stabilized = st.stabilized;
    // v_perp = v - sum x_b basis_b
    for (int a = 0; a < v.n; ++a)
        for (auto& [deg, c] : v.c[a].terms()) out.coeffs[{deg, a}] = to_real(c);
    for (size_t b = 0; b < st.basis.size(); ++b) {
        Real x = st.solve_coeffs[0][b];
        if (x == 0) continue;
        for (int a = 0; a < v.n; ++a)
            for (auto& [deg, c] : st.basis[b].c[a].terms()) {
                auto key = std::make_pair(deg, a);
                auto it = out.coeffs.find(key);
                if (it == out.coeffs.end()) it = out.coeffs.emplace(key, Real(0)).first;
                it->second -= x * to_real(c);
            }
    }
    return out;
}

RealMat projected_gram(const std::vector<LaurentVec>& vs, const RealSpan& span,
                       const MetricOperator& m, const Real& tol, int* floor_out) {
    if (vs.empty()) return RealMat(0, 0);
    SchurState st = stabilize_projection(vs, span, m, tol);
    if (floor_out) *floor_out = st.floor;
    return st.gram_perp;
}

Real covolume(const GradedLattice& L, const GradedLattice& Lp, const MetricOperator& m,
              const Real& tol) {
    QuotientBasis qb = quotient_basis(L, Lp);
    Real torsion = Real(Rat(qb.torsion));
    if (qb.reps.empty()) return 1 / torsion;
    RealMat S = projected_gram(qb.reps, RealSpan::of(L), m, tol);
    RealMat Lo;
    if (!cholesky(S, Lo)) throw NoStabilization("covolume: projected Gram not positive definite");
    Real covol = 1;
    for (int i = 0; i < Lo.rows; ++i) covol *= Lo.at(i, i);
    return covol / torsion;
}

Real relative_covolume(const MetricOperator& m, const GradedLattice& L, const GradedLattice& Lp,
                       const Real& tol) {
    return relative_covolume_via(m, L, Lp, std::min(L.d, Lp.d), tol);
}

Real relative_covolume_via(const MetricOperator& m, const GradedLattice& L,
                           const GradedLattice& Lp, int dpp, const Real& tol) {
    if (dpp > std::min(L.d, Lp.d))
        throw std::invalid_argument("relative_covolume_via: common sublattice not contained");
    GradedLattice common = GradedLattice::base(L.n, dpp);
    return covolume(common, Lp, m, tol) / covolume(common, L, m, tol);
}

Real covolume_theory_value(const CovolumeTheoryGL& c, const GradedLattice& L, const Real& tol) {
    return c.base_value * relative_covolume(c.form, c.base, L, tol);
}

GradedLattice image_lattice(const LaurentMat& gamma, const GradedLattice& L) {
    if (gamma.n != L.n) throw DimensionMismatch("image_lattice: size mismatch");
    if (!gamma.is_integral()) throw NotIntegralUnit("image_lattice: gamma not integral");
    LaurentPoly det = lp_det(gamma);
    if (!det.is_monomial() || abs(det.coeff(det.deg_min())) != 1)
        throw NotIntegralUnit("image_lattice: det(gamma) is not +-t^k");
    LaurentMat ginv = lp_inverse(gamma);
    int d1 = L.support_floor() - ginv.bandwidth();
    int hi = L.support_ceiling() + gamma.bandwidth();
    std::vector<IntVec> gens;
    for (int deg = d1 - gamma.bandwidth(); deg <= L.d; ++deg)
        for (int a = 0; a < L.n; ++a) {
            LaurentVec img = lp_apply(gamma, LaurentVec::basis(L.n, a, deg));
            gens.push_back(int_coords_above(img, d1, hi, L.n));
        }
    for (auto& v : L.extra) gens.push_back(int_coords_above(lp_apply(gamma, v), d1, hi, L.n));
    GradedLattice out;
    out.n = L.n;
    out.d = d1;
    for (auto& b : hnf_basis(gens)) out.extra.push_back(vec_from_int_coords(b, d1, L.n));
    out.validate();
    return out;
}

} // namespace looptheta
