#include "looptheta/central_ext.hpp"

#include <algorithm>

namespace looptheta {

namespace {

// Finite coordinate frame for classes modulo L^{floor}_R, degrees (floor, ceil].
struct Frame {
    int floor, ceil, n;
    int size() const { return (ceil - floor) * n; }
    int idx(int deg, int a) const { return (deg - floor - 1) * n + a; }
};

RatVec frame_coords(const LaurentVec& v, const Frame& fr) {
    RatVec out(size_t(fr.size()), Rat(0));
    for (int a = 0; a < v.n; ++a)
        for (auto& [deg, c] : v.c[a].terms()) {
            if (deg <= fr.floor) continue; // class modulo L^{floor}
            if (deg > fr.ceil) throw std::logic_error("frame_coords: degree above frame");
            out[size_t(fr.idx(deg, a))] = c;
        }
    return out;
}

LaurentVec frame_vec(const RatVec& coords, const Frame& fr) {
    LaurentVec v(fr.n);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        int deg = fr.floor + 1 + int(i) / fr.n;
        int a = int(i) % fr.n;
        v.c[a].set_coeff(deg, coords[i]);
    }
    return v;
}

// Classes of the generators of gL^0 modulo L^{floor}: g t^i e_a for the
// degrees that can still reach above the floor.
std::vector<RatVec> image_span(const LaurentMat& g, const Frame& fr) {
    std::vector<RatVec> gens;
    for (int i = fr.floor - g.bandwidth(); i <= 0; ++i)
        for (int a = 0; a < g.n; ++a)
            gens.push_back(frame_coords(lp_apply(g, LaurentVec::basis(g.n, a, i)), fr));
    return echelon_basis(gens);
}

std::vector<RatVec> monomial_span(const Frame& fr) {
    std::vector<RatVec> gens;
    for (int i = fr.floor + 1; i <= 0; ++i)
        for (int a = 0; a < fr.n; ++a)
            gens.push_back(frame_coords(LaurentVec::basis(fr.n, a, i), fr));
    return echelon_basis(gens);
}

std::vector<RatVec> to_coord_list(const std::vector<LaurentVec>& vs, const Frame& fr) {
    std::vector<RatVec> out;
    out.reserve(vs.size());
    for (auto& v : vs) out.push_back(frame_coords(v, fr));
    return out;
}

// determinant of [vs] against [basis] inside the quotient modulo span(den)
Rat det_mod(std::vector<RatVec> vs, std::vector<RatVec> basis, const std::vector<RatVec>& den) {
    for (auto& v : vs) v = reduce_against(v, den);
    for (auto& b : basis) b = reduce_against(b, den);
    if (vs.size() != basis.size())
        throw std::logic_error("det_mod: rank mismatch in torsor bookkeeping");
    if (vs.empty()) return Rat(1);
    return transition_det(vs, basis);
}

std::vector<RatVec> concat(std::vector<RatVec> a, const std::vector<RatVec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

struct PairData {
    std::vector<RatVec> inter; // echelon basis of span(x) cap span(y)
    std::vector<RatVec> plus;  // reps of y/(x cap y)
    std::vector<RatVec> minus; // reps of x/(x cap y)
};

PairData pair_data(const std::vector<RatVec>& x, const std::vector<RatVec>& y) {
    PairData p;
    p.inter = intersect_spans(x, y);
    p.plus = quotient_reps(p.inter, y);
    p.minus = quotient_reps(p.inter, x);
    return p;
}

Frame frame_for(const LaurentMat& g, const LaurentMat& ginv) {
    return Frame{-(ginv.bandwidth() + 1), g.bandwidth() + 1, g.n};
}

void check_unit(const LaurentMat& g) {
    LaurentPoly det = lp_det(g);
    if (!det.is_monomial()) throw NotAUnit("central extension: matrix not in the loop group");
}

} // namespace

CanonicalBasis canonical_basis(const LaurentMat& g) {
    LaurentMat ginv = lp_inverse(g); // throws NotAUnit
    Frame fr = frame_for(g, ginv);
    std::vector<RatVec> sa = monomial_span(fr);
    std::vector<RatVec> sb = image_span(g, fr);
    PairData p = pair_data(sa, sb);
    CanonicalBasis cb;
    cb.floor = fr.floor;
    for (auto& v : p.plus) cb.plus.push_back(frame_vec(v, fr));
    for (auto& v : p.minus) cb.minus.push_back(frame_vec(v, fr));
    for (auto& v : p.inter) cb.inter.push_back(frame_vec(v, fr));
    return cb;
}

ExtendedElement ext_mul(const ExtendedElement& a, const ExtendedElement& b) {
    if (a.g.n != b.g.n) throw DimensionMismatch("ext_mul: size mismatch");
    const LaurentMat& g = a.g;
    const LaurentMat& h = b.g;
    LaurentMat gh = lp_mul(g, h);
    LaurentMat ginv = lp_inverse(g), hinv = lp_inverse(h);
    check_unit(gh);

    Frame fr{-(ginv.bandwidth() + hinv.bandwidth() + 2), g.bandwidth() + h.bandwidth() + 2, g.n};
    std::vector<RatVec> sa = monomial_span(fr);
    std::vector<RatVec> sb = image_span(g, fr);
    std::vector<RatVec> sc = image_span(gh, fr);
    std::vector<RatVec> d = intersect_spans(intersect_spans(sa, sb), sc);

    PairData ab = pair_data(sa, sb);
    PairData ac = pair_data(sa, sc);
    // reps for the (B, C) pair are the g-images of the canonical reps of h
    CanonicalBasis cbh = canonical_basis(h);
    std::vector<RatVec> bc_inter = intersect_spans(sb, sc);
    std::vector<LaurentVec> g_plus_h, g_minus_h;
    for (auto& v : cbh.plus) g_plus_h.push_back(lp_apply(g, v));
    for (auto& v : cbh.minus) g_minus_h.push_back(lp_apply(g, v));

    std::vector<RatVec> bA = quotient_reps(d, sa);
    std::vector<RatVec> bB = quotient_reps(d, sb);
    std::vector<RatVec> bC = quotient_reps(d, sc);
    std::vector<RatVec> dAB = quotient_reps(d, ab.inter);
    std::vector<RatVec> dBC = quotient_reps(d, bc_inter);
    std::vector<RatVec> dAC = quotient_reps(d, ac.inter);

    Rat u_g = det_mod(concat(dAB, ab.plus), bB, d) / det_mod(concat(dAB, ab.minus), bA, d);
    Rat v_h = det_mod(concat(dBC, to_coord_list(g_plus_h, fr)), bC, d) /
              det_mod(concat(dBC, to_coord_list(g_minus_h, fr)), bB, d);
    Rat w_gh = det_mod(concat(dAC, ac.plus), bC, d) / det_mod(concat(dAC, ac.minus), bA, d);

    return {gh, a.scalar * b.scalar * u_g * v_h / w_gh};
}

ExtendedElement ext_inverse(const ExtendedElement& a) {
    LaurentMat gi = lp_inverse(a.g);
    ExtendedElement cocycle = ext_mul({a.g, Rat(1)}, {gi, Rat(1)});
    // cocycle.g is the identity, whose canonical wedge has coordinate 1
    return {gi, Rat(1) / (a.scalar * cocycle.scalar)};
}

Real omega_norm(const ExtendedElement& e, const MetricOperator& m, const Real& tol,
                const Real& scalar_prefactor) {
    if (e.scalar == 0) throw std::invalid_argument("omega_norm: zero torsor scalar");
    CanonicalBasis cb = canonical_basis(e.g);
    RealSpan span{e.g.n, cb.floor, cb.inter};
    auto cov = [&](const std::vector<LaurentVec>& reps) -> Real {
        if (reps.empty()) return Real(1);
        RealMat s = projected_gram(reps, span, m, tol);
        RealMat lo;
        if (!cholesky(s, lo)) throw NoStabilization("omega_norm: projected Gram not PD");
        Real c = 1;
        for (int i = 0; i < lo.rows; ++i) c *= lo.at(i, i);
        return c;
    };
    return abs(to_real(e.scalar) * scalar_prefactor) * cov(cb.plus) / cov(cb.minus);
}

ExtendedElement lift_integral(const LaurentMat& gamma, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("lift_integral: sign must be +-1");
    if (!gamma.is_integral()) throw NotIntegralUnit("lift_integral: matrix not integral");
    LaurentPoly det = lp_det(gamma);
    if (!det.is_monomial() || abs(det.coeff(det.deg_min())) != 1)
        throw NotIntegralUnit("lift_integral: det not of the form +-t^k");
    LaurentMat ginv = lp_inverse(gamma);
    Frame fr = frame_for(gamma, ginv);

    // real canonical data
    std::vector<RatVec> sa = monomial_span(fr);
    std::vector<RatVec> sb = image_span(gamma, fr);
    PairData p = pair_data(sa, sb);

    // integral generators on the same frame
    auto to_int = [](const RatVec& v) {
        IntVec out(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            if (denominator(v[i]) != 1) throw std::logic_error("lift_integral: non-integral class");
            out[i] = numerator(v[i]);
        }
        return out;
    };
    std::vector<IntVec> za, zb;
    for (int i = fr.floor + 1; i <= 0; ++i)
        for (int a = 0; a < gamma.n; ++a)
            za.push_back(to_int(frame_coords(LaurentVec::basis(gamma.n, a, i), fr)));
    for (int i = fr.floor - gamma.bandwidth(); i <= 0; ++i)
        for (int a = 0; a < gamma.n; ++a)
            zb.push_back(
                to_int(frame_coords(lp_apply(gamma, LaurentVec::basis(gamma.n, a, i)), fr)));
    std::vector<IntVec> zinter = int_intersect(za, zb);
    QuotientData qplus = integer_quotient(zinter, zb);
    QuotientData qminus = integer_quotient(zinter, za);
    if (!qplus.nested || !qminus.nested || qplus.torsion != 1 || qminus.torsion != 1)
        throw std::logic_error("lift_integral: unexpected integral quotient structure");

    auto to_rat_list = [](const std::vector<IntVec>& vs) {
        std::vector<RatVec> out;
        for (auto& v : vs) {
            RatVec r(v.size());
            for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
            out.push_back(std::move(r));
        }
        return out;
    };
    Rat dplus = det_mod(to_rat_list(qplus.free_reps), p.plus, p.inter);
    Rat dminus = det_mod(to_rat_list(qminus.free_reps), p.minus, p.inter);
    return {gamma, Rat(sign) * dplus / dminus};
}

KLift lift_K(const LaurentMat& k, const Context& ctx, const Real& tol) {
    if (!is_in_K(k, ctx)) throw std::invalid_argument("lift_K: element is not in K");
    ExtendedElement unit{k, Rat(1)};
    Real n1 = omega_norm(unit, MetricOperator::identity_metric(ctx), tol);
    return {unit, n1};
}

TripleGL triple_of(const ExtendedElement& e, const Context& ctx, const Real& tol,
                   const Real& scalar_prefactor) {
    MetricOperator m = MetricOperator::from_matrix(ctx, e.g);
    Real norm = omega_norm(e, m, tol, scalar_prefactor);
    CovolumeTheoryGL c{GradedLattice::base(ctx.n, 0), 1 / norm, m};
    return {m, c};
}

} // namespace looptheta
