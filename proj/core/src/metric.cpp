#include "looptheta/metric.hpp"

namespace looptheta {

Rat q_pow(const Rat& q, long k) {
    Rat r = 1;
    if (k >= 0)
        for (long i = 0; i < k; ++i) r *= q;
    else
        for (long i = 0; i < -k; ++i) r /= q;
    return r;
}

RatVec to_coords(const LaurentVec& v, const Window& w) {
    if (v.n != w.ctx.n) throw DimensionMismatch("to_coords: coordinate count mismatch");
    RatVec out(size_t(w.size()), Rat(0));
    for (int a = 0; a < v.n; ++a)
        for (auto& [d, c] : v.c[a].terms()) {
            if (!w.contains_deg(d)) throw std::invalid_argument("to_coords: support outside window");
            out[size_t(w.index(d, a))] = c;
        }
    return out;
}

RatVec to_coords_truncated(const LaurentVec& v, const Window& w) {
    if (v.n != w.ctx.n) throw DimensionMismatch("to_coords: coordinate count mismatch");
    RatVec out(size_t(w.size()), Rat(0));
    for (int a = 0; a < v.n; ++a)
        for (auto& [d, c] : v.c[a].terms()) {
            if (d > w.hi) throw std::invalid_argument("to_coords_truncated: support above window");
            if (d < w.lo) continue;
            out[size_t(w.index(d, a))] = c;
        }
    return out;
}

LaurentVec from_coords(const RatVec& coords, const Window& w) {
    LaurentVec v(w.ctx.n);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        auto [d, a] = w.deg_coord(int(i));
        v.c[a].set_coeff(d, coords[i]);
    }
    return v;
}

MetricOperator MetricOperator::identity_metric(const Context& ctx) {
    return {ctx, LaurentMat::identity(ctx.n), LaurentMat::identity(ctx.n)};
}

MetricOperator MetricOperator::from_matrix(const Context& ctx, const LaurentMat& g) {
    if (g.n != ctx.n) throw DimensionMismatch("MetricOperator: size mismatch");
    return {ctx, g, lp_inverse(g)};
}

bool MetricOperator::is_diagonal_monomial() const {
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const auto& p = g.at(i, j);
            if (i == j ? !p.is_monomial() : !p.is_zero()) return false;
        }
    return true;
}

Rat inner_one(const LaurentVec& v, const LaurentVec& w, const Rat& q) {
    if (v.n != w.n) throw DimensionMismatch("inner_one: dimension mismatch");
    Rat s = 0;
    for (int a = 0; a < v.n; ++a) {
        const auto& tv = v.c[a].terms();
        const auto& tw = w.c[a].terms();
        for (auto& [d, cv] : tv) {
            auto it = tw.find(d);
            if (it == tw.end()) continue;
            s += cv * it->second * q_pow(q, -2L * d);
        }
    }
    return s;
}

Rat inner(const LaurentVec& v, const LaurentVec& w, const MetricOperator& m) {
    return inner_one(lp_apply(m.g_inv, v), lp_apply(m.g_inv, w), m.ctx.q);
}

static Cplx eval_vec_dot(const LaurentVec& x, const LaurentVec& y, const Cplx& t) {
    // x(t)^T conj(y(t)) for real-coefficient vectors: conj(y(t)) = y(conj t)
    Cplx s(Real(0), Real(0));
    Cplx tc = conj(t);
    for (int a = 0; a < x.n; ++a) s += x.c[a].eval(t) * y.c[a].eval(tc);
    return s;
}

Real inner_quadrature(const LaurentVec& v, const LaurentVec& w, const MetricOperator& m,
                      int points) {
    LaurentVec gv = lp_apply(m.g_inv, v), gw = lp_apply(m.g_inv, w);
    Real radius = to_real(Rat(1) / m.ctx.q);
    Real two_pi = 2 * pi_real();
    Real acc = 0;
    for (int k = 0; k < points; ++k) {
        Real theta = two_pi * Real(k) / Real(points);
        Cplx t = Cplx(radius, Real(0)) * unit_phase(theta);
        acc += real(eval_vec_dot(gv, gw, t));
    }
    return acc / Real(points);
}

RatMat gram(const std::vector<LaurentVec>& vs, const MetricOperator& m) {
    int k = int(vs.size());
    RatMat gmat(k, k);
    std::vector<LaurentVec> tv;
    tv.reserve(vs.size());
    for (auto& v : vs) tv.push_back(lp_apply(m.g_inv, v));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            Rat val = inner_one(tv[size_t(i)], tv[size_t(j)], m.ctx.q);
            gmat.at(i, j) = val;
            gmat.at(j, i) = val;
        }
    return gmat;
}

Rat pairing_const_term(const LaurentVec& v, const LaurentVec& vstar) {
    if (v.n != vstar.n) throw DimensionMismatch("pairing_const_term: dimension mismatch");
    Rat s = 0;
    for (int a = 0; a < v.n; ++a)
        for (auto& [d, cv] : v.c[a].terms()) s += cv * vstar.c[a].coeff(-d);
    return s;
}

std::vector<LaurentVec> window_monomials(const Window& w) {
    std::vector<LaurentVec> out;
    out.reserve(size_t(w.size()));
    for (int d = w.lo; d <= w.hi; ++d)
        for (int a = 0; a < w.ctx.n; ++a) out.push_back(LaurentVec::basis(w.ctx.n, a, d));
    return out;
}

RatMat dual_gram(const Window& w, const MetricOperator& m) {
    RatMat gmat = gram(window_monomials(w), m);
    if (rat_det(gmat) == 0) throw std::logic_error("dual_gram: singular Gram matrix");
    return rat_inverse(gmat);
}

} // namespace looptheta
