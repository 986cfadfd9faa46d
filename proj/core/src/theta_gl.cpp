#include "looptheta/theta_gl.hpp"
#include "looptheta/enumerate.hpp"

#include <algorithm>
#include <cmath>

namespace looptheta {

// ---- enumeration ----

std::vector<Real> cholesky_diagonal(const RealMat& g) {
    RealMat lo;
    if (!cholesky(g, lo)) throw std::logic_error("cholesky_diagonal: matrix not PD");
    std::vector<Real> d(static_cast<size_t>(g.rows));
    for (int i = 0; i < g.rows; ++i) d[size_t(i)] = lo.at(i, i);
    return d;
}

namespace {

struct EnumFrame {
    const RealMat& lower; // Cholesky factor
    const std::vector<Real>& shift;
    Real r2;
    long max_points;
    long seen = 0;
    std::vector<long> x;
    const std::function<void(const std::vector<long>&, const Real&)>& f;
};

void enum_level(EnumFrame& ef, int i, const Real& used) {
    int r = ef.lower.rows;
    if (i < 0) {
        if (++ef.seen > ef.max_points)
            throw EnumerationOverflow("sphere_enumerate: point cap exceeded");
        ef.f(ef.x, used);
        return;
    }
    // y_i = L_ii (x_i + s_i) + sum_{j>i} L_ji (x_j + s_j)
    Real c = ef.lower.at(i, i) * ef.shift[size_t(i)];
    for (int j = i + 1; j < r; ++j)
        c += ef.lower.at(j, i) * (Real(ef.x[size_t(j)]) + ef.shift[size_t(j)]);
    Real budget = ef.r2 - used;
    if (budget < 0) return;
    Real halfwidth = sqrt(budget);
    long lo_i = long(std::ceil(((-halfwidth - c) / ef.lower.at(i, i)).convert_to<double>() - 1e-12));
    long hi_i = long(std::floor(((halfwidth - c) / ef.lower.at(i, i)).convert_to<double>() + 1e-12));
    for (long m = lo_i; m <= hi_i; ++m) {
        Real y = ef.lower.at(i, i) * Real(m) + c;
        Real q = used + y * y;
        if (q > ef.r2) continue;
        ef.x[size_t(i)] = m;
        enum_level(ef, i - 1, q);
    }
    ef.x[size_t(i)] = 0;
}

} // namespace

void sphere_enumerate(const RealMat& g, const std::vector<Real>& shift, const Real& r2,
                      long max_points,
                      const std::function<void(const std::vector<long>&, const Real&)>& f) {
    int r = g.rows;
    if (r == 0) {
        if (r2 >= 0) f({}, Real(0));
        return;
    }
    RealMat lo;
    if (!cholesky(g, lo)) throw std::logic_error("sphere_enumerate: Gram not positive definite");
    EnumFrame ef{lo, shift, r2, max_points, 0, std::vector<long>(size_t(r), 0), f};
    enum_level(ef, r - 1, Real(0));
}

// ---- one-dimensional Gaussian sums ----

GaussianSum gaussian_sum_1d(const Real& x, const Real& eps) {
    if (x <= 0) throw std::invalid_argument("gaussian_sum_1d: x must be positive");
    if (eps <= 0) throw std::invalid_argument("gaussian_sum_1d: eps must be positive");
    Real pi = pi_real();
    // remainder for cutting at |m| < M: 2 e^{-pi x M^2} / (1 - e^{-pi x (2M+1)})
    auto rem = [&](long m) {
        Real e1 = exp(-pi * x * Real(m) * Real(m));
        Real e2 = exp(-pi * x * Real(2 * m + 1));
        return 2 * e1 / (1 - e2);
    };
    long M = 1;
    while (rem(M) >= eps) {
        ++M;
        if (M > 4000000) throw std::logic_error("gaussian_sum_1d: eps unreachable");
    }
    Real s = 1;
    for (long m = 1; m < M; ++m) s += 2 * exp(-pi * x * Real(m) * Real(m));
    return {s, rem(M), M};
}

Real shifted_gaussian_sum(const Real& lambda, const Real& x0, const Real& eps) {
    Real pi = pi_real();
    auto rem = [&](long m) {
        Real base = Real(m) - abs(x0);
        if (base <= 0) return Real(1);
        Real e1 = exp(-pi * lambda * base * base);
        Real e2 = exp(-pi * lambda * (2 * base + 1));
        return 2 * e1 / (1 - e2);
    };
    long M = 1;
    while (rem(M) >= eps) {
        ++M;
        if (M > 4000000) throw std::logic_error("shifted_gaussian_sum: eps unreachable");
    }
    Real s = 0;
    for (long m = -M; m < M; ++m) {
        Real u = Real(m) + x0;
        s += exp(-pi * lambda * u * u);
    }
    return s;
}

Real shifted_dual_sum(const Real& lambda, const Real& x0, const Real& eps) {
    Real pi = pi_real();
    auto rem = [&](long k) {
        Real e1 = exp(-pi * Real(k) * Real(k) / lambda);
        Real e2 = exp(-pi * Real(2 * k + 1) / lambda);
        return 2 * e1 / (1 - e2);
    };
    long K = 1;
    while (rem(K) >= eps) ++K;
    Real s = 1;
    for (long k = 1; k < K; ++k)
        s += 2 * cos(2 * pi * Real(k) * x0) * exp(-pi * Real(k) * Real(k) / lambda);
    return s / sqrt(lambda);
}

Real poisson_check(const Rat& a, const Context& ctx, int i) {
    if (a == 0) throw std::invalid_argument("poisson_check: a must be nonzero");
    Real eps("1e-40");
    Real av = abs(to_real(a));
    Real qi = to_real(q_pow(ctx.q, i));
    Real lhs = gaussian_sum_1d(1 / (av * av * qi * qi), eps).value;
    Real rhs = av * qi * gaussian_sum_1d(av * av * qi * qi, eps).value;
    return abs(lhs - rhs);
}

Real poisson_check_shifted(const Real& lambda, const Real& x0) {
    Real eps("1e-40");
    return abs(shifted_gaussian_sum(lambda, x0, eps) - shifted_dual_sum(lambda, x0, eps));
}

// ---- lattice Gaussian sums with certificates ----

namespace {

// upper bound for the operator norm of g on the q-weighted space
Real opnorm_bound(const LaurentMat& g, const Rat& q) {
    std::map<int, Real> fro2; // squared Frobenius mass per monomial degree
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (auto& [deg, c] : g.at(i, j).terms()) {
                auto it = fro2.emplace(deg, Real(0)).first;
                it->second += to_real(c) * to_real(c);
            }
    Real s = 0;
    for (auto& [deg, m2] : fro2) s += to_real(q_pow(q, -deg)) * sqrt(m2);
    return s * (1 + Real("1e-45"));
}

// product over degrees lo < i <= hi of S(x q^{-2i})^n, upper bound
Real band_product(const Real& x, const Rat& q, int lo, int hi, int n) {
    Real p = 1;
    Real eps("1e-44");
    for (int i = lo + 1; i <= hi; ++i) {
        GaussianSum s = gaussian_sum_1d(x * to_real(q_pow(q, -2L * i)), eps);
        Real v = s.value + s.tail;
        for (int k = 0; k < n; ++k) p *= v;
    }
    return p;
}

// product over all degrees i <= hi, certified upper bound
Real full_product(const Real& x, const Rat& q, int hi, int n) {
    Real p = 1;
    Real eps("1e-44");
    Real pi = pi_real();
    int i = hi;
    while (true) {
        Real xi = x * to_real(q_pow(q, -2L * i));
        if (xi > 40) {
            // remaining log-mass is dominated by a geometric series in q^{-2}
            Real rem = 3 * exp(-pi * xi) / (1 - 1 / to_real(q * q));
            p *= exp(Real(n) * rem);
            break;
        }
        GaussianSum s = gaussian_sum_1d(xi, eps);
        Real v = s.value + s.tail;
        for (int k = 0; k < n; ++k) p *= v;
        --i;
        if (hi - i > 8192) throw std::logic_error("full_product: no convergence");
    }
    return p;
}

} // namespace

namespace {

struct WindowForm {
    std::vector<LaurentVec> basis;
    RealMat gram;
};

WindowForm window_form(const MetricOperator& m, const GradedLattice& L, int floor_deg) {
    WindowForm wf;
    for (int deg = floor_deg + 1; deg <= L.d; ++deg)
        for (int a = 0; a < L.n; ++a) wf.basis.push_back(LaurentVec::basis(L.n, a, deg));
    for (auto& v : L.extra) wf.basis.push_back(v);
    RatMat gq = gram(wf.basis, m);
    int r = int(wf.basis.size());
    wf.gram = RealMat(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) wf.gram.at(i, j) = to_real(gq.at(i, j));
    return wf;
}

// sum_{x in Z^r} e^{-pi x^T G x} <= prod_i S(l_ii^2) over the Cholesky diagonal
// (each coordinate sum is a shifted Gaussian sum, maximized at shift 0)
Real product_sum_bound(const RealMat& g) {
    Real p = 1;
    Real tiny("1e-30");
    for (auto& l : cholesky_diagonal(g)) {
        GaussianSum s = gaussian_sum_1d(l * l, tiny);
        p *= s.value + s.tail;
    }
    return p;
}

} // namespace

namespace {

RealMat to_real_mat(const RatMat& m) {
    RealMat out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = to_real(m.a[i]);
    return out;
}

Real half_form_bound(const RealMat& g) {
    RealMat h = g;
    for (auto& v : h.a) v /= 2;
    return product_sum_bound(h);
}

} // namespace

// The window sum is evaluated through a partial Poisson split: coordinates
// with unit-or-larger diagonal weight are enumerated directly, the wide
// (shallow) block is replaced by its dual sum via Poisson summation with the
// conditional shift entering as a phase. Both spheres are then small. The
// split is exact: the Schur complement, the dual form and det C stay rational.
LatticeSum lattice_gaussian_sum(const MetricOperator& m, const GradedLattice& L, const Real& eps,
                                long max_points) {
    if (eps <= 0) throw std::invalid_argument("lattice_gaussian_sum: eps must be positive");
    const Rat& q = m.ctx.q;
    Real sigma = 1 / opnorm_bound(m.g, q);
    Real sig2 = sigma * sigma;
    int d_e = L.support_ceiling();
    Real pi = pi_real();

    // the magnitude of the sum itself, for relative tail targets
    int floor0 = std::min(L.support_floor(), L.d) - m.bandwidth() - 1;
    Real scale = product_sum_bound(window_form(m, L, floor0).gram);
    if (scale < 1) scale = 1;
    Real target = eps * scale / 4;

    // adaptive degree floor; the dropped mass is controlled by the diagonal
    // comparison (v,v)_g >= sigma^2 (v,v)_1
    Real all = full_product(sig2, q, d_e, L.n);
    int floor_deg = floor0;
    Real deep;
    for (int tries = 0;; ++tries) {
        Real window = band_product(sig2, q, floor_deg, d_e, L.n);
        deep = all - window;
        if (deep < target) break;
        floor_deg -= 2;
        if (tries > 200) throw std::logic_error("lattice_gaussian_sum: floor search stuck");
    }

    std::vector<LaurentVec> basis;
    for (int deg = floor_deg + 1; deg <= L.d; ++deg)
        for (int a = 0; a < L.n; ++a) basis.push_back(LaurentVec::basis(L.n, a, deg));
    for (auto& v : L.extra) basis.push_back(v);
    RatMat gq = gram(basis, m);
    int r = int(basis.size());

    std::vector<int> narrow, wide; // direct block / Poisson-dualized block
    for (int i = 0; i < r; ++i)
        (gq.at(i, i) >= 1 ? narrow : wide).push_back(i);
    int np = int(narrow.size()), ns = int(wide.size());

    LatticeSum out;
    out.floor_deg = floor_deg;

    if (ns == 0) {
        RealMat G = to_real_mat(gq);
        Real fhalf = half_form_bound(G);
        Real r2 = 2 / pi * log(3 * fhalf / target);
        if (r2 < 1) r2 = 1;
        Real acc = 0;
        long points = 0;
        std::vector<Real> shift(size_t(r), Real(0));
        sphere_enumerate(G, shift, r2, max_points,
                         [&](const std::vector<long>&, const Real& qv) {
                             acc += exp(-pi * qv);
                             ++points;
                         });
        out.value = acc;
        out.tail = (deep + exp(-pi * r2 / 2) * fhalf) * (1 + Real("1e-40"));
        out.points = points;
        out.radius2 = r2;
        return out;
    }

    // exact block data: A (narrow), C (wide), B (coupling)
    RatMat A(np, np), C(ns, ns), B(np, ns);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) A.at(i, j) = gq.at(narrow[size_t(i)], narrow[size_t(j)]);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) C.at(i, j) = gq.at(wide[size_t(i)], wide[size_t(j)]);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < ns; ++j) B.at(i, j) = gq.at(narrow[size_t(i)], wide[size_t(j)]);
    RatMat Cinv = rat_inverse(C);
    Rat detC = rat_det(C);
    RatMat schur = A; // A - B C^{-1} B^T
    {
        RatMat bc = mat_mul(B, Cinv);
        RatMat bcb = mat_mul(bc, mat_transpose(B));
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < np; ++j) schur.at(i, j) -= bcb.at(i, j);
    }
    // shift matrix: s(x_P) = C^{-1} B^T x_P
    RealMat shiftm = to_real_mat(mat_mul(Cinv, mat_transpose(B)));
    RealMat schur_r = to_real_mat(schur);
    RealMat dual_r = to_real_mat(Cinv);
    Real det_norm = 1 / sqrt(to_real(detC));

    Real f_outer = product_sum_bound(schur_r);
    Real f_dual = product_sum_bound(dual_r);
    Real fh_outer = half_form_bound(schur_r);
    Real fh_dual = half_form_bound(dual_r);

    // sphere radii; |dual sum| <= det_norm * f_dual uniformly in the shift
    Real r2_outer = np ? 2 / pi * log(3 * fh_outer * det_norm * f_dual / target) : Real(0);
    Real r2_dual = 2 / pi * log(3 * fh_dual * det_norm * f_outer / target);
    if (np && r2_outer < 1) r2_outer = 1;
    if (r2_dual < 1) r2_dual = 1;

    // dual point list (shared across outer points)
    std::vector<std::vector<long>> ys;
    std::vector<Real> yweight;
    {
        std::vector<Real> zero(size_t(ns), Real(0));
        sphere_enumerate(dual_r, zero, r2_dual, max_points,
                         [&](const std::vector<long>& y, const Real& qv) {
                             ys.push_back(y);
                             yweight.push_back(exp(-pi * qv));
                         });
    }

    Real two_pi = 2 * pi;
    Real acc = 0;
    long points = 0;
    auto add_outer = [&](const std::vector<long>& xp, const Real& qv) {
        // dual sum with phase e^{2 pi i <y, s>}, real part
        std::vector<Real> s(size_t(ns), Real(0));
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < np; ++j)
                if (xp[size_t(j)] != 0) s[size_t(i)] += shiftm.at(i, j) * Real(xp[size_t(j)]);
        Real dual = 0;
        for (size_t k = 0; k < ys.size(); ++k) {
            Real phase = 0;
            for (int i = 0; i < ns; ++i)
                if (ys[k][size_t(i)] != 0) phase += Real(ys[k][size_t(i)]) * s[size_t(i)];
            dual += yweight[k] * cos(two_pi * phase);
        }
        acc += exp(-pi * qv) * dual;
        points += long(ys.size());
    };
    if (np == 0) {
        add_outer({}, Real(0));
    } else {
        std::vector<Real> zero(size_t(np), Real(0));
        sphere_enumerate(schur_r, zero, r2_outer, max_points, add_outer);
    }

    Real tail_outer = np ? exp(-pi * r2_outer / 2) * fh_outer * det_norm * f_dual : Real(0);
    Real tail_dual = exp(-pi * r2_dual / 2) * fh_dual * det_norm * f_outer;
    out.value = det_norm * acc;
    out.tail = (deep + tail_outer + tail_dual) * (1 + Real("1e-40"));
    out.points = points;
    out.radius2 = r2_dual;
    return out;
}

ThetaResult partial_theta(const TripleGL& triple, const GradedLattice& L, const Real& eps,
                          long max_points) {
    Real cl = covolume_theory_value(triple.ctheory, L);
    LatticeSum s = lattice_gaussian_sum(triple.metric, L, eps, max_points);
    ThetaResult out;
    out.value = cl * s.value;
    out.tail_bound = cl * s.tail;
    out.table.push_back({L.d, out.value, out.tail_bound, Real(0), false});
    out.stabilized = true;
    return out;
}

ThetaResult theta(const TripleGL& triple, const Real& eps, int d_max) {
    ThetaResult out;
    out.stabilized = false;
    Real prev = 0, prev_tail = 0;
    int n = triple.metric.ctx.n;
    for (int d = 0; d <= d_max; ++d) {
        GradedLattice ld = GradedLattice::base(n, d);
        ThetaResult td = partial_theta(triple, ld, eps / 4);
        // comparison lattice L^d + Z t^{d+1} e_1 for the (com) ratio
        GradedLattice lext = ld.with_extra(LaurentVec::basis(n, 0, d + 1));
        ThetaResult tl = partial_theta(triple, lext, eps / 4);
        Real ratio = tl.value / td.value;
        out.table.push_back({d, td.value, td.tail_bound, ratio, true});
        out.value = td.value;
        out.tail_bound = td.tail_bound;
        if (d > 0) {
            Real step = abs(td.value - prev) + td.tail_bound + prev_tail;
            if (step < eps) {
                out.stabilized = true;
                out.tail_bound = td.tail_bound + step;
                break;
            }
        }
        prev = td.value;
        prev_tail = td.tail_bound;
    }
    return out;
}

ThetaResult theta_raw(const LaurentMat& g, const Context& ctx, const Real& c0, const Real& eps,
                      int d_max) {
    MetricOperator m = MetricOperator::from_matrix(ctx, g);
    CovolumeTheoryGL c{GradedLattice::base(ctx.n, 0), c0, m};
    return theta({m, c}, eps, d_max);
}

ThetaResult theta_of_element(const ExtendedElement& e, const Context& ctx, const Real& eps,
                             int d_max, const Real& scalar_prefactor) {
    return theta(triple_of(e, ctx, Real("1e-30"), scalar_prefactor), eps, d_max);
}

// ---- inequality checks ----

RedCheck reduction_inequality_check(const LaurentMat& a, const LaurentMat& u, int d,
                                    const Context& ctx, const Real& eps) {
    for (int i = 0; i < u.n; ++i)
        for (int j = 0; j < u.n; ++j) {
            const LaurentPoly& p = u.at(i, j);
            if (i == j) {
                if (!(p == LaurentPoly::constant(Rat(1))))
                    throw std::invalid_argument("reduction check: u must be unipotent");
            } else if (!p.is_zero() && (i > j || p.deg_max() > 0)) {
                throw std::invalid_argument("reduction check: u must be upper with t^-1 entries");
            }
        }
    MetricOperator ma = MetricOperator::from_matrix(ctx, a);
    MetricOperator mau = MetricOperator::from_matrix(ctx, lp_mul(a, u));
    GradedLattice ld = GradedLattice::base(ctx.n, d);
    LatticeSum lhs = lattice_gaussian_sum(mau, ld, eps);
    LatticeSum rhs = lattice_gaussian_sum(ma, ld, eps);
    RedCheck out;
    out.lhs = lhs.value;
    out.rhs = rhs.value;
    out.slack = lhs.tail + rhs.tail;
    out.margin = rhs.value - lhs.value;
    out.holds = lhs.value <= rhs.value + out.slack;
    return out;
}

BlockwiseCheck blockwise_unipotent_check(const std::vector<int>& dims,
                                         const std::vector<std::vector<double>>& U,
                                         const std::vector<double>& scales, int box) {
    int m = 0;
    for (int d : dims) m += d;
    if (int(U.size()) != m || int(scales.size()) != m)
        throw std::invalid_argument("blockwise check: size mismatch");
    // structural check: strictly lower block triangle free, identity diagonal blocks
    {
        int row0 = 0;
        for (int bs : dims) {
            for (int i = row0; i < row0 + bs; ++i) {
                for (int j = row0; j < m; ++j) {
                    double expected = (i == j) ? 1.0 : 0.0;
                    if (j >= row0 && U[size_t(i)][size_t(j)] != expected)
                        throw std::invalid_argument(
                            "blockwise check: operator not blockwise unipotent");
                }
            }
            row0 += bs;
        }
    }
    const double pi = 3.14159265358979323846;
    double lhs = 0, rhs = 0;
    std::vector<int> k(size_t(m), -box);
    while (true) {
        double q0 = 0, q1 = 0;
        for (int i = 0; i < m; ++i) {
            double xi = scales[size_t(i)] * k[size_t(i)];
            q0 += xi * xi;
            double yi = 0;
            for (int j = 0; j < m; ++j)
                yi += U[size_t(i)][size_t(j)] * scales[size_t(j)] * k[size_t(j)];
            q1 += yi * yi;
        }
        if (q0 < 60) rhs += std::exp(-pi * q0);
        if (q1 < 60) lhs += std::exp(-pi * q1);
        int i = 0;
        while (i < m && ++k[size_t(i)] > box) k[size_t(i++)] = -box;
        if (i == m) break;
    }
    // |U S k| >= sigma |k| with sigma = s_min / ||U^{-1}||_F
    std::vector<std::vector<double>> inv(size_t(m), std::vector<double>(size_t(m), 0.0));
    {
        std::vector<std::vector<double>> a = U;
        for (int i = 0; i < m; ++i) inv[size_t(i)][size_t(i)] = 1.0;
        for (int c = 0; c < m; ++c) {
            for (int i = c + 1; i < m; ++i) {
                double f = a[size_t(i)][size_t(c)]; // diagonal is 1
                if (f == 0) continue;
                for (int j = 0; j < m; ++j) {
                    a[size_t(i)][size_t(j)] -= f * a[size_t(c)][size_t(j)];
                    inv[size_t(i)][size_t(j)] -= f * inv[size_t(c)][size_t(j)];
                }
            }
        }
    }
    double fro = 0;
    for (auto& row : inv)
        for (double v : row) fro += v * v;
    double smin = 1e300;
    for (double s : scales) smin = std::min(smin, std::abs(s));
    double sigma2 = smin * smin / fro;
    double tail1 = 2 * std::exp(-pi * sigma2 * (box + 1.0) * (box + 1.0)) /
                   (1 - std::exp(-pi * sigma2 * (2.0 * box + 3.0)));
    double sfull = 1 + 2 * std::exp(-pi * sigma2) / (1 - std::exp(-pi * sigma2));
    double slack = m * tail1 * std::pow(sfull, m - 1) + 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1);
    BlockwiseCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.slack = slack;
    out.holds = lhs <= rhs + slack;
    return out;
}

UpperBoundCheck upper_bound_check(const std::vector<Rat>& a_diag, const Real& c0, int d,
                                  const Context& ctx, const Real& eps) {
    if (int(a_diag.size()) != ctx.n)
        throw std::invalid_argument("upper_bound_check: diagonal size mismatch");
    std::vector<LaurentPoly> diag;
    for (auto& aj : a_diag) diag.push_back(LaurentPoly::constant(aj));
    MetricOperator m = MetricOperator::from_matrix(ctx, LaurentMat::diag(diag));
    CovolumeTheoryGL c{GradedLattice::base(ctx.n, 0), c0, m};
    ThetaResult td = partial_theta({m, c}, GradedLattice::base(ctx.n, d), eps);

    Real tiny("1e-44");
    Real pi = pi_real();
    Real bound = c0;
    for (auto& aj : a_diag) {
        Real a2 = to_real(aj * aj);
        int i = 0;
        while (true) {
            Real x = to_real(q_pow(ctx.q, 2L * i)) / a2;
            if (x > 40 && i > 0) {
                bound *= exp(3 * exp(-pi * x) / (1 - 1 / to_real(ctx.q * ctx.q)));
                break;
            }
            GaussianSum s = gaussian_sum_1d(x, tiny);
            bound *= s.value + s.tail;
            ++i;
            if (i > 4096) throw std::logic_error("upper_bound_check: product not converging");
        }
        for (int ii = 1; ii <= d; ++ii) {
            GaussianSum s = gaussian_sum_1d(a2 * to_real(q_pow(ctx.q, 2L * ii)), tiny);
            bound *= s.value + s.tail;
        }
    }
    UpperBoundCheck out;
    out.theta_d = td.value;
    out.bound = bound;
    out.slack = td.tail_bound;
    out.holds = td.value <= bound + td.tail_bound;
    return out;
}

// ---- automorphy ----

AutomorphyReport automorphy_suite(const ExtendedElement& e, const std::vector<LaurentMat>& gammas,
                                  const std::vector<LaurentMat>& ks, const Context& ctx,
                                  const Real& eps, int d_max) {
    AutomorphyReport rep;
    ThetaResult base = theta_of_element(e, ctx, eps, d_max);
    rep.base_value = base.value;
    rep.base_tail = base.tail_bound;
    for (auto& gamma : gammas) {
        ExtendedElement prod = ext_mul(lift_integral(gamma, +1), e);
        ThetaResult tl = theta_of_element(prod, ctx, eps, d_max);
        Real dev = abs(tl.value - base.value) / abs(base.value);
        rep.left.push_back(
            {dev, tl.tail_bound + base.tail_bound, tl.stabilized && base.stabilized});
    }
    for (auto& k : ks) {
        KLift kl = lift_K(k, ctx);
        ExtendedElement prod = ext_mul(e, kl.unit);
        ThetaResult tr = theta_of_element(prod, ctx, eps, d_max, 1 / kl.norm_one);
        Real dev = abs(tr.value - base.value) / abs(base.value);
        rep.right.push_back(
            {dev, tr.tail_bound + base.tail_bound, tr.stabilized && base.stabilized});
    }
    return rep;
}

// ---- Siegel scan ----

SiegelScanReport siegel_scan(const SiegelBox& box, const Context& ctx, const Real& eps, int d_max,
                             unsigned seed) {
    if (int(box.a_ranges.size()) != ctx.n)
        throw std::invalid_argument("siegel_scan: a_ranges must have n entries");
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> grid(0, 16);
    auto sample_rat = [&](const Rat& lo, const Rat& hi) {
        return lo + (hi - lo) * Rat(grid(rng), 16);
    };
    SiegelScanReport rep;
    for (int s = 0; s < box.sample_count; ++s) {
        Rat cval = sample_rat(box.c_lo, box.c_hi);
        std::vector<LaurentPoly> diag;
        for (auto& [lo, hi] : box.a_ranges) {
            Rat a = sample_rat(lo, hi);
            if (a == 0) a = hi;
            diag.push_back(LaurentPoly::constant(a));
        }
        LaurentMat u = LaurentMat::identity(ctx.n);
        for (int i = 0; i < ctx.n; ++i)
            for (int j = i + 1; j < ctx.n; ++j)
                for (int deg = 1; deg <= box.delta_u_max; ++deg)
                    u.at(i, j).add_coeff(-deg, sample_rat(-box.u_coeff_bound, box.u_coeff_bound));
        LaurentMat au = lp_mul(LaurentMat::diag(diag), u);
        ThetaResult t = theta_raw(au, ctx, to_real(cval), eps, d_max);
        SiegelScanReport::Sample row;
        row.c = to_real(cval);
        row.stabilization_d = t.table.back().d;
        row.stabilized = t.stabilized;
        row.value = t.value;
        rep.samples.push_back(row);
        rep.max_stabilization_d = std::max(rep.max_stabilization_d, row.stabilization_d);
    }
    rep.all_stabilized = true;
    for (auto& r : rep.samples) rep.all_stabilized = rep.all_stabilized && r.stabilized;
    return rep;
}

} // namespace looptheta
