#include "looptheta/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace looptheta {

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal -> exact rational
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        int exp10 = int(s.size() - dot - 1);
        Int num(digits);
        Int den = 1;
        for (int i = 0; i < exp10; ++i) den *= 10;
        return Rat(num, den);
    }
    return Rat(Int(s));
}

std::string rational_to_string(const Rat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

LaurentPoly LaurentPoly::constant(const Rat& c) { return monomial(0, c); }

LaurentPoly LaurentPoly::monomial(int deg, const Rat& c) {
    LaurentPoly p;
    if (c != 0) p.c_[deg] = c;
    return p;
}

Rat LaurentPoly::coeff(int deg) const {
    auto it = c_.find(deg);
    return it == c_.end() ? Rat(0) : it->second;
}

void LaurentPoly::set_coeff(int deg, const Rat& v) {
    if (v == 0)
        c_.erase(deg);
    else
        c_[deg] = v;
}

void LaurentPoly::add_coeff(int deg, const Rat& v) {
    auto it = c_.find(deg);
    if (it == c_.end()) {
        if (v != 0) c_[deg] = v;
        return;
    }
    it->second += v;
    if (it->second == 0) c_.erase(it);
}

int LaurentPoly::deg_min() const {
    if (c_.empty()) throw std::logic_error("deg_min of zero polynomial");
    return c_.begin()->first;
}

int LaurentPoly::deg_max() const {
    if (c_.empty()) throw std::logic_error("deg_max of zero polynomial");
    return c_.rbegin()->first;
}

int LaurentPoly::bandwidth() const {
    int b = 0;
    for (auto& [d, v] : c_) b = std::max(b, std::abs(d));
    return b;
}

bool LaurentPoly::is_constant() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
}

bool LaurentPoly::is_integral() const {
    for (auto& [d, v] : c_)
        if (denominator(v) != 1) return false;
    return true;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (auto& [d, v] : o.c_) r.add_coeff(d, v);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (auto& [d, v] : o.c_) r.add_coeff(d, -v);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (auto& [d, v] : c_) r.c_[d] = -v;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (auto& [d1, v1] : c_)
        for (auto& [d2, v2] : o.c_) r.add_coeff(d1 + d2, v1 * v2);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rat& s) const {
    LaurentPoly r;
    if (s == 0) return r;
    for (auto& [d, v] : c_) r.c_[d] = v * s;
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r;
    for (auto& [d, v] : c_) r.c_[d + k] = v;
    return r;
}

LaurentPoly LaurentPoly::substituted(const Rat& q, SubstMode mode) const {
    LaurentPoly r;
    for (auto& [d, v] : c_) {
        Rat scale = 1;
        if (d >= 0)
            for (int i = 0; i < d; ++i) scale /= q;
        else
            for (int i = 0; i < -d; ++i) scale *= q;
        int nd = (mode == SubstMode::q_inv_t) ? d : -d;
        r.add_coeff(nd, v * scale);
    }
    return r;
}

LaurentPoly LaurentPoly::divided_exact(const LaurentPoly& o) const {
    if (o.is_zero()) throw std::logic_error("division by zero polynomial");
    if (is_zero()) return LaurentPoly();
    // shift both to ordinary polynomials and long-divide over Q
    int sa = deg_min(), sb = o.deg_min();
    LaurentPoly rem = shifted(-sa);
    LaurentPoly div = o.shifted(-sb);
    int db = div.deg_max();
    Rat lead = div.coeff(db);
    LaurentPoly quot;
    while (!rem.is_zero() && rem.deg_max() >= db) {
        int d = rem.deg_max() - db;
        Rat f = rem.coeff(rem.deg_max()) / lead;
        quot.add_coeff(d, f);
        rem = rem - div.shifted(d).scaled(f);
    }
    if (!rem.is_zero()) throw std::logic_error("inexact Laurent division");
    return quot.shifted(sa - sb);
}

Cplx LaurentPoly::eval(const Cplx& t) const {
    if (c_.empty()) return Cplx(Real(0), Real(0));
    Cplx acc(Real(0), Real(0));
    // Horner over the (sparse) ascending degree list, then one shift by t^{deg_min}
    int prev = 0;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (first) {
            acc = Cplx(to_real(it->second), Real(0));
            prev = it->first;
            first = false;
            continue;
        }
        for (int k = it->first; k < prev; ++k) acc = acc * t;
        acc = acc + Cplx(to_real(it->second), Real(0));
        prev = it->first;
    }
    int s = deg_min();
    if (s > 0)
        for (int k = 0; k < s; ++k) acc = acc * t;
    else
        for (int k = 0; k < -s; ++k) acc = acc / t;
    return acc;
}

std::string LaurentPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [d, v] : c_) {
        if (!first) os << " + ";
        os << rational_to_string(v);
        if (d != 0) os << "*t^" << d;
        first = false;
    }
    return os.str();
}

LaurentVec LaurentVec::basis(int n, int coord, int deg, const Rat& v) {
    LaurentVec r(n);
    r.c[coord] = LaurentPoly::monomial(deg, v);
    return r;
}

bool LaurentVec::is_zero() const {
    for (auto& p : c)
        if (!p.is_zero()) return false;
    return true;
}

bool LaurentVec::is_integral() const {
    for (auto& p : c)
        if (!p.is_integral()) return false;
    return true;
}

int LaurentVec::bandwidth() const {
    int b = 0;
    for (auto& p : c) b = std::max(b, p.bandwidth());
    return b;
}

int LaurentVec::deg_min() const {
    bool any = false;
    int m = 0;
    for (auto& p : c)
        if (!p.is_zero()) {
            m = any ? std::min(m, p.deg_min()) : p.deg_min();
            any = true;
        }
    if (!any) throw std::logic_error("deg_min of zero vector");
    return m;
}

int LaurentVec::deg_max() const {
    bool any = false;
    int m = 0;
    for (auto& p : c)
        if (!p.is_zero()) {
            m = any ? std::max(m, p.deg_max()) : p.deg_max();
            any = true;
        }
    if (!any) throw std::logic_error("deg_max of zero vector");
    return m;
}

LaurentVec LaurentVec::operator+(const LaurentVec& o) const {
    if (n != o.n) throw DimensionMismatch("vector dimension mismatch");
    LaurentVec r(n);
    for (int i = 0; i < n; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

LaurentVec LaurentVec::operator-(const LaurentVec& o) const {
    if (n != o.n) throw DimensionMismatch("vector dimension mismatch");
    LaurentVec r(n);
    for (int i = 0; i < n; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

LaurentVec LaurentVec::scaled(const Rat& s) const {
    LaurentVec r(n);
    for (int i = 0; i < n; ++i) r.c[i] = c[i].scaled(s);
    return r;
}

LaurentVec LaurentVec::shifted(int k) const {
    LaurentVec r(n);
    for (int i = 0; i < n; ++i) r.c[i] = c[i].shifted(k);
    return r;
}

LaurentMat LaurentMat::identity(int n) {
    LaurentMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(Rat(1));
    return m;
}

LaurentMat LaurentMat::diag(const std::vector<LaurentPoly>& d) {
    LaurentMat m(int(d.size()));
    for (int i = 0; i < m.n; ++i) m.at(i, i) = d[i];
    return m;
}

int LaurentMat::bandwidth() const {
    int b = 0;
    for (auto& p : e) b = std::max(b, p.bandwidth());
    return b;
}

bool LaurentMat::is_identity() const { return *this == identity(n); }

bool LaurentMat::is_integral() const {
    for (auto& p : e)
        if (!p.is_integral()) return false;
    return true;
}

LaurentMat LaurentMat::transposed() const {
    LaurentMat r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = at(j, i);
    return r;
}

LaurentMat lp_mul(const LaurentMat& a, const LaurentMat& b) {
    if (a.n != b.n) throw DimensionMismatch("matrix dimension mismatch");
    LaurentMat r(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            LaurentPoly s;
            for (int k = 0; k < a.n; ++k) s = s + a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

LaurentMat lp_add(const LaurentMat& a, const LaurentMat& b) {
    if (a.n != b.n) throw DimensionMismatch("matrix dimension mismatch");
    LaurentMat r(a.n);
    for (int i = 0; i < a.n * a.n; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

LaurentVec lp_apply(const LaurentMat& a, const LaurentVec& v) {
    if (a.n != v.n) throw DimensionMismatch("matrix/vector dimension mismatch");
    LaurentVec r(a.n);
    for (int i = 0; i < a.n; ++i) {
        LaurentPoly s;
        for (int j = 0; j < a.n; ++j) s = s + a.at(i, j) * v.c[j];
        r.c[i] = s;
    }
    return r;
}

LaurentVec lp_apply_row(const LaurentVec& v, const LaurentMat& a) {
    if (a.n != v.n) throw DimensionMismatch("matrix/vector dimension mismatch");
    LaurentVec r(a.n);
    for (int j = 0; j < a.n; ++j) {
        LaurentPoly s;
        for (int i = 0; i < a.n; ++i) s = s + v.c[i] * a.at(i, j);
        r.c[j] = s;
    }
    return r;
}

LaurentPoly lp_det(const LaurentMat& a) {
    int n = a.n;
    if (n == 0) return LaurentPoly::constant(Rat(1));
    std::vector<LaurentPoly> m = a.e;
    auto at = [&](int i, int j) -> LaurentPoly& { return m[i * n + j]; };
    LaurentPoly prev = LaurentPoly::constant(Rat(1));
    int sign = 1;
    for (int p = 0; p < n - 1; ++p) {
        if (at(p, p).is_zero()) {
            int r = -1;
            for (int i = p + 1; i < n; ++i)
                if (!at(i, p).is_zero()) {
                    r = i;
                    break;
                }
            if (r < 0) return LaurentPoly(); // singular
            for (int j = 0; j < n; ++j) std::swap(at(p, j), at(r, j));
            sign = -sign;
        }
        for (int i = p + 1; i < n; ++i)
            for (int j = p + 1; j < n; ++j) {
                LaurentPoly num = at(p, p) * at(i, j) - at(i, p) * at(p, j);
                at(i, j) = num.divided_exact(prev);
            }
        prev = at(p, p);
    }
    LaurentPoly d = at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

static bool unit_parts(const LaurentPoly& det, Rat& c, int& k) {
    if (!det.is_monomial()) return false;
    k = det.deg_min();
    c = det.coeff(k);
    return c != 0;
}

LaurentMat lp_inverse(const LaurentMat& a) {
    LaurentPoly det = lp_det(a);
    Rat c;
    int k;
    if (!unit_parts(det, c, k))
        throw NotAUnit("determinant is not a unit of the Laurent ring: " + det.to_string());
    int n = a.n;
    LaurentMat inv(n);
    if (n == 1) {
        inv.at(0, 0) = LaurentPoly::monomial(-k, Rat(1) / c);
        return inv;
    }
    // adjugate over the Laurent ring, scaled by det^{-1} = c^{-1} t^{-k}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LaurentMat minor(n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int s = 0, ss = 0; s < n; ++s) {
                    if (s == j) continue;
                    minor.at(rr, ss) = a.at(r, s);
                    ++ss;
                }
                ++rr;
            }
            LaurentPoly cof = lp_det(minor);
            if ((i + j) % 2 != 0) cof = -cof;
            inv.at(j, i) = cof.scaled(Rat(1) / c).shifted(-k);
        }
    return inv;
}

LaurentMat substitute(const LaurentMat& a, const Context& ctx, SubstMode mode) {
    LaurentMat r(a.n);
    for (int i = 0; i < a.n * a.n; ++i) r.e[i] = a.e[i].substituted(ctx.q, mode);
    return r;
}

bool is_symplectic(const LaurentMat& g) {
    if (g.n % 2 != 0) return false;
    int n = g.n / 2;
    LaurentMat J(2 * n);
    for (int i = 0; i < n; ++i) {
        J.at(i, n + i) = LaurentPoly::constant(Rat(1));
        J.at(n + i, i) = LaurentPoly::constant(Rat(-1));
    }
    return lp_mul(lp_mul(g, J), g.transposed()) == J;
}

bool is_in_K(const LaurentMat& g, const Context& ctx, bool sp) {
    LaurentPoly det = lp_det(g);
    Rat c;
    int k;
    if (!unit_parts(det, c, k)) throw NotAUnit("is_in_K: g is not invertible over the Laurent ring");
    if (sp && !is_symplectic(g)) return false;
    LaurentMat lhs = lp_mul(substitute(g, ctx, SubstMode::q_inv_t),
                            substitute(g, ctx, SubstMode::q_inv_t_inv).transposed());
    return lhs.is_identity();
}

std::vector<std::vector<Cplx>> evaluate(const LaurentMat& a, const Context& ctx,
                                        const Real& theta_angle) {
    Cplx t = Cplx(to_real(Rat(1) / ctx.q), Real(0)) * unit_phase(theta_angle);
    std::vector<std::vector<Cplx>> r(a.n, std::vector<Cplx>(a.n));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r[i][j] = a.at(i, j).eval(t);
    return r;
}

} // namespace looptheta
