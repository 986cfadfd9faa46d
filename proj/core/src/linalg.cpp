#include "looptheta/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace looptheta {

std::vector<RatVec> echelon_basis(std::vector<RatVec> vs) {
    std::vector<RatVec> basis;
    for (auto& v : vs) {
        RatVec r = reduce_against(v, basis);
        int p = -1;
        for (size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0) {
                p = int(i);
                break;
            }
        if (p < 0) continue;
        Rat inv = Rat(1) / r[p];
        for (auto& x : r) x *= inv;
        // clear the new pivot from existing vectors
        for (auto& b : basis) {
            if (b[p] == 0) continue;
            Rat f = b[p];
            for (size_t i = 0; i < b.size(); ++i) b[i] -= f * r[i];
        }
        basis.push_back(std::move(r));
        std::sort(basis.begin(), basis.end(), [](const RatVec& x, const RatVec& y) {
            auto piv = [](const RatVec& v) {
                for (size_t i = 0; i < v.size(); ++i)
                    if (v[i] != 0) return i;
                return v.size();
            };
            return piv(x) < piv(y);
        });
    }
    return basis;
}

RatVec reduce_against(const RatVec& v, const std::vector<RatVec>& echelon,
                      std::vector<Rat>* coeffs) {
    RatVec r = v;
    if (coeffs) coeffs->assign(echelon.size(), Rat(0));
    for (size_t k = 0; k < echelon.size(); ++k) {
        const RatVec& b = echelon[k];
        size_t p = 0;
        while (p < b.size() && b[p] == 0) ++p;
        if (p == b.size()) continue;
        if (r[p] == 0) continue;
        Rat f = r[p]; // pivot is 1
        for (size_t i = 0; i < r.size(); ++i) r[i] -= f * b[i];
        if (coeffs) (*coeffs)[k] = f;
    }
    return r;
}

bool in_span(const RatVec& v, const std::vector<RatVec>& echelon) {
    RatVec r = reduce_against(v, echelon);
    for (auto& x : r)
        if (x != 0) return false;
    return true;
}

std::vector<Rat> express_in_basis(const RatVec& v, const std::vector<RatVec>& basis) {
    // reduce v against an echelonized copy, tracking the change of basis
    std::vector<RatVec> ech;
    std::vector<std::vector<Rat>> comb; // ech[k] = sum_j comb[k][j] basis[j]
    for (size_t j = 0; j < basis.size(); ++j) {
        std::vector<Rat> cf;
        RatVec r = reduce_against(basis[j], ech, &cf);
        int p = -1;
        for (size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0) {
                p = int(i);
                break;
            }
        if (p < 0) throw std::logic_error("express_in_basis: basis is dependent");
        std::vector<Rat> rc(basis.size(), Rat(0));
        rc[j] = 1;
        for (size_t k = 0; k < ech.size(); ++k)
            for (size_t t = 0; t < basis.size(); ++t) rc[t] -= cf[k] * comb[k][t];
        Rat inv = Rat(1) / r[p];
        for (auto& x : r) x *= inv;
        for (auto& x : rc) x *= inv;
        ech.push_back(std::move(r));
        comb.push_back(std::move(rc));
    }
    std::vector<Rat> cf;
    RatVec res = reduce_against(v, ech, &cf);
    for (auto& x : res)
        if (x != 0) throw std::logic_error("express_in_basis: vector outside span");
    std::vector<Rat> out(basis.size(), Rat(0));
    for (size_t k = 0; k < ech.size(); ++k)
        for (size_t t = 0; t < basis.size(); ++t) out[t] += cf[k] * comb[k][t];
    return out;
}

std::vector<RatVec> intersect_spans(const std::vector<RatVec>& a, const std::vector<RatVec>& b) {
    if (a.empty() || b.empty()) return {};
    size_t dim = a[0].size();
    // nullspace of [A | -B]: columns x,y with A x = B y
    size_t na = a.size(), nb = b.size();
    RatMat m(int(dim), int(na + nb));
    for (size_t j = 0; j < na; ++j)
        for (size_t i = 0; i < dim; ++i) m.at(int(i), int(j)) = a[j][i];
    for (size_t j = 0; j < nb; ++j)
        for (size_t i = 0; i < dim; ++i) m.at(int(i), int(na + j)) = -b[j][i];
    // row reduce, find free columns
    int r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        Rat inv = Rat(1) / m.at(r, c);
        for (int j = 0; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<RatVec> result;
    for (int c = 0; c < m.cols; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
        // free column -> one nullspace vector
        std::vector<Rat> x(na + nb, Rat(0));
        x[c] = 1;
        for (int k = 0; k < r; ++k) x[pivot_col[k]] = -m.at(k, c);
        RatVec v(dim, Rat(0));
        for (size_t j = 0; j < na; ++j)
            for (size_t i = 0; i < dim; ++i) v[i] += x[j] * a[j][i];
        result.push_back(std::move(v));
    }
    return echelon_basis(std::move(result));
}

std::vector<RatVec> quotient_reps(const std::vector<RatVec>& sub, const std::vector<RatVec>& amb) {
    std::vector<RatVec> acc = echelon_basis(sub);
    size_t subrank = acc.size();
    std::vector<RatVec> reps;
    for (auto& v : echelon_basis(amb)) {
        RatVec r = reduce_against(v, acc);
        bool zero = true;
        for (auto& x : r)
            if (x != 0) {
                zero = false;
                break;
            }
        if (zero) continue;
        reps.push_back(v);
        acc = echelon_basis(acc); // keep canonical
        acc.push_back(r);
        acc = echelon_basis(acc);
    }
    (void)subrank;
    return reps;
}

Rat rat_det(RatMat m) {
    if (m.rows != m.cols) throw std::logic_error("rat_det: not square");
    int n = m.rows;
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (m.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) return Rat(0);
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pr, j), m.at(c, j));
            det = -det;
        }
        det *= m.at(c, c);
        Rat inv = Rat(1) / m.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) * inv;
            for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return det;
}

RatMat rat_inverse(const RatMat& m) {
    if (m.rows != m.cols) throw std::logic_error("rat_inverse: not square");
    int n = m.rows;
    RatMat a = m, inv = RatMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (a.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) throw std::logic_error("rat_inverse: singular matrix");
        if (pr != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(pr, j), a.at(c, j));
                std::swap(inv.at(pr, j), inv.at(c, j));
            }
        Rat piv = Rat(1) / a.at(c, c);
        for (int j = 0; j < n; ++j) {
            a.at(c, j) *= piv;
            inv.at(c, j) *= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a.at(i, c) == 0) continue;
            Rat f = a.at(i, c);
            for (int j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

Rat transition_det(const std::vector<RatVec>& vs, const std::vector<RatVec>& basis) {
    if (vs.size() != basis.size()) throw std::logic_error("transition_det: rank mismatch");
    int k = int(vs.size());
    if (k == 0) return Rat(1);
    RatMat m(k, k);
    for (int j = 0; j < k; ++j) {
        std::vector<Rat> coef = express_in_basis(vs[j], basis);
        for (int i = 0; i < k; ++i) m.at(i, j) = coef[i];
    }
    return rat_det(m);
}

// ---- integer lattice algebra ----

std::vector<IntVec> hnf_basis(std::vector<IntVec> gens) {
    // column-style Euclidean reduction; pivot rows scanned top-down
    std::vector<IntVec> cols;
    for (auto& g : gens) {
        bool nz = false;
        for (auto& x : g)
            if (x != 0) {
                nz = true;
                break;
            }
        if (nz) cols.push_back(g);
    }
    if (cols.empty()) return {};
    size_t dim = cols[0].size();
    std::vector<IntVec> basis;
    size_t start = 0;
    for (size_t row = 0; row < dim && start < cols.size(); ++row) {
        // gcd-reduce all columns with nonzero entry in this row into one
        while (true) {
            int best = -1;
            for (size_t j = start; j < cols.size(); ++j)
                if (cols[j][row] != 0 && (best < 0 || abs(cols[j][row]) < abs(cols[size_t(best)][row])))
                    best = int(j);
            if (best < 0) break;
            std::swap(cols[start], cols[size_t(best)]);
            bool done = true;
            for (size_t j = start + 1; j < cols.size(); ++j) {
                if (cols[j][row] == 0) continue;
                Int qq = cols[j][row] / cols[start][row];
                for (size_t i = 0; i < dim; ++i) cols[j][i] -= qq * cols[start][i];
                if (cols[j][row] != 0) done = false;
            }
            if (done) break;
        }
        if (cols[start][row] != 0) {
            if (cols[start][row] < 0)
                for (auto& x : cols[start]) x = -x;
            ++start;
        }
    }
    for (size_t j = 0; j < start; ++j) basis.push_back(cols[j]);
    return basis;
}

std::optional<IntVec> int_solve(const std::vector<IntVec>& gens, const IntVec& target) {
    if (gens.empty()) {
        for (auto& x : target)
            if (x != 0) return std::nullopt;
        return IntVec{};
    }
    size_t dim = gens[0].size(), ng = gens.size();
    // track column operations: cols = [gens], V = identity
    std::vector<IntVec> cols = gens;
    std::vector<IntVec> V(ng, IntVec(ng, 0));
    for (size_t j = 0; j < ng; ++j) V[j][j] = 1;
    std::vector<std::pair<size_t, size_t>> pivots; // (row, col)
    size_t start = 0;
    for (size_t row = 0; row < dim && start < ng; ++row) {
        while (true) {
            int best = -1;
            for (size_t j = start; j < ng; ++j)
                if (cols[j][row] != 0 && (best < 0 || abs(cols[j][row]) < abs(cols[size_t(best)][row])))
                    best = int(j);
            if (best < 0) break;
            std::swap(cols[start], cols[size_t(best)]);
            std::swap(V[start], V[size_t(best)]);
            bool done = true;
            for (size_t j = start + 1; j < ng; ++j) {
                if (cols[j][row] == 0) continue;
                Int qq = cols[j][row] / cols[start][row];
                for (size_t i = 0; i < dim; ++i) cols[j][i] -= qq * cols[start][i];
                for (size_t i = 0; i < ng; ++i) V[j][i] -= qq * V[start][i];
                if (cols[j][row] != 0) done = false;
            }
            if (done) break;
        }
        if (cols[start][row] != 0) {
            pivots.emplace_back(row, start);
            ++start;
        }
    }
    // forward-substitute target through the triangular pivot structure
    IntVec rem = target;
    IntVec y(ng, 0);
    for (auto& [row, col] : pivots) {
        if (rem[row] % cols[col][row] != 0) return std::nullopt;
        Int f = rem[row] / cols[col][row];
        y[col] = f;
        for (size_t i = 0; i < dim; ++i) rem[i] -= f * cols[col][i];
    }
    for (auto& x : rem)
        if (x != 0) return std::nullopt;
    IntVec out(ng, 0);
    for (size_t j = 0; j < ng; ++j)
        for (size_t i = 0; i < ng; ++i) out[i] += y[j] * V[j][i];
    return out;
}

std::vector<IntVec> int_intersect(const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
    if (a.empty() || b.empty()) return {};
    size_t dim = a[0].size(), na = a.size(), nb = b.size();
    // kernel of [a | -b] via column reduction with transform tracking
    std::vector<IntVec> cols(na + nb, IntVec(dim, 0));
    for (size_t j = 0; j < na; ++j) cols[j] = a[j];
    for (size_t j = 0; j < nb; ++j)
        for (size_t i = 0; i < dim; ++i) cols[na + j][i] = -b[j][i];
    size_t ng = na + nb;
    std::vector<IntVec> V(ng, IntVec(ng, 0));
    for (size_t j = 0; j < ng; ++j) V[j][j] = 1;
    size_t start = 0;
    for (size_t row = 0; row < dim && start < ng; ++row) {
        while (true) {
            int best = -1;
            for (size_t j = start; j < ng; ++j)
                if (cols[j][row] != 0 &&
                    (best < 0 || abs(cols[j][row]) < abs(cols[size_t(best)][row])))
                    best = int(j);
            if (best < 0) break;
            std::swap(cols[start], cols[size_t(best)]);
            std::swap(V[start], V[size_t(best)]);
            bool done = true;
            for (size_t j = start + 1; j < ng; ++j) {
                if (cols[j][row] == 0) continue;
                Int qq = cols[j][row] / cols[start][row];
                for (size_t i = 0; i < dim; ++i) cols[j][i] -= qq * cols[start][i];
                for (size_t i = 0; i < ng; ++i) V[j][i] -= qq * V[start][i];
                if (cols[j][row] != 0) done = false;
            }
            if (done) break;
        }
        if (cols[start][row] != 0) ++start;
    }
    std::vector<IntVec> inter;
    for (size_t j = start; j < ng; ++j) {
        // zero column of the reduced matrix -> kernel element V[j]
        bool zero = true;
        for (auto& x : cols[j])
            if (x != 0) {
                zero = false;
                break;
            }
        if (!zero) continue;
        IntVec v(dim, 0);
        for (size_t k = 0; k < na; ++k)
            for (size_t i = 0; i < dim; ++i) v[i] += V[j][k] * a[k][i];
        inter.push_back(std::move(v));
    }
    return hnf_basis(inter);
}

namespace {

// Smith normal form of c (r x s), tracking W = U^{-1} (r x r) so that the
// class of column i of W generates the i-th cyclic factor of Z^r / im(c).
void smith_with_winv(std::vector<IntVec>& c, std::vector<IntVec>& W) {
    size_t r = c.size() ? c.size() : 0;
    if (r == 0) return;
    size_t s = c[0].size();
    W.assign(r, IntVec(r, 0));
    for (size_t i = 0; i < r; ++i) W[i][i] = 1;
    // here c is row-major: c[i][j]
    auto row_op = [&](size_t i, size_t j, const Int& m) {
        // row i += m * row j  on c;  col j -= m * col i  on W
        for (size_t k = 0; k < s; ++k) c[i][k] += m * c[j][k];
        for (size_t k = 0; k < r; ++k) W[k][j] -= m * W[k][i];
    };
    auto row_swap = [&](size_t i, size_t j) {
        std::swap(c[i], c[j]);
        for (size_t k = 0; k < r; ++k) std::swap(W[k][i], W[k][j]);
    };
    auto row_neg = [&](size_t i) {
        for (size_t k = 0; k < s; ++k) c[i][k] = -c[i][k];
        for (size_t k = 0; k < r; ++k) W[k][i] = -W[k][i];
    };
    auto col_op = [&](size_t i, size_t j, const Int& m) {
        for (size_t k = 0; k < r; ++k) c[k][i] += m * c[k][j];
    };
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t k = 0; k < r; ++k) std::swap(c[k][i], c[k][j]);
    };

    size_t t = 0;
    while (t < r && t < s) {
        // find nonzero pivot with smallest absolute value
        int pi = -1, pj = -1;
        Int best = 0;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < s; ++j)
                if (c[i][j] != 0 && (pi < 0 || abs(c[i][j]) < best)) {
                    pi = int(i);
                    pj = int(j);
                    best = abs(c[i][j]);
                }
        if (pi < 0) break;
        row_swap(t, size_t(pi));
        col_swap(t, size_t(pj));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < r; ++i)
                if (c[i][t] != 0) {
                    Int qq = c[i][t] / c[t][t];
                    row_op(i, t, -qq);
                    if (c[i][t] != 0) {
                        row_swap(t, i);
                        clean = false;
                    }
                }
            for (size_t j = t + 1; j < s; ++j)
                if (c[t][j] != 0) {
                    Int qq = c[t][j] / c[t][t];
                    col_op(j, t, -qq);
                    if (c[t][j] != 0) {
                        col_swap(t, j);
                        clean = false;
                    }
                }
        }
        if (c[t][t] < 0) row_neg(t);
        ++t;
    }
    // divisibility chain is irrelevant for our use (ranks + product of factors)
}

} // namespace

QuotientData integer_quotient(const std::vector<IntVec>& sub, const std::vector<IntVec>& sup) {
    QuotientData out;
    std::vector<IntVec> hb = hnf_basis(sup);
    out.rank_sup = int(hb.size());
    // express sub generators in the basis of sup
    size_t r = hb.size();
    std::vector<IntVec> c(r); // row-major r x (#sub)
    for (auto& row : c) row.assign(std::max<size_t>(sub.size(), 1), 0);
    for (size_t j = 0; j < sub.size(); ++j) {
        auto sol = int_solve(hb, sub[j]);
        if (!sol) return out; // not nested
        for (size_t i = 0; i < r; ++i) c[i][j] = (*sol)[i];
    }
    out.nested = true;
    if (r == 0) return out;
    std::vector<IntVec> W;
    smith_with_winv(c, W);
    size_t s = c[0].size();
    int rank_c = 0;
    for (size_t i = 0; i < r && i < s; ++i) {
        if (c[i][i] == 0) break;
        ++rank_c;
        if (c[i][i] != 1) out.torsion *= c[i][i];
    }
    out.rank_sub = rank_c;
    // free representatives: images of W columns rank_c..r-1 in ambient coords
    size_t dim = hb[0].size();
    for (size_t i = size_t(rank_c); i < r; ++i) {
        IntVec v(dim, 0);
        for (size_t k = 0; k < r; ++k)
            for (size_t d = 0; d < dim; ++d) v[d] += W[k][i] * hb[k][d];
        out.free_reps.push_back(std::move(v));
    }
    return out;
}

// ---- float-tier solvers ----

bool cholesky(const RealMat& g, RealMat& lower) {
    int n = g.rows;
    lower = RealMat(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            Real s = g.at(i, j);
            for (int k = 0; k < j; ++k) s -= lower.at(i, k) * lower.at(j, k);
            if (i == j) {
                if (s <= 0) return false;
                lower.at(i, i) = sqrt(s);
            } else {
                lower.at(i, j) = s / lower.at(j, j);
            }
        }
    }
    return true;
}

std::vector<Real> solve_cholesky(const RealMat& lower, std::vector<Real> b) {
    int n = lower.rows;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) b[i] -= lower.at(i, k) * b[k];
        b[i] /= lower.at(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) b[i] -= lower.at(k, i) * b[k];
        b[i] /= lower.at(i, i);
    }
    return b;
}

std::vector<Real> solve_spd(const RealMat& g, const std::vector<Real>& b) {
    RealMat L;
    if (!cholesky(g, L)) throw std::logic_error("solve_spd: matrix not positive definite");
    return solve_cholesky(L, b);
}

std::vector<Cplx> solve_gepp(CMat m, std::vector<Cplx> b) {
    int n = m.rows;
    for (int c = 0; c < n; ++c) {
        int pr = c;
        Real best = abs(m.at(c, c));
        for (int i = c + 1; i < n; ++i)
            if (abs(m.at(i, c)) > best) {
                best = abs(m.at(i, c));
                pr = i;
            }
        if (best == 0) throw std::logic_error("solve_gepp: singular matrix");
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pr, j), m.at(c, j));
            std::swap(b[pr], b[c]);
        }
        for (int i = c + 1; i < n; ++i) {
            if (m.at(i, c) == Cplx(0)) continue;
            Cplx f = m.at(i, c) / m.at(c, c);
            for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
            b[i] -= f * b[c];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) b[i] -= m.at(i, k) * b[k];
        b[i] /= m.at(i, i);
    }
    return b;
}

CMat inverse_gepp(const CMat& m) {
    int n = m.rows;
    CMat inv(n, n);
    for (int c = 0; c < n; ++c) {
        std::vector<Cplx> e(n, Cplx(0));
        e[c] = Cplx(1);
        std::vector<Cplx> x = solve_gepp(m, std::move(e));
        for (int i = 0; i < n; ++i) inv.at(i, c) = x[i];
    }
    return inv;
}

Real condition_estimate(const CMat& m) {
    CMat inv = inverse_gepp(m);
    Real a = 0, b = 0;
    for (auto& x : m.a) a = std::max(a, abs(x), [](const Real& u, const Real& v) { return u < v; });
    for (auto& x : inv.a) b = std::max(b, abs(x), [](const Real& u, const Real& v) { return u < v; });
    return a * b * Real(m.rows);
}

std::vector<Cplx> eigenvalues(const CMat& m) {
    int n = m.rows;
    if (n == 0) return {};
    // Faddeev-LeVerrier: coefficients of lambda^n + c[n-1] lambda^{n-1} + ... + c[0]
    std::vector<Cplx> c(size_t(n), Cplx(0));
    CMat mk = m;
    for (int k = 1; k <= n; ++k) {
        Cplx tr(0);
        for (int i = 0; i < n; ++i) tr += mk.at(i, i);
        Cplx ck = -tr / Real(k);
        c[size_t(n - k)] = ck;
        if (k == n) break;
        for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
        mk = mat_mul(m, mk);
    }
    auto poly = [&](const Cplx& z) {
        Cplx p(1);
        for (int k = n - 1; k >= 0; --k) p = p * z + c[size_t(k)];
        return p;
    };
    // Durand-Kerner from a non-symmetric spread of initial guesses
    Real radius = Real(1);
    for (auto& ck : c) radius = std::max(radius, abs(ck), [](const Real& u, const Real& v) { return u < v; });
    radius += 1;
    std::vector<Cplx> z(static_cast<size_t>(n));
    Cplx seed(Real("0.4"), Real("0.9"));
    Cplx cur(1);
    for (int i = 0; i < n; ++i) {
        cur = cur * seed;
        z[size_t(i)] = cur * radius;
    }
    Real tol = pow(Real(10), -Real(int(working_precision()) - 5));
    for (int iter = 0; iter < 200; ++iter) {
        Real worst = 0;
        for (int i = 0; i < n; ++i) {
            Cplx denom(1);
            for (int j = 0; j < n; ++j)
                if (j != i) denom = denom * (z[size_t(i)] - z[size_t(j)]);
            if (abs(denom) == 0) {
                z[size_t(i)] += Cplx(Real("1e-20"), Real("1e-20"));
                continue;
            }
            Cplx delta = poly(z[size_t(i)]) / denom;
            z[size_t(i)] -= delta;
            worst = std::max(worst, abs(delta), [](const Real& u, const Real& v) { return u < v; });
        }
        if (worst < tol) break;
    }
    return z;
}

} // namespace looptheta
