#include <doctest.h>

#include <looptheta/laurent.hpp>

#include <random>

using namespace looptheta;

namespace {

LaurentPoly mono(int deg, long num, long den = 1) {
    return LaurentPoly::monomial(deg, Rat(num, den));
}

LaurentMat elementary(int n, int i, int j, const LaurentPoly& p) {
    LaurentMat m = LaurentMat::identity(n);
    m.at(i, j) = m.at(i, j) + p;
    return m;
}

LaurentMat random_unit(std::mt19937& rng, int n, int factors) {
    std::uniform_int_distribution<int> deg(-2, 2), coef(-3, 3), pick(0, n - 1), kind(0, 2);
    LaurentMat m = LaurentMat::identity(n);
    for (int f = 0; f < factors; ++f) {
        int k = kind(rng);
        if (k == 0 && n > 1) {
            int i = pick(rng), j = pick(rng);
            if (i == j) j = (j + 1) % n;
            m = lp_mul(m, elementary(n, i, j, mono(deg(rng), coef(rng))));
        } else if (k == 1) {
            std::vector<LaurentPoly> d;
            for (int i = 0; i < n; ++i) {
                int c = coef(rng);
                d.push_back(mono(deg(rng), c == 0 ? 1 : c));
            }
            m = lp_mul(m, LaurentMat::diag(d));
        } else {
            // constant shear
            int i = pick(rng), j = pick(rng);
            if (n == 1) continue;
            if (i == j) j = (j + 1) % n;
            m = lp_mul(m, elementary(n, i, j, mono(0, coef(rng))));
        }
    }
    return m;
}

} // namespace

TEST_CASE("lp_mul basics") {
    LaurentMat a(2);
    a.at(0, 0) = mono(0, 1);
    a.at(0, 1) = mono(1, 1);
    a.at(1, 1) = mono(0, 1);
    CHECK(lp_mul(LaurentMat::identity(2), a) == a);

    LaurentMat t1 = LaurentMat::diag({mono(1, 1)});
    LaurentMat tm1 = LaurentMat::diag({mono(-1, 1)});
    CHECK(lp_mul(t1, tm1).is_identity());

    LaurentMat b(2);
    b.at(0, 0) = mono(0, 1);
    b.at(0, 1) = mono(1, -1);
    b.at(1, 1) = mono(0, 1);
    CHECK(lp_mul(a, b).is_identity());
    CHECK(lp_mul(a, b).bandwidth() <= a.bandwidth() + b.bandwidth());
}

TEST_CASE("lp_inverse on units") {
    LaurentMat d = LaurentMat::diag({mono(1, 1), mono(0, 1)});
    LaurentMat dinv = lp_inverse(d);
    CHECK(dinv == LaurentMat::diag({mono(-1, 1), mono(0, 1)}));

    LaurentMat u = elementary(2, 0, 1, mono(-1, 2));
    CHECK(lp_inverse(u) == elementary(2, 0, 1, mono(-1, -2)));

    // det = 1 but not triangular
    LaurentMat m(2);
    m.at(0, 0) = mono(0, 1);
    m.at(0, 1) = mono(1, 1);
    m.at(1, 0) = mono(0, 1);
    m.at(1, 1) = mono(0, 1) + mono(1, 1);
    CHECK(lp_det(m) == mono(0, 1));
    LaurentMat minv = lp_inverse(m);
    LaurentMat expect(2);
    expect.at(0, 0) = mono(0, 1) + mono(1, 1);
    expect.at(0, 1) = mono(1, -1);
    expect.at(1, 0) = mono(0, -1);
    expect.at(1, 1) = mono(0, 1);
    CHECK(minv == expect);
    CHECK(lp_mul(m, minv).is_identity());
    CHECK(lp_mul(minv, m).is_identity());
}

TEST_CASE("lp_inverse rejects non-units") {
    LaurentMat m = LaurentMat::diag({mono(0, 1) + mono(1, 1)});
    CHECK_THROWS_AS(lp_inverse(m), NotAUnit);
    LaurentMat z = LaurentMat::diag({LaurentPoly()});
    CHECK_THROWS_AS(lp_inverse(z), NotAUnit);
}

TEST_CASE("lp_inverse is two-sided on random unit products") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + trial % 3;
        LaurentMat m = random_unit(rng, n, 4);
        LaurentMat inv = lp_inverse(m);
        CHECK(lp_mul(m, inv).is_identity());
        CHECK(lp_mul(inv, m).is_identity());
    }
}

TEST_CASE("substitute") {
    Context ctx(1, Rat(2));
    LaurentMat t = LaurentMat::diag({mono(1, 1)});
    CHECK(substitute(t, ctx, SubstMode::q_inv_t) == LaurentMat::diag({mono(1, 1, 2)}));
    CHECK(substitute(t, ctx, SubstMode::q_inv_t_inv) == LaurentMat::diag({mono(-1, 1, 2)}));

    LaurentMat c = LaurentMat::diag({mono(0, 7, 3)});
    CHECK(substitute(c, ctx, SubstMode::q_inv_t) == c);
    CHECK(substitute(c, ctx, SubstMode::q_inv_t_inv) == c);
}

TEST_CASE("substitute is a ring homomorphism") {
    std::mt19937 rng(777);
    Context ctx(2, Rat(3, 2));
    for (int trial = 0; trial < 20; ++trial) {
        LaurentMat a = random_unit(rng, 2, 3), b = random_unit(rng, 2, 3);
        for (SubstMode mode : {SubstMode::q_inv_t, SubstMode::q_inv_t_inv})
            CHECK(substitute(lp_mul(a, b), ctx, mode) ==
                  lp_mul(substitute(a, ctx, mode), substitute(b, ctx, mode)));
    }
}

TEST_CASE("is_in_K") {
    Context ctx(1, Rat(2));
    CHECK(is_in_K(LaurentMat::diag({mono(1, 2)}), ctx));  // 2t, c = q^k with k = 1
    CHECK(!is_in_K(LaurentMat::diag({mono(1, 1)}), ctx)); // t alone fails

    // constant rotation by the rational point (3/5, 4/5)
    Context ctx2(2, Rat(2));
    LaurentMat rot(2);
    rot.at(0, 0) = mono(0, 3, 5);
    rot.at(0, 1) = mono(0, -4, 5);
    rot.at(1, 0) = mono(0, 4, 5);
    rot.at(1, 1) = mono(0, 3, 5);
    CHECK(is_in_K(rot, ctx2));

    // constant non-orthogonal matrix fails
    LaurentMat sh(2);
    sh.at(0, 0) = mono(0, 1);
    sh.at(0, 1) = mono(0, 1);
    sh.at(1, 1) = mono(0, 1);
    CHECK(!is_in_K(sh, ctx2));
}

TEST_CASE("evaluate at q^{-1} circle") {
    Context ctx(1, Rat(2));
    auto id = evaluate(LaurentMat::identity(1), ctx, Real(0));
    CHECK(abs(id[0][0] - Cplx(1)) < Real("1e-40"));

    auto v = evaluate(LaurentMat::diag({mono(1, 2)}), ctx, Real(0));
    CHECK(abs(v[0][0] - Cplx(1)) < Real("1e-40"));
}

TEST_CASE("K elements evaluate to unitary matrices") {
    Context ctx(2, Rat(2));
    LaurentMat rot(2);
    rot.at(0, 0) = mono(0, 3, 5);
    rot.at(0, 1) = mono(0, -4, 5);
    rot.at(1, 0) = mono(0, 4, 5);
    rot.at(1, 1) = mono(0, 3, 5);
    // a nonconstant K element: diag(q t, (q t)^{-1}) with q = 2
    Context ctx1(2, Rat(2));
    LaurentMat k2 = LaurentMat::diag({mono(1, 2), mono(-1, 1, 2)});
    REQUIRE(is_in_K(k2, ctx1));
    for (const LaurentMat& k : {rot, k2}) {
        for (int s = 0; s < 16; ++s) {
            Real theta = 2 * pi_real() * Real(s) / 16;
            auto u = evaluate(k, ctx, theta);
            int n = int(u.size());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Cplx dot(0);
                    for (int l = 0; l < n; ++l) dot += u[l][i] * conj(u[l][j]);
                    CHECK(abs(dot - (i == j ? Cplx(1) : Cplx(0))) < Real("1e-12"));
                }
        }
    }
}

TEST_CASE("is_symplectic") {
    // d(g) = diag(g^{-T}, g) is symplectic for any unit g
    std::mt19937 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        LaurentMat g = random_unit(rng, 2, 3);
        LaurentMat ginvT = lp_inverse(g).transposed();
        LaurentMat d(4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                d.at(i, j) = ginvT.at(i, j);
                d.at(2 + i, 2 + j) = g.at(i, j);
            }
        CHECK(is_symplectic(d));
    }
    CHECK(!is_symplectic(LaurentMat::diag({mono(0, 2), mono(0, 2)})));
}
