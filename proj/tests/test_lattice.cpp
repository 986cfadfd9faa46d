#include <doctest.h>

#include <looptheta/lattice.hpp>

using namespace looptheta;

namespace {

Real q_pow_real(const Rat& q, long k) { return to_real(q_pow(q, k)); }

LaurentMat shear_t_inv(const Rat& c) {
    LaurentMat u = LaurentMat::identity(2);
    u.at(0, 1) = LaurentPoly::monomial(-1, c);
    return u;
}

} // namespace

TEST_CASE("quotient_basis") {
    GradedLattice l0 = GradedLattice::base(1, 0);
    GradedLattice l1 = GradedLattice::base(1, 1);
    QuotientBasis qb = quotient_basis(l0, l1);
    REQUIRE(qb.reps.size() == 1);
    CHECK(qb.reps[0] == LaurentVec::basis(1, 0, 1));
    CHECK(qb.torsion == 1);

    CHECK(quotient_basis(l0, l0).reps.empty());

    GradedLattice lte1 = GradedLattice::base(2, 0).with_extra(LaurentVec::basis(2, 0, 1));
    QuotientBasis qb2 = quotient_basis(GradedLattice::base(2, 0), lte1);
    REQUIRE(qb2.reps.size() == 1);
    CHECK(qb2.reps[0] == LaurentVec::basis(2, 0, 1));

    CHECK_THROWS_AS(quotient_basis(l1, l0), NotNested);
}

TEST_CASE("torsion quotients") {
    LaurentVec t = LaurentVec::basis(1, 0, 1);
    GradedLattice sub = GradedLattice::base(1, 0).with_extra(t.scaled(Rat(2)));
    GradedLattice sup = GradedLattice::base(1, 0).with_extra(t);
    QuotientBasis qb = quotient_basis(sub, sup);
    CHECK(qb.reps.empty());
    CHECK(qb.torsion == 2);

    Context ctx(1, Rat(2));
    MetricOperator id = MetricOperator::identity_metric(ctx);
    CHECK(abs(covolume(sub, sup, id) - Real(Rat(1, 2))) < Real("1e-30"));
}

TEST_CASE("lattice membership") {
    GradedLattice l = GradedLattice::base(2, 0).with_extra(LaurentVec::basis(2, 0, 1));
    CHECK(lattice_contains(l, LaurentVec::basis(2, 0, 1)));
    CHECK(lattice_contains(l, LaurentVec::basis(2, 1, 0)));
    CHECK(!lattice_contains(l, LaurentVec::basis(2, 1, 1)));
    CHECK(lattice_nested(GradedLattice::base(2, 0), l));
    CHECK(!lattice_nested(l, GradedLattice::base(2, 0)));
}

TEST_CASE("project_perp diagonal metric") {
    Context ctx(1, Rat(2));
    MetricOperator id = MetricOperator::identity_metric(ctx);
    LaurentVec t = LaurentVec::basis(1, 0, 1);
    Projection p = project_perp(t, RealSpan::of(GradedLattice::base(1, 0)), id, Real("1e-30"));
    CHECK(p.stabilized);
    CHECK(abs(p.norm2 - Real(Rat(1, 4))) < Real("1e-40"));
    CHECK(abs(p.coeffs.at({1, 0}) - 1) < Real("1e-40"));

    // v inside the span projects to zero
    LaurentVec v = LaurentVec::basis(1, 0, 0) + LaurentVec::basis(1, 0, -2).scaled(Rat(3));
    Projection pz = project_perp(v, RealSpan::of(GradedLattice::base(1, 0)), id, Real("1e-30"));
    CHECK(abs(pz.norm2) < Real("1e-40"));
}

TEST_CASE("project_perp matches the unipotent closed form") {
    // metric au with a = 1, u = [[1, t^-1],[0,1]]: v_perp = a u pi_1 (u^-1 a^-1 v)
    Context ctx(2, Rat(2));
    MetricOperator m = MetricOperator::from_matrix(ctx, shear_t_inv(Rat(1)));
    LaurentVec v(2);
    v.c[1] = LaurentPoly::monomial(1, Rat(1)); // t e2
    Projection p = project_perp(v, RealSpan::of(GradedLattice::base(2, 0)), m, Real("1e-30"));
    // u^-1 v = (-1, t); pi_1 keeps degrees >= 1: (0, t); v_perp = u (0,t) = (1, t)
    CHECK(abs(p.coeffs.at({0, 0}) - 1) < Real("1e-25"));
    CHECK(abs(p.coeffs.at({1, 1}) - 1) < Real("1e-25"));
    CHECK(abs(p.norm2 - Real(Rat(1, 4))) < Real("1e-25"));
}

TEST_CASE("covolume of monomial towers") {
    Context ctx(1, Rat(2));
    MetricOperator id = MetricOperator::identity_metric(ctx);
    GradedLattice l0 = GradedLattice::base(1, 0);
    CHECK(abs(covolume(l0, GradedLattice::base(1, 1), id) - Real(Rat(1, 2))) < Real("1e-30"));
    for (int d = 1; d <= 3; ++d) {
        Real expect = q_pow_real(ctx.q, -long(d) * (d + 1) / 2);
        CHECK(abs(covolume(l0, GradedLattice::base(1, d), id) - expect) < Real("1e-30"));
    }
    CHECK(abs(covolume(l0, l0, id) - 1) < Real("1e-40"));
}

TEST_CASE("relative covolume cocycle and independence") {
    Context ctx(1, Rat(2));
    MetricOperator id = MetricOperator::identity_metric(ctx);
    GradedLattice l0 = GradedLattice::base(1, 0);
    GradedLattice l1 = GradedLattice::base(1, 1);
    GradedLattice l2 = GradedLattice::base(1, 2);

    CHECK(abs(relative_covolume(id, l0, l1) - covolume(l0, l1, id)) < Real("1e-30"));
    Real ab = relative_covolume(id, l0, l1) * relative_covolume(id, l1, l2);
    CHECK(abs(ab - relative_covolume(id, l0, l2)) < Real("1e-28"));
    CHECK(abs(relative_covolume(id, l1, l0) * relative_covolume(id, l0, l1) - 1) < Real("1e-28"));

    // independence of the common sublattice
    Real v1 = relative_covolume_via(id, l0, l2, 0);
    Real v2 = relative_covolume_via(id, l0, l2, -2);
    Real v3 = relative_covolume_via(id, l0, l2, -4);
    CHECK(abs(v1 - v2) < Real("1e-10"));
    CHECK(abs(v2 - v3) < Real("1e-10"));
}

TEST_CASE("reduction equality of covolumes (redcov)") {
    Context ctx(2, Rat(2));
    for (Rat c : {Rat(1), Rat(3)}) {
        for (auto [a1, a2] : {std::pair{Rat(1), Rat(1)}, {Rat(1, 2), Rat(2)}}) {
            LaurentMat a = LaurentMat::diag(
                {LaurentPoly::constant(a1), LaurentPoly::constant(a2)});
            MetricOperator ma = MetricOperator::from_matrix(ctx, a);
            MetricOperator mau = MetricOperator::from_matrix(ctx, lp_mul(a, shear_t_inv(c)));
            for (int d = 1; d <= 2; ++d) {
                GradedLattice lo = GradedLattice::base(2, -1);
                GradedLattice hi = GradedLattice::base(2, d);
                Real ca = covolume(lo, hi, ma);
                Real cau = covolume(lo, hi, mau);
                CHECK(abs(ca - cau) < Real("1e-10"));
            }
        }
    }
}

TEST_CASE("covolume theory") {
    Context ctx(1, Rat(2));
    MetricOperator id = MetricOperator::identity_metric(ctx);
    CovolumeTheoryGL c{GradedLattice::base(1, 0), Real(1), id};
    CHECK(abs(covolume_theory_value(c, c.base) - 1) < Real("1e-40"));
    for (int d = 0; d <= 3; ++d) {
        Real expect = q_pow_real(ctx.q, -long(d) * (d + 1) / 2);
        CHECK(abs(covolume_theory_value(c, GradedLattice::base(1, d)) - expect) < Real("1e-28"));
    }
    CovolumeTheoryGL c3{GradedLattice::base(1, 0), Real(3), id};
    CHECK(abs(covolume_theory_value(c3, GradedLattice::base(1, 2)) -
              3 * covolume_theory_value(c, GradedLattice::base(1, 2))) < Real("1e-28"));
}

TEST_CASE("dimension theory") {
    DimensionTheory D{0};
    CHECK(dimension_theory_value(D, GradedLattice::base(1, 0)) == 0);
    for (int n : {1, 2})
        for (int d = -2; d <= 3; ++d)
            CHECK(dimension_theory_value(D, GradedLattice::base(n, d)) == long(n) * d);
    GradedLattice le = GradedLattice::base(2, 0).with_extra(LaurentVec::basis(2, 0, 1));
    CHECK(dimension_theory_value(DimensionTheory{5}, le) == 6);
}

TEST_CASE("image lattice under integral units") {
    LaurentMat gamma = LaurentMat::identity(2);
    gamma.at(0, 1) = LaurentPoly::monomial(1, Rat(1));
    GradedLattice img = image_lattice(gamma, GradedLattice::base(2, 0));
    // gamma L^0 contains e1, e2 + t e1 and everything deeper
    CHECK(lattice_contains(img, LaurentVec::basis(2, 0, 0)));
    LaurentVec mixed = LaurentVec::basis(2, 1, 0) + LaurentVec::basis(2, 0, 1);
    CHECK(lattice_contains(img, mixed));
    CHECK(!lattice_contains(img, LaurentVec::basis(2, 0, 1)));

    // identity and monomial diag
    GradedLattice same = image_lattice(LaurentMat::identity(2), GradedLattice::base(2, 0));
    CHECK(lattice_nested(same, GradedLattice::base(2, 0)));
    CHECK(lattice_nested(GradedLattice::base(2, 0), same));
}
