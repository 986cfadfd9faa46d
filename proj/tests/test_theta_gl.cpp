#include <doctest.h>

#include <looptheta/theta_gl.hpp>

#include <random>

using namespace looptheta;

namespace {

LaurentPoly mono(int deg, long num, long den = 1) {
    return LaurentPoly::monomial(deg, Rat(num, den));
}

// independent oracle for the identity-element theta limit:
// S(1) * prod_{i>=1} S(q^{2i})^2, by direct one-dimensional summation
Real theta_product_oracle(const Rat& q) {
    Real eps("1e-40");
    Real v = gaussian_sum_1d(Real(1), eps).value;
    for (int i = 1;; ++i) {
        Real x = to_real(q_pow(q, 2L * i));
        if (x > 60) break;
        Real s = gaussian_sum_1d(x, eps).value;
        v *= s * s;
    }
    return v;
}

} // namespace

TEST_CASE("gaussian_sum_1d") {
    Real eps("1e-30");
    // dominant-term regime
    GaussianSum s16 = gaussian_sum_1d(Real(16), eps);
    CHECK(abs(s16.value - 1 - 2 * exp(-16 * pi_real())) < Real("1e-35"));
    // direct summation value
    GaussianSum s1 = gaussian_sum_1d(Real(1), Real("1e-10"));
    CHECK(abs(s1.value - Real("1.0864348112133080145753161215102234570702057072452")) <
          Real("1e-6"));
    // Poisson pair S(1/4) = 2 S(4)
    GaussianSum a = gaussian_sum_1d(Real(1) / 4, eps);
    GaussianSum b = gaussian_sum_1d(Real(4), eps);
    CHECK(abs(a.value - 2 * b.value) < Real("1e-25"));
    CHECK(abs(a.value - Real("2.0000139")) < Real("1e-6"));
    // certificate honesty: refining eps moves the value less than the tail
    GaussianSum rough = gaussian_sum_1d(Real(1), Real("1e-6"));
    GaussianSum fine = gaussian_sum_1d(Real(1), Real("1e-30"));
    CHECK(abs(rough.value - fine.value) <= rough.tail);
}

TEST_CASE("poisson residuals over the acceptance grid") {
    for (Rat q : {Rat(2), Rat(3, 2)}) {
        Context ctx(1, q);
        for (Rat a : {Rat(1, 2), Rat(1), Rat(2)})
            for (int i = -3; i <= 3; ++i) CHECK(poisson_check(a, ctx, i) < Real("1e-12"));
    }
    // shifted variant
    CHECK(poisson_check_shifted(Real(1), Real(1) / 2) < Real("1e-12"));
    CHECK(poisson_check_shifted(Real(2), Real("0.3")) < Real("1e-12"));
    CHECK(poisson_check_shifted(Real(1) / 3, Real("0.7")) < Real("1e-12"));
}

TEST_CASE("partial_theta identity metric products") {
    Context ctx(1, Rat(2));
    MetricOperator id = MetricOperator::identity_metric(ctx);
    CovolumeTheoryGL c{GradedLattice::base(1, 0), Real(1), id};
    TripleGL triple{id, c};

    ThetaResult t0 = partial_theta(triple, GradedLattice::base(1, 0), Real("1e-8"));
    CHECK(abs(t0.value - Real("1.0864424")) < Real("1e-6"));

    ThetaResult t1 = partial_theta(triple, GradedLattice::base(1, 1), Real("1e-8"));
    CHECK(abs(t1.value - Real("1.0864500")) < Real("1e-6"));

    // certificate honesty under refinement
    ThetaResult r = partial_theta(triple, GradedLattice::base(1, 2), Real("1e-6"));
    ThetaResult f = partial_theta(triple, GradedLattice::base(1, 2), Real("1e-7") / 10);
    CHECK(abs(r.value - f.value) <= r.tail_bound);
}

TEST_CASE("partial_theta degenerate direction") {
    // huge weights: only v = 0 survives, value ~ c(L)
    Context ctx(1, Rat(2));
    MetricOperator m =
        MetricOperator::from_matrix(ctx, LaurentMat::diag({mono(0, 1, 1000)}));
    CovolumeTheoryGL c{GradedLattice::base(1, 0), Real(1), m};
    ThetaResult t = partial_theta({m, c}, GradedLattice::base(1, 0), Real("1e-8"));
    Real cl = covolume_theory_value(c, GradedLattice::base(1, 0));
    CHECK(abs(t.value - cl) / cl < Real("1e-3"));
}

TEST_CASE("theta stabilizes to the product oracle") {
    Context ctx(1, Rat(2));
    ThetaResult t = theta_of_element({LaurentMat::identity(1), Rat(1)}, ctx, Real("1e-6"), 6);
    CHECK(t.stabilized);
    CHECK(t.table.back().d <= 3);
    Real oracle = theta_product_oracle(Rat(2));
    CHECK(abs(t.value - oracle) < Real("1e-4"));
    CHECK(abs(t.value - Real("1.08645")) < Real("1e-4"));

    // (com): the comparison ratio trends to 1
    REQUIRE(t.table.size() >= 3);
    Real r1 = abs(t.table[1].ratio_comparison - 1);
    Real r2 = abs(t.table[2].ratio_comparison - 1);
    CHECK(r2 < r1);
}

TEST_CASE("theta for constant diagonal computed two ways") {
    Context ctx(1, Rat(2));
    ThetaResult direct = theta_raw(LaurentMat::diag({mono(0, 2)}), ctx, Real(1), Real("1e-7"), 6);
    // direct product: theta_d = c(L^d) sum = prod_j S-terms; rescaled oracle:
    // metric 2 means weights q^{-2i}/4; covolume c(L^d) = 2^d q^{-d(d+1)/2}
    Real eps("1e-40");
    int d = direct.table.back().d;
    Real expect = to_real(q_pow(Rat(2), -long(d) * (d + 1) / 2)) * pow(Real(2), -d);
    Real prod = 1;
    for (int i = -40; i <= d; ++i) {
        Real x = to_real(q_pow(Rat(2), -2L * i)) / 4;
        if (x > 60) continue;
        prod *= gaussian_sum_1d(x, eps).value;
    }
    expect *= prod;
    CHECK(abs(direct.value - expect) < Real("1e-6"));
}

TEST_CASE("reduction inequality (red)") {
    Context ctx(2, Rat(2));
    LaurentMat u = LaurentMat::identity(2);
    u.at(0, 1) = mono(-1, 1);

    // u = identity: equality
    RedCheck eq = reduction_inequality_check(LaurentMat::identity(2), LaurentMat::identity(2), 2,
                                             ctx, Real("1e-8"));
    CHECK(eq.holds);
    CHECK(abs(eq.margin) <= eq.slack);

    RedCheck r1 = reduction_inequality_check(LaurentMat::identity(2), u, 2, ctx, Real("1e-8"));
    CHECK(r1.holds);
    CHECK(r1.margin > 0);

    LaurentMat a = LaurentMat::diag({mono(0, 1, 2), mono(0, 2)});
    RedCheck r2 = reduction_inequality_check(a, u, 2, ctx, Real("1e-8"));
    CHECK(r2.holds);
}

TEST_CASE("blockwise unipotent inequality") {
    BlockwiseCheck id = blockwise_unipotent_check({1, 1}, {{1, 0}, {0, 1}}, {1, 1}, 8);
    CHECK(id.holds);
    CHECK(std::abs(id.lhs - id.rhs) <= id.slack);

    BlockwiseCheck c = blockwise_unipotent_check({1, 1}, {{1, 0}, {0.7, 1}}, {1, 1}, 8);
    CHECK(c.holds);
    CHECK(c.lhs <= c.rhs);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), sc(0.5, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> dims = {2, 2, 2};
        int m = 6;
        std::vector<std::vector<double>> U(size_t(m), std::vector<double>(size_t(m), 0.0));
        for (int i = 0; i < m; ++i) U[size_t(i)][size_t(i)] = 1.0;
        for (int bi = 1; bi < 3; ++bi)
            for (int i = 2 * bi; i < 2 * bi + 2; ++i)
                for (int j = 0; j < 2 * bi; ++j) U[size_t(i)][size_t(j)] = coef(rng);
        std::vector<double> scales(static_cast<size_t>(m));
        for (auto& s : scales) s = sc(rng);
        BlockwiseCheck bc = blockwise_unipotent_check(dims, U, scales, 5);
        CHECK(bc.holds);
    }
}

TEST_CASE("upper bound (bound) for diagonal metrics") {
    Context ctx(1, Rat(2));
    UpperBoundCheck u1 = upper_bound_check({Rat(1)}, Real(1), 2, ctx, Real("1e-8"));
    CHECK(u1.holds);
    CHECK(abs(u1.theta_d - Real("1.08645")) < Real("1e-3"));
    CHECK(abs(u1.bound - u1.theta_d) < Real("1e-3")); // tight for diagonal

    UpperBoundCheck u2 = upper_bound_check({Rat(2)}, Real(1), 3, ctx, Real("1e-8"));
    CHECK(u2.holds);

    UpperBoundCheck u3 = upper_bound_check({Rat(2)}, Real(2), 3, ctx, Real("1e-8"));
    CHECK(abs(u3.bound - 2 * u2.bound) < Real("1e-20"));
    CHECK(abs(u3.theta_d - 2 * u2.theta_d) < Real("1e-20"));
}

TEST_CASE("automorphy of theta") {
    Context ctx(1, Rat(2));
    ExtendedElement e{LaurentMat::identity(1), Rat(1)};
    std::vector<LaurentMat> gammas = {LaurentMat::identity(1), LaurentMat::diag({mono(1, 1)})};
    std::vector<LaurentMat> ks = {LaurentMat::diag({mono(1, 2)})}; // qt
    AutomorphyReport rep = automorphy_suite(e, gammas, ks, ctx, Real("1e-7"), 6);
    REQUIRE(rep.left.size() == 2);
    CHECK(rep.left[0].deviation < Real("1e-12")); // identity gamma
    CHECK(rep.left[1].deviation < Real("1e-6") + rep.left[1].tails);
    REQUIRE(rep.right.size() == 1);
    CHECK(rep.right[0].deviation < Real("1e-6") + rep.right[0].tails);
}

TEST_CASE("siegel scan over a small box") {
    Context ctx(2, Rat(2));
    SiegelBox box;
    box.c_lo = Rat(1, 2);
    box.c_hi = Rat(2);
    box.a_ranges = {{Rat(1, 2), Rat(2)}, {Rat(1, 2), Rat(2)}};
    box.u_coeff_bound = Rat(2);
    box.delta_u_max = 1;
    box.sample_count = 5;
    SiegelScanReport rep = siegel_scan(box, ctx, Real("1e-5"), 6, 4242);
    CHECK(rep.all_stabilized);
    CHECK(rep.max_stabilization_d <= 6);
    CHECK(int(rep.samples.size()) == 5);
}
