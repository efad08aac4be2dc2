#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "seqgeo/operators.hpp"
#include "seqgeo/verify.hpp"

using namespace seqgeo;

TEST_CASE("apply_op basic kinds", "[operators]") {
    CHECK(FinOperator::P(2).apply(make_vec({1, 2, 3}, 0)) == make_vec({1, 2}, 0));
    // limit projection maps z = (0,1,1,...) to the constant-one vector
    const SeqVec z = make_vec({0, 1}, 1.0);
    CHECK(FinOperator::limP().apply(z) == make_vec({}, 1.0));
    CHECK(FinOperator::R(1).apply(unit_vec(1)).is_zero());
    // P_n applied to a c vector materializes the tail
    CHECK(FinOperator::P(3).apply(make_vec({}, 1.0)) == make_vec({1, 1, 1}, 0));
    // R_n keeps the tail: R_1 z = z for z = (0,1,1,...)
    CHECK(FinOperator::R(1).apply(make_vec({0, 1}, 1.0)) == make_vec({0, 1}, 1.0));
    // rank-one
    const FinOperator pr = FinOperator::rank1(FinFunctional::coordinate(2), unit_vec(1));
    CHECK(pr.apply(make_vec({5, 7}, 0)) == 7.0 * unit_vec(1));
}

TEST_CASE("projection algebra is exact", "[operators]") {
    Rng rng(201);
    for (int trial = 0; trial < 60; ++trial) {
        const SeqVec x = verify_detail::random_c0(rng, 10, 8, -2, 2);
        const int n = rng.uniform_int(0, 8);
        const int m = rng.uniform_int(0, 8);
        const SeqVec pn = FinOperator::P(n).apply(x);
        const SeqVec rn = FinOperator::R(n).apply(x);
        CHECK(pn + rn == x);
        CHECK(FinOperator::P(n).apply(FinOperator::P(m).apply(x)) ==
              FinOperator::P(std::min(n, m)).apply(x));
        CHECK(FinOperator::P(n).apply(rn).is_zero());
    }
    // identity via R(0)
    const SeqVec w = make_vec({1, -2, 3}, 0);
    CHECK(FinOperator::identity().apply(w) == w);

    // composition and linear combinations
    const FinOperator c = FinOperator::compose(FinOperator::P(2), FinOperator::R(1));
    CHECK(c.apply(make_vec({1, 2, 3}, 0)) == make_vec({0, 2}, 0));
    const FinOperator l = FinOperator::lin(2.0, FinOperator::P(1), -1.0, FinOperator::R(1));
    CHECK(l.apply(make_vec({1, 2}, 0)) == make_vec({2, -2}, 0));
}

TEST_CASE("lambda domain checks", "[operators]") {
    SearchBudget b;
    b.restarts = 2;
    b.iters = 10;
    const ConvexBody ball3{mlur3_oracle()};
    const SeqVec x = (1.0 / mlur_gauge(unit_vec(1))) * unit_vec(1);
    CHECK_THROWS_AS(cond29_sup(FinOperator::P(1), x, 0.0, 0.1, sup_oracle(), sup_oracle(), b),
                    std::invalid_argument);
    CHECK_THROWS_AS(cond29_sup(FinOperator::P(1), x, 1.5, 0.1, sup_oracle(), sup_oracle(), b),
                    std::invalid_argument);
    CHECK_THROWS_AS(thm_fn_estimate(FinOperator::P(1), ball3, x, 0.0, 0.1, b),
                    std::invalid_argument);
    CHECK_THROWS_AS(lur_renorm(LurRenormConfig{}, make_vec({}, 1.0)), std::domain_error);
}

TEST_CASE("op_gauge_norm of the identity is 1 for every gauge", "[operators]") {
    SearchBudget b;
    b.restarts = 6;
    b.iters = 80;
    for (const NormOracle& g : {sup_oracle(), spread_oracle(), q_oracle(), nonsym_oracle(),
                                mlur3_oracle(), lur_oracle()}) {
        const OpNormEst est = op_gauge_norm(FinOperator::identity(), g, b);
        CHECK(est.estimate >= 1.0 - 1e-12);
        CHECK(est.estimate <= 1.0 + 1e-9);
    }
    const OpNormEst twice =
        op_gauge_norm(FinOperator::lin(2.0, FinOperator::identity(), 0.0, FinOperator::identity()),
                      sup_oracle(), b);
    CHECK(twice.estimate >= 2.0 - 1e-12);
}

TEST_CASE("projection flip exceeds 1 under the series renorm", "[operators]") {
    SearchBudget b;
    b.restarts = 8;
    b.iters = 150;
    const int k = 5;
    const FinOperator T = FinOperator::lin(1.0, FinOperator::P(k), -1.0, FinOperator::R(k));
    std::vector<double> ones(k + 1, 1.0);
    const OpNormEst est = op_gauge_norm(T, lur_oracle(), b, {SeqVec(ones, 0.0)});
    CHECK(est.estimate > 1.0);
}

TEST_CASE("ukap defect values", "[operators]") {
    SearchBudget b;
    b.restarts = 10;
    b.iters = 200;
    const NormOracle sup = sup_oracle();
    for (int n : {1, 4, 16})
        CHECK(std::abs(ukap_defect(FinOperator::P(n), sup, b) - 1.0) <= 1e-9);
    CHECK(std::abs(ukap_defect(FinOperator::P(0), sup, b) - 1.0) <= 1e-9);  // T = 0
    CHECK(std::abs(ukap_defect(FinOperator::identity(), sup, b) - 1.0) <= 1e-9);  // T = I
}

TEST_CASE("cond29 reduces to the ball with a free constraint", "[operators]") {
    SearchBudget b;
    b.restarts = 8;
    b.iters = 120;
    const Cond29Result r = cond29_sup(FinOperator::identity(), 0.5 * unit_vec(1), 1.0, 10.0,
                                      sup_oracle(), sup_oracle(), b);
    CHECK(std::abs(r.estimate - 1.0) <= 1e-6);
}

TEST_CASE("cond29 on c reproduces the limit-projection lower bound", "[operators]") {
    SearchBudget b;
    b.restarts = 8;
    b.iters = 120;
    const SeqVec e = make_vec({}, 1.0);
    const SeqVec z = make_vec({0, 1}, 1.0);
    const FinOperator P = FinOperator::limP();
    for (double lambda : {0.25, 0.5, 1.0}) {
        // the witness z is feasible at every eps and evaluates exactly
        const SeqVec img = (1.0 + lambda) * P.apply(z) - lambda * z;
        CHECK(sup_norm(img) == 1.0 + lambda);
        CHECK(sup_norm(P.apply(e - z)) == 0.0);
        const Cond29Result r = cond29_sup(P, e, lambda, 1e-6, sup_oracle(), sup_oracle(), b);
        CHECK(r.estimate >= 1.0 + lambda - 1e-9);
    }
}

TEST_CASE("thm_fn_estimate brackets", "[operators]") {
    SearchBudget b;
    b.restarts = 8;
    b.iters = 120;

    // Phi = I: (1+l)y - ly = y stays in the body, so the sup is 0
    const ConvexBody ball3{mlur3_oracle()};
    const SeqVec x1 = (1.0 / mlur_gauge(unit_vec(1))) * unit_vec(1);
    const FnBracket id = thm_fn_estimate(FinOperator::identity(), ball3, x1, 0.5, 0.1, b);
    CHECK(id.lower <= 1e-9);  // exactly 0 up to the feasibility slack
    CHECK(id.upper <= 1e-9);

    // sup ball with x supported inside P_m: y = x gives distance 0, and no
    // feasible y can leave the ball under the flip
    const ConvexBody sball{sup_oracle()};
    const FnBracket flat =
        thm_fn_estimate(FinOperator::P(4), sball, unit_vec(2), 1.0, 0.05, b);
    CHECK(flat.upper <= 1e-9);

    // the mlur3 body: fresh negative spikes keep the flip distance away from 0
    const FnBracket neg = thm_fn_estimate(FinOperator::P(4), ball3, x1, 1.0, 1e-3, b);
    CHECK(neg.lower >= 0.05);
    CHECK(neg.upper >= neg.lower - 1e-12);
    // the image witness re-evaluates: certified lower = (gauge-1)/c2
    const double g = mlur_gauge(neg.image);
    CHECK(std::abs(neg.lower - (g - 1.0) / 3.0) <= 1e-12);
}

TEST_CASE("remark_f_curve: weighted-l2 norming pair has f(0) = 1", "[operators]") {
    SearchBudget b;
    b.restarts = 6;
    b.iters = 100;
    const SeqVec e = std::sqrt(2.0) * unit_vec(1);  // q(e) = 1
    const FinFunctional estar(std::vector<double>{1.0 / std::sqrt(2.0)});
    const FinOperator P = FinOperator::rank1(estar, e);
    const auto curve = remark_f_curve(P, e, q_oracle(), {0.0, 0.01, 0.1}, b);
    REQUIRE(curve.size() == 3);
    CHECK(std::abs(curve[0].second - 1.0) <= 1e-9);
    CHECK(curve[1].second >= curve[0].second - 1e-12);  // monotone in eps
    CHECK(curve[2].second >= curve[1].second - 1e-12);

    // e*(e) != 1 is rejected
    CHECK_THROWS_AS(remark_f_curve(FinOperator::rank1(estar, unit_vec(1)), unit_vec(1),
                                   q_oracle(), {0.0}, b),
                    std::invalid_argument);
}

TEST_CASE("remark_f_curve: mlur3 norming pair jumps above 1 for eps > 0", "[operators]") {
    SearchBudget b;
    b.restarts = 10;
    b.iters = 150;
    const double t = 1.0 / std::sqrt(1.5);
    const SeqVec e = t * unit_vec(1);  // |||e||| = 1
    const FinFunctional estar(std::vector<double>{std::sqrt(1.5)});  // e*(e) = 1, dual norm 1
    const FinOperator P = FinOperator::rank1(estar, e);
    const auto curve = remark_f_curve(P, e, mlur3_oracle(), {0.0, 1e-3}, b);
    CHECK(std::abs(curve[0].second - 1.0) <= 1e-9);
    CHECK(curve[1].second >= 1.2);  // discontinuity at 0
}

TEST_CASE("searches are deterministic for fixed budgets", "[operators]") {
    SearchBudget b;
    b.restarts = 6;
    b.iters = 80;
    b.seed = 99;
    const FinOperator T = FinOperator::lin(1.0, FinOperator::P(3), -0.7, FinOperator::R(3));
    const OpNormEst a = op_gauge_norm(T, lur_oracle(), b);
    const OpNormEst c = op_gauge_norm(T, lur_oracle(), b);
    CHECK(a.estimate == c.estimate);
    CHECK(a.lower_witness == c.lower_witness);
}
