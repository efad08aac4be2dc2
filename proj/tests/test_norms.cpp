#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "seqgeo/norms.hpp"
#include "seqgeo/operators.hpp"
#include "seqgeo/verify.hpp"

using namespace seqgeo;

namespace {

SeqVec rand_vec(Rng& rng, int max_index, int max_support) {
    return verify_detail::random_c0(rng, max_index, max_support, -2.0, 2.0);
}

}  // namespace

TEST_CASE("eval_Q hand values", "[norms]") {
    CHECK(eval_Q(unit_vec(1), IndexSeq{{1}}) == 1.0);
    CHECK(eval_Q(make_vec({1, 1}, 0), IndexSeq{{1, 2}}) == 1.5);
    CHECK(eval_Q(make_vec({-1, 1}, 0), IndexSeq{{1, 2}}) == 1.5);
    // negative entries contribute only through the head term
    CHECK(eval_Q(make_vec({1, -1}, 0), IndexSeq{{1, 2}}) == 1.0);
    // indices beyond the horizon read the tail
    CHECK(eval_Q(make_vec({}, 1.0), IndexSeq{{1, 2, 3}}) == 1.75);
}

TEST_CASE("dp value dominates Q at arbitrary index sequences", "[norms]") {
    Rng rng(100);
    for (int trial = 0; trial < 200; ++trial) {
        const SeqVec x = rand_vec(rng, 10, 8);
        const double dp = nonsym_sup_norm(x).value;
        std::vector<int> idx;
        int prev = 0;
        const int len = rng.uniform_int(1, 6);
        for (int i = 0; i < len; ++i) {
            prev += rng.uniform_int(1, 4);
            idx.push_back(prev);
        }
        REQUIRE(dp >= eval_Q(x, IndexSeq{idx}) - 1e-15);
    }
}

TEST_CASE("eval_q values including closed-form tails", "[norms]") {
    CHECK(eval_q(SeqVec{}) == 0.0);
    CHECK(std::abs(eval_q(unit_vec(1)) - std::sqrt(0.5)) <= 1e-15);
    CHECK(std::abs(eval_q(make_vec({}, 1.0)) - 1.0) <= 1e-15);  // geometric series
    // tail contribution: head [2], tail 3 -> 2^2/2 + 9/2
    const double expect = std::sqrt(2.0 + 4.5);
    CHECK(std::abs(eval_q(make_vec({2.0}, 3.0)) - expect) <= 1e-15);
}

TEST_CASE("nonsym_sup_norm hand values and attaining sequences", "[norms]") {
    const NonsymNorm a = nonsym_sup_norm(unit_vec(1));
    CHECK(a.value == 1.0);
    CHECK(a.attaining == IndexSeq{{1}});

    const NonsymNorm b = nonsym_sup_norm(make_vec({1, 1, 1}, 0));
    CHECK(b.value == 1.75);
    CHECK(b.attaining == IndexSeq{{1, 2, 3}});

    // asymmetry witness
    const NonsymNorm c = nonsym_sup_norm(make_vec({1, -1}, 0));
    CHECK(c.value == 1.0);
    CHECK(c.attaining == IndexSeq{{1}});
    const NonsymNorm d = nonsym_sup_norm(make_vec({-1, 1}, 0));
    CHECK(d.value == 1.5);
    CHECK(d.attaining == IndexSeq{{1, 2}});

    CHECK(nonsym_sup_norm(SeqVec{}).value == 0.0);
    CHECK_THROWS_AS(nonsym_sup_norm(make_vec({}, 1.0)), std::domain_error);
}

TEST_CASE("nonsym skip beats take when later entries dominate", "[norms]") {
    // tail candidates (0.1, 10): skipping the small one doubles the weight
    const SeqVec x = make_vec({-20, 0.1, 10}, 0);
    // j0 = 1 (|−20|), then skip index 2 and take index 3 at weight 1/2
    CHECK(nonsym_sup_norm(x).value == 25.0);
    CHECK(nonsym_sup_norm(x).attaining == IndexSeq{{1, 3}});
}

TEST_CASE("dp agrees with the exhaustive oracle", "[norms]") {
    Rng rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        const SeqVec x = rand_vec(rng, 12, 12);
        const double dp = nonsym_sup_norm(x).value;
        const double bf = brute_force_nonsym_norm(x);
        REQUIRE(std::abs(dp - bf) <= 1e-12);
    }
}

TEST_CASE("extended norm handles constant tails in closed form", "[norms]") {
    // e = (1,1,...): Q over growing sequences approaches 1 + sum 2^{-k} = 2
    const NonsymNorm e = detail::nonsym_sup_norm_ext(make_vec({}, 1.0));
    CHECK(e.value == 2.0);
    CHECK_FALSE(e.attained);
    // z = (0,1,1,...): same sup
    CHECK(detail::nonsym_sup_norm_ext(make_vec({0, 1}, 1.0)).value == 2.0);
    // negative tail only contributes |t| through the head position
    const NonsymNorm n = detail::nonsym_sup_norm_ext(make_vec({0.25}, -3.0));
    CHECK(n.value == 3.0);
    CHECK(n.attained);
    // mixed: head (5, -1), tail 0.5: j = (1) then absorb -> 5 + 0.5*2^0...
    // j0=1 gives 5, then tail from weight 1/2 onward adds 0.5*(1) = 0.5...
    // absorption from position 1 contributes 0.5 * 2^{0} = 0.5
    const NonsymNorm m = detail::nonsym_sup_norm_ext(make_vec({5, -1}, 0.5));
    CHECK(m.value == 5.5);
}

TEST_CASE("extended norm is the limit of truncations", "[norms]") {
    // materializing the tail into the head up to N and evaluating the
    // finite-support dp gives a monotone sequence converging to the
    // closed-form value geometrically fast
    Rng rng(110);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> head;
        const int h = rng.uniform_int(0, 8);
        for (int i = 0; i < h; ++i)
            head.push_back(rng.uniform(-2.0, 2.0));
        const double tail = rng.uniform(-1.5, 1.5);
        const SeqVec x(head, tail);
        const double ext = detail::nonsym_sup_norm_ext(x).value;

        double prev = 0.0;
        for (int n : {h + 1, h + 4, h + 16, 60}) {
            std::vector<double> trunc(static_cast<std::size_t>(n));
            for (int k = 1; k <= n; ++k)
                trunc[static_cast<std::size_t>(k) - 1] = x(k);
            const double vn = nonsym_sup_norm(SeqVec(trunc, 0.0)).value;
            REQUIRE(vn >= prev - 1e-15);
            REQUIRE(vn <= ext + 1e-15);
            prev = vn;
        }
        REQUIRE(ext - prev <= 1e-9);  // N = 60 is far past the head
    }
}

TEST_CASE("mlur gauge hand values", "[norms]") {
    CHECK(mlur_gauge(SeqVec{}) == 0.0);
    CHECK(std::abs(mlur_gauge(unit_vec(1)) - std::sqrt(1.5)) <= 1e-15);
    CHECK(std::abs(mlur_gauge(make_vec({1, 1}, 0)) - std::sqrt(3.0)) <= 1e-15);
}

TEST_CASE("spread norm", "[norms]") {
    CHECK(spread_norm(SeqVec{}) == 0.0);
    CHECK(spread_norm(unit_vec(1)) == 1.0);
    CHECK(spread_norm(make_vec({1, -1}, 0)) == 2.0);
    CHECK(spread_norm(make_vec({}, 1.0)) == 0.0);  // constant vectors have zero spread
    CHECK(spread_norm(make_vec({0, 1}, 1.0)) == 1.0);
}

TEST_CASE("norm chain on random vectors", "[norms]") {
    Rng rng(102);
    const double tol = 1e-9;
    for (int trial = 0; trial < 10000; ++trial) {
        const SeqVec x = rand_vec(rng, 32, 16);
        const double sup = sup_norm(x);
        const double ns = nonsym_sup_norm(x).value;
        const double g = std::hypot(ns, eval_q(x));
        const double mid = std::hypot(ns, sup);
        REQUIRE(sup <= ns + tol);
        REQUIRE(ns <= g + tol);
        REQUIRE(g <= mid + tol);
        REQUIRE(mid <= std::sqrt(2.0) * ns + tol);
        REQUIRE(std::sqrt(2.0) * ns <= 3.0 * sup + tol);
    }
}

TEST_CASE("oracles are positively homogeneous and subadditive", "[norms]") {
    std::vector<NormOracle> oracles{sup_oracle(),    spread_oracle(), q_oracle(),
                                    nonsym_oracle(), mlur3_oracle(),  lur_oracle(),
                                    combine_norm(Lattice::L2, q_oracle(),
                                                 {FinFunctional::coordinate(1)})};
    Rng rng(103);
    for (const NormOracle& N : oracles) {
        for (int trial = 0; trial < 60; ++trial) {
            const SeqVec x = rand_vec(rng, 10, 8);
            const SeqVec y = rand_vec(rng, 10, 8);
            for (double t : {0.0, 0.5, 2.0})
                REQUIRE(std::abs(N(t * x) - t * N(x)) <= 1e-9 * (1.0 + N(x)));
            REQUIRE(N(x + y) <= N(x) + N(y) + 1e-9);
            if (N.c_lower > 0.0)
                REQUIRE(N(x) >= N.c_lower * sup_norm(x) - 1e-9);
            REQUIRE(N(x) <= N.c_upper * sup_norm(x) + 1e-9);
        }
    }
}

TEST_CASE("non-symmetry of the sup over index sequences is real", "[norms]") {
    const NormOracle N = nonsym_oracle();
    const SeqVec x = make_vec({-1, 1}, 0);
    CHECK(N(x) != N(-1.0 * x));
}

TEST_CASE("lur renorm hand values and degenerate flag", "[norms]") {
    const LurRenormConfig cfg;
    CHECK(lur_renorm(cfg, SeqVec{}) == 0.0);
    CHECK(std::abs(lur_renorm(cfg, unit_vec(1)) - std::sqrt(0.5)) <= 1e-15);
    CHECK(std::abs(lur_renorm(cfg, unit_vec(2)) - std::sqrt(0.75)) <= 1e-15);

    LurRenormConfig zero;
    zero.fns = LurRenormConfig::Fns::zero;
    CHECK(zero.degenerate());
    CHECK(lur_renorm(zero, unit_vec(1)) == 0.0);  // vanishes on e1: a seminorm only

    // nondegeneracy of the default: positive on basis vectors and randoms
    Rng rng(104);
    for (int k = 1; k <= 12; ++k)
        CHECK(lur_renorm(cfg, unit_vec(k)) > 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        const SeqVec x = rand_vec(rng, 10, 8);
        if (!x.is_zero())
            CHECK(lur_renorm(cfg, x) > 0.0);
    }
}

TEST_CASE("series renorm agrees with the operator-route evaluation", "[norms]") {
    const LurRenormConfig cfg;
    Rng rng(111);
    for (int trial = 0; trial < 80; ++trial) {
        const SeqVec u = rand_vec(rng, 12, 10);
        double s2 = 0.0;
        for (int n = 1; n <= u.horizon() + 3; ++n) {
            const double rn = spread_norm(FinOperator::R(n).apply(u));
            const double fn = FinFunctional::coordinate(n)(u);
            s2 += std::ldexp(rn * rn + fn * fn, -n);
        }
        REQUIRE(std::abs(std::sqrt(s2) - lur_renorm(cfg, u)) <= 1e-12);
    }
}

TEST_CASE("combine_norm lattice combinations", "[norms]") {
    const NormOracle ident = combine_norm(Lattice::Linf, sup_oracle(), {});
    Rng rng(105);
    for (int trial = 0; trial < 30; ++trial) {
        const SeqVec x = rand_vec(rng, 8, 8);
        CHECK(ident(x) == sup_norm(x));
    }
    const NormOracle l1 = combine_norm(Lattice::L1, sup_oracle(), {FinFunctional::coordinate(1)});
    CHECK(l1(unit_vec(1)) == 2.0);
    const NormOracle l2 = combine_norm(Lattice::L2, q_oracle(), {FinFunctional::coordinate(1)});
    CHECK(std::abs(l2(unit_vec(1)) - std::sqrt(1.5)) <= 1e-15);
}

TEST_CASE("gauge membership", "[norms]") {
    const ConvexBody ball3{mlur3_oracle()};
    CHECK(gauge_membership(ball3, SeqVec{}, 1e-9) == Membership::inside);
    CHECK(gauge_membership(ball3, (1.0 / std::sqrt(1.5)) * unit_vec(1), 1e-9) ==
          Membership::boundary);
    const ConvexBody sball{sup_oracle()};
    CHECK(gauge_membership(sball, 2.0 * unit_vec(1), 1e-9) == Membership::outside);
    CHECK_THROWS_AS(gauge_membership(sball, SeqVec{}, 0.0), std::invalid_argument);
}

TEST_CASE("dist_to_body certified upper bounds", "[norms]") {
    SearchBudget b;
    b.restarts = 8;
    b.iters = 100;

    const ConvexBody sball{sup_oracle()};
    const DistResult inside = dist_to_body(sball, 0.5 * unit_vec(1), b);
    CHECK(inside.upper == 0.0);

    const DistResult out = dist_to_body(sball, 2.0 * unit_vec(1), b);
    CHECK(out.upper <= 1.0 + 1e-12);
    CHECK(sup_norm(out.witness) <= 1.0 + 1e-12);
    CHECK(sup_norm(2.0 * unit_vec(1) - out.witness) == out.upper);

    const ConvexBody ball3{mlur3_oracle()};
    const DistResult r3 = dist_to_body(ball3, 2.0 * unit_vec(1), b);
    const double radial = sup_norm(2.0 * unit_vec(1) - (2.0 / mlur_gauge(2.0 * unit_vec(1))) * unit_vec(1));
    CHECK(r3.upper <= radial + 1e-12);
    CHECK(mlur_gauge(r3.witness) <= 1.0);
    CHECK(r3.certified_lower <= r3.upper + 1e-12);
}

TEST_CASE("series renorm contracts under head projections", "[norms]") {
    const LurRenormConfig cfg;
    SearchBudget b;
    b.restarts = 8;
    b.iters = 150;
    Rng rng(106);
    for (int m : {1, 3, 6}) {
        const double opn =
            op_gauge_norm(FinOperator::P(m), spread_oracle(), b).estimate;
        CHECK(opn >= 1.0 - 1e-12);
        for (int trial = 0; trial < 20; ++trial) {
            const SeqVec u = rand_vec(rng, 10, 8);
            const SeqVec pu = FinOperator::P(m).apply(u);
            REQUIRE(lur_renorm(cfg, pu) <= opn * lur_renorm(cfg, u) + 1e-12);
        }
    }
}
