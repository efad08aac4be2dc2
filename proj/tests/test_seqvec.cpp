#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "seqgeo/search.hpp"
#include "seqgeo/seqvec.hpp"

using namespace seqgeo;
using nlohmann::json;

TEST_CASE("make_vec canonicalizes and validates", "[seqvec]") {
    const SeqVec a = make_vec({1.0, 0.0}, 0.0);
    CHECK(a.horizon() == 1);
    CHECK(a.tail() == 0.0);

    const SeqVec e = make_vec({}, 1.0);  // constant-one vector of c
    CHECK(e.horizon() == 0);
    CHECK(e(1) == 1.0);
    CHECK(e(100) == 1.0);

    const SeqVec z = make_vec({0.0, 1.0}, 1.0);  // (0,1,1,...)
    CHECK(z.horizon() == 1);
    CHECK(z(1) == 0.0);
    CHECK(z(2) == 1.0);
    CHECK(z(17) == 1.0);

    // trailing agreement with a nonzero tail is absorbed too
    const SeqVec c = make_vec({1.0, 0.5, 0.5}, 0.5);
    CHECK(c.horizon() == 1);
    CHECK(c(3) == 0.5);

    CHECK_THROWS_AS(make_vec({std::nan("")}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_vec({1.0}, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("coordinate access matches head+tail encoding", "[seqvec]") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> head;
        const int h = rng.uniform_int(0, 12);
        for (int i = 0; i < h; ++i)
            head.push_back(rng.uniform(-3.0, 3.0));
        const double tail = rng.uniform_int(0, 1) ? rng.uniform(-2.0, 2.0) : 0.0;
        const SeqVec x(head, tail);
        for (int k = 1; k <= 2 * std::max(h, 1); ++k) {
            const double expect =
                k <= static_cast<int>(head.size()) && k <= x.horizon() ? head[k - 1] : tail;
            if (k <= x.horizon())
                CHECK(x(k) == head[k - 1]);
            else
                CHECK(x(k) == tail);
            (void)expect;
        }
    }
}

TEST_CASE("canonicalization is idempotent and value-preserving", "[seqvec]") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> head;
        const int h = rng.uniform_int(0, 8);
        const double tail = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < h; ++i)
            head.push_back(rng.uniform_int(0, 2) ? rng.uniform(-1.0, 1.0) : tail);
        const SeqVec x(head, tail);
        const SeqVec y(std::vector<double>(x.head()), x.tail());
        CHECK(x == y);
        for (int k = 1; k <= h; ++k)
            CHECK(x(k) == head[k - 1]);
    }
}

TEST_CASE("sup_norm examples", "[seqvec]") {
    CHECK(sup_norm(SeqVec{}) == 0.0);
    CHECK(sup_norm(make_vec({}, 1.0)) == 1.0);
    CHECK(sup_norm(make_vec({3.0, -5.0}, 0.0)) == 5.0);
}

TEST_CASE("apply_functional examples and bilinearity", "[seqvec]") {
    const FinFunctional e1s = FinFunctional::coordinate(1);
    CHECK(apply_functional(e1s, unit_vec(1)) == 1.0);
    CHECK(apply_functional(FinFunctional{}, make_vec({2.0, 3.0}, 0.0)) == 0.0);
    const FinFunctional half(std::vector<double>{0.5, 0.5});
    CHECK(apply_functional(half, make_vec({1.0, -1.0}, 0.0)) == 0.0);

    // limit coefficient acts on the tail
    const FinFunctional lim({}, 1.0);
    CHECK(apply_functional(lim, make_vec({0.0, 1.0}, 1.0)) == 1.0);

    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> c{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const FinFunctional f(c), g({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        std::vector<double> xh{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                               rng.uniform(-1, 1)};
        const SeqVec x(xh, 0.0), y({rng.uniform(-1, 1), rng.uniform(-1, 1)}, 0.0);
        const double a = rng.uniform(-2, 2);
        CHECK(std::abs(f(x + a * y) - (f(x) + a * f(y))) <= 1e-12);
        // linearity in the functional argument
        std::vector<double> fc = f.coeffs();
        fc.resize(4, 0.0);
        std::vector<double> gc = g.coeffs();
        gc.resize(4, 0.0);
        std::vector<double> sum(4);
        for (int i = 0; i < 4; ++i)
            sum[i] = fc[i] + a * gc[i];
        const FinFunctional fg(sum);
        CHECK(std::abs(fg(x) - (f(x) + a * g(x))) <= 1e-12);
    }
}

TEST_CASE("active_horizon", "[seqvec]") {
    CHECK(active_horizon({unit_vec(1)}) == 1);
    CHECK(active_horizon({unit_vec(1) + unit_vec(5)}, {FinFunctional::coordinate(3)}) == 5);
    CHECK(active_horizon({SeqVec{}}) == 0);
}

TEST_CASE("vector json round-trip is exact", "[seqvec]") {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> head;
        const int h = rng.uniform_int(0, 10);
        for (int i = 0; i < h; ++i)
            head.push_back(rng.uniform(-1.0, 1.0) * std::ldexp(1.0, rng.uniform_int(-20, 20)));
        const SeqVec x(head, rng.uniform_int(0, 1) ? rng.uniform(-1.0, 1.0) : 0.0);
        const SeqVec back = json::parse(json(x).dump()).get<SeqVec>();
        CHECK(back == x);
    }
    const FinFunctional f({0.25, -1.0 / 3.0}, 0.125);
    const FinFunctional fback = json::parse(json(f).dump()).get<FinFunctional>();
    CHECK(fback.coeffs() == f.coeffs());
    CHECK(fback.cinf() == f.cinf());
    CHECK_THROWS(json::parse(R"({"head":[1],"tail":0.5})").get<FinFunctional>());
}

TEST_CASE("index sequences validate", "[seqvec]") {
    CHECK_THROWS_AS((IndexSeq{std::vector<int>{}}), std::invalid_argument);
    CHECK_THROWS_AS((IndexSeq{std::vector<int>{2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS((IndexSeq{std::vector<int>{0, 1}}), std::invalid_argument);
    const IndexSeq j{{1, 3, 9}};
    CHECK(j.head_index() == 1);
}
