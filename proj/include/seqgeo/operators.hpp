// Finite-rank operators on head+tail vectors and the operator-approximation
// estimators built on them. Operator-norm style quantities are suprema over
// a (possibly non-symmetric) gauge ball; every reported value is a lower
// bound certified by its witness.

#ifndef SEQGEO_OPERATORS_HPP_
#define SEQGEO_OPERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seqgeo/norms.hpp"
#include "seqgeo/search.hpp"
#include "seqgeo/seqvec.hpp"

namespace seqgeo {

class FinOperator {
public:
    enum class Kind { coord_proj, tail_proj, limit_proj, rank_one, lin_comb, compose };

    static FinOperator P(int n) {
        if (n < 0)
            throw std::invalid_argument("FinOperator::P: n must be >= 0");
        FinOperator t(Kind::coord_proj);
        t.n_ = n;
        return t;
    }

    static FinOperator R(int n) {
        if (n < 0)
            throw std::invalid_argument("FinOperator::R: n must be >= 0");
        FinOperator t(Kind::tail_proj);
        t.n_ = n;
        return t;
    }

    static FinOperator identity() { return R(0); }

    static FinOperator limP() { return FinOperator(Kind::limit_proj); }

    static FinOperator rank1(FinFunctional estar, SeqVec e) {
        FinOperator t(Kind::rank_one);
        t.f_ = std::move(estar);
        t.e_ = std::move(e);
        return t;
    }

    static FinOperator lin(double a, FinOperator A, double b, FinOperator B) {
        FinOperator t(Kind::lin_comb);
        t.a_ = a;
        t.b_ = b;
        t.lhs_ = std::make_shared<const FinOperator>(std::move(A));
        t.rhs_ = std::make_shared<const FinOperator>(std::move(B));
        return t;
    }

    static FinOperator compose(FinOperator A, FinOperator B) {
        FinOperator t(Kind::compose);
        t.lhs_ = std::make_shared<const FinOperator>(std::move(A));
        t.rhs_ = std::make_shared<const FinOperator>(std::move(B));
        return t;
    }

    SeqVec apply(const SeqVec& x) const {
        switch (kind_) {
            case Kind::coord_proj: {
                std::vector<double> head(static_cast<std::size_t>(n_));
                for (int k = 1; k <= n_; ++k)
                    head[static_cast<std::size_t>(k) - 1] = x(k);
                return SeqVec(std::move(head), 0.0);
            }
            case Kind::tail_proj: {
                const int h = std::max(x.horizon(), n_);
                std::vector<double> head(static_cast<std::size_t>(h), 0.0);
                for (int k = n_ + 1; k <= h; ++k)
                    head[static_cast<std::size_t>(k) - 1] = x(k);
                return SeqVec(std::move(head), x.tail());
            }
            case Kind::limit_proj:
                return SeqVec({}, x.tail());
            case Kind::rank_one:
                return f_(x) * e_;
            case Kind::lin_comb:
                return a_ * lhs_->apply(x) + b_ * rhs_->apply(x);
            case Kind::compose:
                return lhs_->apply(rhs_->apply(x));
        }
        throw std::logic_error("FinOperator::apply: bad kind");
    }

    Kind kind() const { return kind_; }
    int param() const { return n_; }

    const FinFunctional& functional() const {
        if (kind_ != Kind::rank_one)
            throw std::logic_error("FinOperator::functional: not a rank-one operator");
        return f_;
    }

    const SeqVec& range_vec() const {
        if (kind_ != Kind::rank_one)
            throw std::logic_error("FinOperator::range_vec: not a rank-one operator");
        return e_;
    }

    /// Bound on head indices the operator reads or writes; 0 when the
    /// operator is horizon-free (limit projection).
    int index_bound() const {
        switch (kind_) {
            case Kind::coord_proj:
            case Kind::tail_proj:
                return n_;
            case Kind::limit_proj:
                return 0;
            case Kind::rank_one:
                return std::max(f_.support_bound(), e_.horizon());
            case Kind::lin_comb:
            case Kind::compose:
                return std::max(lhs_->index_bound(), rhs_->index_bound());
        }
        return 0;
    }

private:
    explicit FinOperator(Kind k) : kind_(k) {}

    Kind kind_;
    int n_ = 0;
    double a_ = 0.0, b_ = 0.0;
    std::shared_ptr<const FinOperator> lhs_, rhs_;
    FinFunctional f_;
    SeqVec e_;
};

inline SeqVec apply_op(const FinOperator& T, const SeqVec& x) { return T.apply(x); }

struct OpNormEst {
    double estimate = 0.0;
    SeqVec lower_witness;  // gauge(witness) <= 1, gauge(T witness) = estimate
};

/// sup{gauge(Ty) : gauge(y) <= 1}. The ratio gauge(Ty)/gauge(y) is scale
/// invariant, so the climb is unconstrained and the reported witness is the
/// radial retraction of the best point found.
inline OpNormEst op_gauge_norm(const FinOperator& T, const NormOracle& gauge,
                               const SearchBudget& budget,
                               const std::vector<SeqVec>& extra_seeds = {}) {
    const auto ratio = [&](const SeqVec& y) {
        const double g = gauge(y);
        if (!(g > 0.0))
            return -1.0;
        return gauge(T.apply(y)) / g;
    };

    std::vector<SeqVec> seeds;
    const int bound = std::max(1, T.index_bound());
    for (int k = 1; k <= std::min(bound + 1, 12); ++k) {
        seeds.push_back(unit_vec(k));
        seeds.push_back(-1.0 * unit_vec(k));
    }
    {
        std::vector<double> ones(static_cast<std::size_t>(bound + 1), 1.0);
        seeds.emplace_back(ones, 0.0);
    }
    for (const SeqVec& s : extra_seeds)
        seeds.push_back(s);

    MaxProblem p;
    p.objective = ratio;
    p.feasible = [](const SeqVec&) { return true; };
    p.seeds = std::move(seeds);
    p.active_horizon = bound;
    const MaxResult r = multistart_max(p, budget);

    OpNormEst out;
    out.estimate = r.value;
    const double g = gauge(r.witness);
    out.lower_witness = g > 0.0 ? (1.0 / g) * r.witness : r.witness;
    return out;
}

/// Estimate of ||I - 2T|| under the given norm.
inline double ukap_defect(const FinOperator& T, const NormOracle& norm,
                          const SearchBudget& budget) {
    const FinOperator flip = FinOperator::lin(1.0, FinOperator::identity(), -2.0, T);
    return op_gauge_norm(flip, norm, budget).estimate;
}

struct Cond29Result {
    double estimate = 0.0;
    SeqVec witness;
};

/// sup{gauge((1+l)Ty - ly) : gauge(y) <= 1, cnorm(T(x - y)) <= eps}.
/// y = x is always feasible when gauge(x) <= 1. Pass the witness of a
/// smaller-eps run as warm start to make a grid monotone by construction.
inline Cond29Result cond29_sup(const FinOperator& T, const SeqVec& x, double lambda,
                               double eps, const NormOracle& gauge,
                               const NormOracle& constraint_norm, const SearchBudget& budget,
                               const SeqVec* warm = nullptr) {
    if (lambda <= 0.0 || lambda > 1.0)
        throw std::invalid_argument("cond29_sup: lambda must be in (0,1]");
    const double ftol = 1e-12;

    const auto objective = [&](const SeqVec& y) {
        return gauge((1.0 + lambda) * T.apply(y) - lambda * y);
    };
    const auto feasible = [&](const SeqVec& y) {
        if (gauge(y) > 1.0 + ftol)
            return false;
        return constraint_norm(T.apply(x - y)) <= eps + ftol;
    };

    std::vector<SeqVec> seeds{x};
    // prefix-killed variants of x: same tail behaviour, head zeroed up to k
    for (int k = 1; k <= std::min(x.horizon() + (x.tail() != 0.0 ? 1 : 0), 8); ++k) {
        std::vector<double> head(static_cast<std::size_t>(std::max(x.horizon(), k)), 0.0);
        for (int i = k + 1; i <= x.horizon(); ++i)
            head[static_cast<std::size_t>(i) - 1] = x(i);
        SeqVec cand(std::move(head), x.tail());
        if (feasible(cand))
            seeds.push_back(std::move(cand));
    }
    if (warm != nullptr && feasible(*warm))
        seeds.push_back(*warm);

    MaxProblem p;
    p.objective = objective;
    p.feasible = feasible;
    p.seeds = std::move(seeds);
    p.active_horizon = std::max({x.horizon(), T.index_bound(), 1});
    const MaxResult r = multistart_max(p, budget);
    return {r.value, r.witness};
}

struct FnBracket {
    double lower = 0.0;  // certified via gauge excess of the best witness
    double upper = 0.0;  // dist_to_body upper bound at the same witness
    SeqVec y;            // feasible point realizing the bracket
    SeqVec image;        // (1+l) Phi y - l y
};

/// f_n(eps) = sup{dist((1+l)Phi y - l y, C) : y in C, ||Phi x - Phi y|| <= eps},
/// distances in the ambient sup norm. Reported as a certified bracket at the
/// best witness found.
inline FnBracket thm_fn_estimate(const FinOperator& Phi, const ConvexBody& body,
                                 const SeqVec& x, double lambda, double eps,
                                 const SearchBudget& budget) {
    if (lambda <= 0.0 || lambda > 1.0)
        throw std::invalid_argument("thm_fn_estimate: lambda must be in (0,1]");
    if (body.gauge(x) > 1.0 + 1e-9)
        throw std::invalid_argument("thm_fn_estimate: x must lie in the body");
    const double ftol = 1e-12;
    const SeqVec phi_x = Phi.apply(x);

    const auto image_of = [&](const SeqVec& y) {
        return (1.0 + lambda) * Phi.apply(y) - lambda * y;
    };
    const auto dist_lb = [&](const SeqVec& u) {
        const double g = body.gauge(u);
        return body.gauge.c_upper > 0.0 ? std::max(0.0, (g - 1.0) / body.gauge.c_upper) : 0.0;
    };
    const auto feasible = [&](const SeqVec& y) {
        if (body.gauge(y) > 1.0 + ftol)
            return false;
        return sup_norm(phi_x - Phi.apply(y)) <= eps + ftol;
    };

    SeqVec xin = x;
    for (int i = 0; i < 8 && body.gauge(xin) > 1.0; ++i)
        xin = (1.0 - 8.0 * std::numeric_limits<double>::epsilon()) * xin;
    std::vector<SeqVec> seeds{xin};
    // structured adversaries: keep the visible part of x, spend the slack on
    // fresh negative spikes that the flip (1+l)Phi - l I turns positive
    const int active = std::max({x.horizon(), Phi.index_bound(), 1});
    const SeqVec phix_part = Phi.apply(x);
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
        for (int spikes : {1, 4, 12}) {
            SeqVec d;
            for (int i = 0; i < spikes; ++i)
                d = d - s * unit_vec(active + 4 + budget.horizon_extra + i);
            SeqVec cand = phix_part + d;
            const double g = body.gauge(cand);
            if (g > 1.0)
                cand = (1.0 / g) * cand;
            if (feasible(cand))
                seeds.push_back(std::move(cand));
        }
    }

    MaxProblem p;
    p.objective = [&](const SeqVec& y) { return dist_lb(image_of(y)); };
    p.feasible = feasible;
    p.seeds = std::move(seeds);
    p.active_horizon = active;
    const MaxResult r = multistart_max(p, budget);

    FnBracket out;
    out.y = r.witness;
    out.image = image_of(r.witness);
    out.lower = dist_lb(out.image);
    out.upper = dist_to_body(body, out.image, budget).upper;
    return out;
}

/// f(eps) = sup{||Py - Ry|| : ||y|| <= 1, ||P(e - y)|| <= eps} for the
/// rank-one projection P = e* (x) e with e*(e) = 1. eps = 0 is handled as an
/// equality constraint: moves stay inside ker e* and steps shrink radially
/// toward e until the ball constraint holds.
inline std::vector<std::pair<double, double>> remark_f_curve(
    const FinOperator& P, const SeqVec& e, const NormOracle& norm,
    const std::vector<double>& eps_grid, const SearchBudget& budget) {
    if (P.kind() != FinOperator::Kind::rank_one)
        throw std::invalid_argument("remark_f_curve: P must be rank-one");
    const FinFunctional& estar = P.functional();
    if (std::abs(estar(e) - 1.0) > 1e-9)
        throw std::invalid_argument("remark_f_curve: e*(e) must equal 1");
    const double norm_e = norm(e);

    const auto objective = [&](const SeqVec& y) {
        const SeqVec py = P.apply(y);
        return norm(py - (y - py));
    };

    std::vector<std::pair<double, double>> out;
    const int active = std::max({e.horizon(), P.index_bound(), estar.support_bound(), 1});

    SeqVec warm = e;
    for (double eps : eps_grid) {
        if (eps < 0.0)
            throw std::invalid_argument("remark_f_curve: eps must be >= 0");
        double best;
        if (eps == 0.0) {
            // equality slice e*(y) = 1: parametrize y = e + t d with d in ker e*
            best = objective(e);
            Rng rng(budget.seed);
            for (int r = 0; r < budget.restarts; ++r) {
                SeqVec d;
                const int extra = budget.horizon_extra * (2 * r >= budget.restarts ? 2 : 1);
                for (int it = 0; it < budget.iters / 10 + 1; ++it) {
                    const int k = rng.uniform_int(1, active + extra);
                    const double a = rng.uniform(-1.0, 1.0);
                    const SeqVec bump = a * unit_vec(k);
                    d = d + bump - estar(bump) * e;  // stay inside ker e*
                    // the equality slice uses the exact ball: any slack here
                    // is amplified through weakly weighted fresh coordinates
                    const double t = detail::max_feasible_step(
                        1.0, [&](double s) { return norm(e + s * d) <= 1.0; });
                    if (t > 0.0)
                        best = std::max(best, objective(e + t * d));
                }
            }
        } else {
            const auto feasible = [&](const SeqVec& y) {
                if (norm(y) > 1.0 + 1e-12)
                    return false;
                return std::abs(estar(e - y)) * norm_e <= eps + 1e-12;
            };
            std::vector<SeqVec> seeds{e, warm};
            // fresh negative spike scaled back into the ball
            for (double s : {0.5, 1.0}) {
                SeqVec cand = e - s * unit_vec(active + budget.horizon_extra);
                const double g = norm(cand);
                if (g > 0.0) {
                    cand = (1.0 / std::max(1.0, g)) * cand;
                    if (feasible(cand))
                        seeds.push_back(std::move(cand));
                }
            }
            MaxProblem p;
            p.objective = objective;
            p.feasible = feasible;
            p.seeds = std::move(seeds);
            p.active_horizon = active;
            const MaxResult r = multistart_max(p, budget);
            best = r.value;
            warm = r.witness;
        }
        out.emplace_back(eps, best);
    }
    return out;
}

}  // namespace seqgeo

#endif  // SEQGEO_OPERATORS_HPP_
