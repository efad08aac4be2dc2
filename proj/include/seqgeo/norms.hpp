// Norms and gauges on the head+tail sequence model: the weighted sup over
// increasing index sequences, its quadratic companion, the spread norm, the
// LUR series renorm, and lattice combinations. The sup over index sequences
// is computed by an exact dynamic program; a brute-force enumerator is kept
// in-tree for cross-validation.

#ifndef SEQGEO_NORMS_HPP_
#define SEQGEO_NORMS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqgeo/search.hpp"
#include "seqgeo/seqvec.hpp"

namespace seqgeo {

/// Q(x, j) = |x(j0)| + sum_{k>=1} 2^{-k} max(x(j_k), 0).
inline double eval_Q(const SeqVec& x, const IndexSeq& j) {
    const std::vector<int>& idx = j.indices();
    double s = std::abs(x(idx[0]));
    for (std::size_t k = 1; k < idx.size(); ++k)
        s += std::ldexp(std::max(x(idx[k]), 0.0), -static_cast<int>(k));
    return s;
}

/// q(x)^2 = sum_{k>=1} 2^{-k} x(k)^2; the constant tail contributes
/// tail^2 * 2^{-H} in closed form.
inline double eval_q(const SeqVec& x) {
    double s2 = 0.0;
    const int h = x.horizon();
    for (int k = 1; k <= h; ++k) {
        const double v = x(k);
        s2 += std::ldexp(v * v, -k);
    }
    s2 += std::ldexp(x.tail() * x.tail(), -h);
    return std::sqrt(s2);
}

struct NonsymNorm {
    double value = 0.0;
    IndexSeq attaining{std::vector<int>{1}};
    bool attained = true;  // false when the sup is only approached (tail absorption)
};

namespace detail {

// sup over J of Q(x, .), exact for any head+tail vector. A positive tail is
// absorbed in closed form: appending every index beyond the head from weight
// position k onward contributes tail * 2^{-k+1} in the limit.
inline NonsymNorm nonsym_sup_norm_ext(const SeqVec& x) {
    const int h = x.horizon();
    const double t = x.tail();
    const double tplus = std::max(t, 0.0);

    std::vector<int> pos;  // candidates for tail positions of j
    pos.reserve(static_cast<std::size_t>(h));
    for (int k = 1; k <= h; ++k)
        if (x(k) > 0.0)
            pos.push_back(k);
    const int s = static_cast<int>(pos.size());
    const int cols = s + 3;

    // best[i*cols + k]: best completion from candidate i on, next weight
    // 2^{-k}; a third option closes the sequence by absorbing the constant
    // tail, worth tplus * 2^{-k+1}.
    std::vector<double> best(static_cast<std::size_t>(s + 1) * static_cast<std::size_t>(cols), 0.0);
    for (int i = s; i >= 0; --i) {
        double* row = best.data() + static_cast<std::size_t>(i) * cols;
        const double* next = best.data() + static_cast<std::size_t>(i + 1) * cols;
        const double vi = i < s ? x(pos[static_cast<std::size_t>(i)]) : 0.0;
        for (int k = s + 1; k >= 1; --k) {
            double v = tplus > 0.0 ? std::ldexp(tplus, -k + 1) : 0.0;
            if (i < s) {
                v = std::max(v, next[k]);
                v = std::max(v, std::ldexp(vi, -k) + next[k + 1]);
            }
            row[k] = v;
        }
    }
    const auto best_at = [&](int i, int k) {
        return best[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(k)];
    };

    NonsymNorm out;
    out.value = 0.0;
    int best_j0 = 0;
    int i0_of_best = 0;
    {
        int i0 = 0;  // first candidate index strictly beyond j0
        for (int j0 = 1; j0 <= h; ++j0) {
            while (i0 < s && pos[static_cast<std::size_t>(i0)] <= j0)
                ++i0;
            const double vj0 = std::abs(x(j0));
            if (vj0 == 0.0)
                continue;
            const double cand = vj0 + best_at(i0, 1);
            if (cand > out.value) {
                out.value = cand;
                best_j0 = j0;
                i0_of_best = i0;
            }
        }
    }
    bool tail_head = false;
    if (t != 0.0 && std::abs(t) + tplus > out.value) {
        out.value = std::abs(t) + tplus;
        tail_head = true;
    }

    if (out.value == 0.0) {
        out = NonsymNorm{0.0, IndexSeq{{1}}, true};
        return out;
    }

    if (tail_head) {
        out.attaining = IndexSeq{{h + 1}};
        out.attained = (tplus == 0.0);
        return out;
    }

    // Reconstruct an attaining sequence (take preferred on ties). When a
    // positive tail is absorbed the sup is only approached; the head prefix
    // is still reported but flagged unattained.
    std::vector<int> seq{best_j0};
    int i = i0_of_best;
    int k = 1;
    while (i < s) {
        const double close = tplus > 0.0 ? std::ldexp(tplus, -k + 1) : 0.0;
        const double take = std::ldexp(x(pos[static_cast<std::size_t>(i)]), -k) + best_at(i + 1, k + 1);
        const double skip = best_at(i + 1, k);
        if (take >= skip && take >= close) {
            seq.push_back(pos[static_cast<std::size_t>(i)]);
            ++k;
            ++i;
        } else if (skip >= close) {
            ++i;
        } else {
            break;
        }
    }
    out.attaining = IndexSeq{std::move(seq)};
    out.attained = (tplus == 0.0);
    return out;
}

}  // namespace detail

/// ||x|| = sup{Q(x, j) : j in J}, with an attaining index sequence.
/// Only finite-support (tail 0) vectors are accepted; the c-model extension
/// exists internally for the midpoint certificates.
inline NonsymNorm nonsym_sup_norm(const SeqVec& x) {
    if (!x.is_c0())
        throw std::domain_error("nonsym_sup_norm: nonzero tail unsupported");
    return detail::nonsym_sup_norm_ext(x);
}

/// Exhaustive maximum of Q over every index sequence drawn from the support
/// plus one index beyond it. Exponential; cross-validation oracle only.
inline double brute_force_nonsym_norm(const SeqVec& x) {
    if (!x.is_c0())
        throw std::domain_error("brute_force_nonsym_norm: nonzero tail unsupported");
    std::vector<int> supp;
    for (int k = 1; k <= x.horizon(); ++k)
        if (x(k) != 0.0)
            supp.push_back(k);
    supp.push_back(x.horizon() + 1);
    const int n = static_cast<int>(supp.size());
    if (n > 22)
        throw std::invalid_argument("brute_force_nonsym_norm: support too large");
    double best = 0.0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double q = 0.0;
        int pos = 0;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i)))
                continue;
            const double v = x(supp[static_cast<std::size_t>(i)]);
            q += pos == 0 ? std::abs(v) : std::ldexp(std::max(v, 0.0), -pos);
            ++pos;
        }
        best = std::max(best, q);
    }
    return best;
}

/// |||x||| = (||x||^2 + q(x)^2)^{1/2} on finite-support vectors.
inline double mlur_gauge(const SeqVec& x) {
    const double n = nonsym_sup_norm(x).value;
    return std::hypot(n, eval_q(x));
}

/// sup_i x(i) - inf_j x(j) over all coordinates including the tail value.
inline double spread_norm(const SeqVec& x) {
    double hi = x.tail();
    double lo = x.tail();
    for (double v : x.head()) {
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    return hi - lo;
}

/// Positively homogeneous convex functional with declared equivalence
/// constants against the sup norm (c_lower may be 0 when the lower constant
/// is horizon-dependent, as for the weighted-l2 norm).
struct NormOracle {
    std::string name;
    bool symmetric = true;
    double c_lower = 1.0;
    double c_upper = 1.0;
    std::function<double(const SeqVec&)> eval;

    double operator()(const SeqVec& x) const { return eval(x); }
};

inline NormOracle sup_oracle() {
    return {"sup", true, 1.0, 1.0, [](const SeqVec& x) { return sup_norm(x); }};
}

inline NormOracle spread_oracle() {
    // equivalence constants valid on the c0 model (tail 0)
    return {"spread", true, 1.0, 2.0, [](const SeqVec& x) { return spread_norm(x); }};
}

inline NormOracle q_oracle() {
    return {"q", true, 0.0, 1.0, [](const SeqVec& x) { return eval_q(x); }};
}

inline NormOracle nonsym_oracle() {
    return {"nonsym", false, 1.0, 2.0, [](const SeqVec& x) { return nonsym_sup_norm(x).value; }};
}

inline NormOracle mlur3_oracle() {
    return {"mlur3", false, 1.0, 3.0, [](const SeqVec& x) { return mlur_gauge(x); }};
}

/// Series renorm sum_n 2^{-n}(||R_n u||^2 + f_n(u)^2). The coordinate family
/// f_n = e_n* is the default; the zero family is constructible but yields a
/// degenerate seminorm and is flagged as such.
struct LurRenormConfig {
    enum class Fns { coordinate, zero };
    NormOracle base = spread_oracle();
    Fns fns = Fns::coordinate;

    bool degenerate() const { return fns == Fns::zero; }
};

inline double lur_renorm(const LurRenormConfig& cfg, const SeqVec& u) {
    if (!u.is_c0())
        throw std::domain_error("lur_renorm: nonzero tail unsupported");
    const int h = u.horizon();
    double s2 = 0.0;
    // R_n u vanishes for n >= horizon, so the series is a finite sum.
    for (int n = 1; n <= h; ++n) {
        std::vector<double> rn(static_cast<std::size_t>(h), 0.0);
        for (int k = n + 1; k <= h; ++k)
            rn[static_cast<std::size_t>(k) - 1] = u(k);
        const double rnorm = cfg.base(SeqVec(std::move(rn), 0.0));
        const double fn = cfg.fns == LurRenormConfig::Fns::coordinate ? u(n) : 0.0;
        s2 += std::ldexp(rnorm * rnorm + fn * fn, -n);
    }
    return std::sqrt(s2);
}

inline NormOracle lur_oracle(LurRenormConfig cfg = {}) {
    std::string name = cfg.degenerate() ? "lur(" + cfg.base.name + ",zero)" : "lur(" + cfg.base.name + ")";
    const double c2 = std::sqrt(cfg.base.c_upper * cfg.base.c_upper + (cfg.degenerate() ? 0.0 : 1.0));
    NormOracle o;
    o.name = std::move(name);
    o.symmetric = cfg.base.symmetric;
    o.c_lower = 0.0;  // horizon-dependent
    o.c_upper = c2;
    o.eval = [cfg](const SeqVec& u) { return lur_renorm(cfg, u); };
    return o;
}

enum class Lattice { L1, L2, Linf };

inline double lattice_eval(Lattice l, double a, double b) {
    switch (l) {
        case Lattice::L1: return a + b;
        case Lattice::L2: return std::hypot(a, b);
        case Lattice::Linf: return std::max(a, b);
    }
    return 0.0;
}

/// Finite-rank seminorm ||x||_W = max_i |f_i(x)| combined with a base norm
/// through a lattice norm on R^2: x -> |(base(x), ||x||_W)|.
inline NormOracle combine_norm(Lattice lattice, const NormOracle& base,
                               const std::vector<FinFunctional>& weak) {
    double wmax = 0.0;
    for (const FinFunctional& f : weak)
        wmax = std::max(wmax, f.l1_norm());
    NormOracle o;
    o.name = "combine(" +
             std::string(lattice == Lattice::L1 ? "l1" : lattice == Lattice::L2 ? "l2" : "linf") +
             "," + base.name + ")";
    o.symmetric = base.symmetric;
    o.c_lower = base.c_lower;
    o.c_upper = lattice_eval(lattice, base.c_upper, wmax);
    o.eval = [lattice, base, weak](const SeqVec& x) {
        double w = 0.0;
        for (const FinFunctional& f : weak)
            w = std::max(w, std::abs(f(x)));
        return lattice_eval(lattice, base(x), w);
    };
    return o;
}

/// Unit body C = {u : gauge(u) <= 1} of a (possibly non-symmetric) oracle.
struct ConvexBody {
    NormOracle gauge;
};

enum class Membership { inside, boundary, outside };

inline Membership gauge_membership(const ConvexBody& body, const SeqVec& x, double tol) {
    if (tol <= 0.0)
        throw std::invalid_argument("gauge_membership: tol must be positive");
    const double g = body.gauge(x);
    if (g < 1.0 - tol)
        return Membership::inside;
    if (g > 1.0 + tol)
        return Membership::outside;
    return Membership::boundary;
}

struct DistResult {
    double upper = 0.0;        // certified: witness is in the body
    SeqVec witness;            // body member realizing the upper bound
    double certified_lower = 0.0;  // (gauge(u) - 1)/c_upper, 0 inside
};

/// Certified upper bound on the sup-norm distance from u to the body,
/// initialized with the radial projection and improved by multistart search.
inline DistResult dist_to_body(const ConvexBody& body, const SeqVec& u,
                               const SearchBudget& budget = {}) {
    const double g = body.gauge(u);
    if (!std::isfinite(g))
        throw std::invalid_argument("dist_to_body: gauge(u) not finite");
    if (g <= 1.0)
        return {0.0, u, 0.0};

    SeqVec radial = (1.0 / g) * u;
    // guard against an outward rounding of the retraction
    for (int i = 0; i < 4 && body.gauge(radial) > 1.0; ++i)
        radial = (1.0 - 4.0 * std::numeric_limits<double>::epsilon()) * radial;

    const double lower = body.gauge.c_upper > 0.0 ? (g - 1.0) / body.gauge.c_upper : 0.0;

    MaxProblem p;
    p.objective = [&u](const SeqVec& w) { return -sup_norm(u - w); };
    p.feasible = [&body](const SeqVec& w) { return body.gauge(w) <= 1.0; };
    p.seeds = {radial};
    p.active_horizon = u.horizon();
    SearchBudget b = budget;
    b.restarts = std::max(4, budget.restarts / 4);
    const MaxResult r = multistart_max(p, b);

    DistResult out;
    out.witness = r.witness;
    out.upper = sup_norm(u - r.witness);
    const double radial_dist = sup_norm(u - radial);
    if (radial_dist < out.upper) {
        out.upper = radial_dist;
        out.witness = radial;
    }
    out.certified_lower = std::max(0.0, lower);
    return out;
}

}  // namespace seqgeo

#endif  // SEQGEO_NORMS_HPP_
