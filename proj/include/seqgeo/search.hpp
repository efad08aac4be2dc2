// Derivative-free multistart search shared by the operator-norm and probe
// estimators. All estimates produced through here are lower bounds certified
// by the witness that attains them; nothing is reported as exact.

#ifndef SEQGEO_SEARCH_HPP_
#define SEQGEO_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seqgeo/seqvec.hpp"

namespace seqgeo {

struct SearchBudget {
    int restarts = 64;
    int iters = 500;
    double step_init = 1.0;
    double step_decay = 0.99;
    std::uint64_t seed = 7;
    // Fresh indices beyond the active horizon the adversary may touch.
    // Doubles for the second half of the restarts.
    int horizon_extra = 8;
};

inline void to_json(nlohmann::json& j, const SearchBudget& b) {
    j = nlohmann::json{{"restarts", b.restarts},   {"iters", b.iters},
                       {"step_init", b.step_init}, {"step_decay", b.step_decay},
                       {"seed", b.seed},           {"horizon_extra", b.horizon_extra}};
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    double signed_unit() { return uniform() < 0.5 ? -1.0 : 1.0; }

private:
    std::mt19937_64 eng_;
};

namespace detail {

// Largest feasible step along a ray, assuming feasible(0). Expands by
// doubling while the ray stays feasible (rays can reach far in weakly
// weighted coordinates), otherwise scans down for a foothold; bisection
// sharpens the boundary. The feasible set need not be an interval, so the
// result is a feasible step, not necessarily the global ray optimum.
inline double max_feasible_step(double hi, const std::function<bool(double)>& feasible) {
    if (hi <= 0.0)
        return 0.0;
    double lo = 0.0;
    double bad = hi;
    if (feasible(hi)) {
        lo = hi;
        int i = 0;
        for (; i < 24 && feasible(lo * 2.0); ++i)
            lo *= 2.0;
        if (i == 24)
            return lo;  // effectively unbounded; stop at the cap
        bad = lo * 2.0;
    } else {
        const int kScan = 12;
        for (int i = kScan - 1; i >= 1; --i) {
            const double t = hi * static_cast<double>(i) / kScan;
            if (feasible(t)) {
                lo = t;
                break;
            }
        }
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + bad);
        if (feasible(mid))
            lo = mid;
        else
            bad = mid;
    }
    return lo;
}

}  // namespace detail

// One constrained maximization problem over tail-preserving coordinate moves.
struct MaxProblem {
    std::function<double(const SeqVec&)> objective;
    std::function<bool(const SeqVec&)> feasible;
    std::vector<SeqVec> seeds;       // every entry must be feasible
    int active_horizon = 1;          // moves touch indices 1..active+extra
    double line_step = 2.0;          // max magnitude for line probes
};

struct MaxResult {
    double value = 0.0;
    SeqVec witness;
};

// Multistart hill climb: random coordinate bumps plus 1-D line probes with a
// feasibility-bisected step. Deterministic for fixed budget and seeds.
inline MaxResult multistart_max(const MaxProblem& p, const SearchBudget& b) {
    MaxResult best;
    bool have_best = false;

    std::vector<SeqVec> seeds = p.seeds;
    if (seeds.empty())
        seeds.emplace_back();

    // every feasible seed contributes to the bound even when there are more
    // seeds than restarts
    for (const SeqVec& s : seeds) {
        if (!p.feasible(s))
            continue;
        const double fs = p.objective(s);
        if (!have_best || fs > best.value) {
            best = {fs, s};
            have_best = true;
        }
    }

    for (int r = 0; r < b.restarts; ++r) {
        Rng rng(b.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1));
        const int extra = b.horizon_extra * (2 * r >= b.restarts ? 2 : 1);
        const int max_index = std::max(1, p.active_horizon + extra);

        SeqVec y = seeds[static_cast<std::size_t>(r) % seeds.size()];
        if (!p.feasible(y))
            continue;
        double fy = p.objective(y);
        if (!have_best || fy > best.value) {
            best = {fy, y};
            have_best = true;
        }

        double step = b.step_init;
        for (int it = 0; it < b.iters; ++it) {
            const int k = rng.uniform_int(1, max_index);
            if (it % 3 == 0) {
                // line probe: push as far as feasibility allows along +-e_k
                const double dir = rng.signed_unit();
                const SeqVec base = y;
                const double t = detail::max_feasible_step(
                    p.line_step, [&](double s) { return p.feasible(base.with(k, base(k) + dir * s)); });
                if (t > 0.0) {
                    SeqVec cand = base.with(k, base(k) + dir * t);
                    const double fc = p.objective(cand);
                    if (fc > fy) {
                        y = std::move(cand);
                        fy = fc;
                    }
                }
            } else {
                const double delta = step * rng.uniform(-1.0, 1.0);
                SeqVec cand = y.with(k, y(k) + delta);
                if (p.feasible(cand)) {
                    const double fc = p.objective(cand);
                    if (fc > fy) {
                        y = std::move(cand);
                        fy = fc;
                    }
                }
            }
            step *= b.step_decay;
            if (fy > best.value) {
                best = {fy, y};
            }
        }
    }
    if (!have_best)
        throw std::runtime_error("multistart_max: no feasible seed");
    return best;
}

}  // namespace seqgeo

#endif  // SEQGEO_SEARCH_HPP_
