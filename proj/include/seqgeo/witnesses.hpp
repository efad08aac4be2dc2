// Constructive certificates: exact arithmetic plus inequality checks,
// independent of any search. Each certificate carries a trace with both
// sides of every inequality it relies on.

#ifndef SEQGEO_WITNESSES_HPP_
#define SEQGEO_WITNESSES_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqgeo/norms.hpp"
#include "seqgeo/operators.hpp"
#include "seqgeo/search.hpp"
#include "seqgeo/seqvec.hpp"

namespace seqgeo {

struct Claim1Params {
    int m = 1;
    double delta = 0.0;
};

/// Smallest m >= 1 with sup_{k>m} |x(k)| < eps/8, and delta = eps/2^{m+3}.
inline Claim1Params claim1_params(const SeqVec& x, double eps) {
    if (eps <= 0.0)
        throw std::invalid_argument("claim1_params: eps must be positive");
    const int h = x.horizon();
    int m = 1;
    for (; m <= h; ++m) {
        double rest = std::abs(x.tail());
        for (int k = m + 1; k <= h; ++k)
            rest = std::max(rest, std::abs(x(k)));
        if (rest < eps / 8.0)
            break;
    }
    return {m, eps * std::ldexp(1.0, -(m + 3))};
}

struct Claim1Check {
    bool applicable = false;  // false: hypothesis ||R_m y||_inf > eps fails (vacuous)
    double margin = 0.0;      // max(||x+y||, ||x-y||) - (||x|| + delta)
    double lhs = 0.0;
    double rhs = 0.0;
    Claim1Params params;
    double r_m_y_sup = 0.0;

    nlohmann::json trace() const {
        return nlohmann::json{{"m", params.m},           {"delta", params.delta},
                              {"r_m_y_sup", r_m_y_sup},  {"applicable", applicable},
                              {"max_pm_norm", lhs},      {"norm_x_plus_delta", rhs},
                              {"margin", margin}};
    }
};

/// Midpoint lower estimate: whenever the perturbation y has sup norm > eps
/// beyond index m, one of ||x + y||, ||x - y|| exceeds ||x|| + delta.
/// y may carry a nonzero tail; the norm evaluation stays exact through the
/// closed-form tail absorption.
inline Claim1Check claim1_check(const SeqVec& x, double eps, const SeqVec& y) {
    if (!x.is_c0())
        throw std::invalid_argument("claim1_check: x must have tail 0");
    Claim1Check out;
    out.params = claim1_params(x, eps);

    const FinOperator Rm = FinOperator::R(out.params.m);
    out.r_m_y_sup = sup_norm(Rm.apply(y));
    if (!(out.r_m_y_sup > eps))
        return out;  // vacuous-true

    out.applicable = true;
    const double plus = detail::nonsym_sup_norm_ext(x + y).value;
    const double minus = detail::nonsym_sup_norm_ext(x - y).value;
    out.lhs = std::max(plus, minus);
    out.rhs = nonsym_sup_norm(x).value + out.params.delta;
    out.margin = out.lhs - out.rhs;
    return out;
}

struct Claim2Witness {
    SeqVec y;
    int m = 0;
    double delta = 0.0;
    double gauge_y = 0.0;
    double f_y = 0.0;
    double supdist = 0.0;  // ||x - y||_inf, equals the nonsym ||x|| exactly
    nlohmann::json trace;
};

/// y = x - ||x|| e_m with m fresh beyond every active support and delta the
/// largest dyadic value satisfying (||x|| + 2 delta)^2 + q(x)^2 + delta < 1
/// and f(x) - delta > a. Fresh m makes the remaining side conditions hold
/// with zero left-hand sides once 2^m delta > ||x||^2.
inline Claim2Witness claim2_witness(const SeqVec& x, const FinFunctional& f, double a) {
    if (x.is_zero())
        throw std::invalid_argument("claim2_witness: x must be nonzero");
    const double gauge_x = mlur_gauge(x);
    if (gauge_x >= 1.0)
        throw std::invalid_argument("claim2_witness: need mlur_gauge(x) < 1");
    const double fx = f(x);
    if (!(fx > a))
        throw std::invalid_argument("claim2_witness: need f(x) > a");

    const double nx = nonsym_sup_norm(x).value;
    const double qx2 = eval_q(x) * eval_q(x);

    double delta = 0.0;
    for (int i = 1; i <= 60; ++i) {
        const double d = std::ldexp(1.0, -i);
        const double lhs = (nx + 2.0 * d) * (nx + 2.0 * d) + qx2 + d;
        if (lhs < 1.0 && fx - d > a) {
            delta = d;
            break;
        }
    }
    if (delta == 0.0)
        throw std::runtime_error("claim2_witness: no admissible delta (x too close to the sphere)");

    int m = active_horizon({x}, {f}) + 1;
    while (std::ldexp(1.0, m) * delta <= nx * nx)
        ++m;

    Claim2Witness out;
    out.m = m;
    out.delta = delta;
    out.y = x - nx * unit_vec(m);
    out.gauge_y = mlur_gauge(out.y);
    out.f_y = f(out.y);
    out.supdist = sup_norm(x - out.y);

    out.trace = nlohmann::json{
        {"norm_x", nx},
        {"q2_x", qx2},
        {"delta", delta},
        {"m", m},
        {"cond51_lhs", (nx + 2.0 * delta) * (nx + 2.0 * delta) + qx2 + delta},
        {"cond51_rhs", 1.0},
        {"cond52_lhs", 0.0},  // R_m x = 0 for fresh m
        {"cond53_mid", nx},   // 0 < ||x|| - x(m) = ||x|| < sqrt( 2^m delta )
        {"cond53_rhs", std::sqrt(std::ldexp(1.0, m) * delta)},
        {"cond54_lhs", f.coeff(m)},
        {"gauge_y", out.gauge_y},
        {"f_y", out.f_y},
        {"f_x", fx},
        {"a", a},
        {"supdist", out.supdist},
    };

    if (!(out.gauge_y < 1.0))
        throw std::runtime_error("claim2_witness: postcondition gauge(y) < 1 failed");
    if (!(out.f_y > a))
        throw std::runtime_error("claim2_witness: postcondition f(y) > a failed");
    if (out.supdist != nx)
        throw std::runtime_error("claim2_witness: postcondition ||x-y||_inf == ||x|| failed");
    return out;
}

struct SliceLbCert {
    SeqVec x, y;
    double bound = 0.0;    // certified lower bound on the slice diameter
    double gauge_x = 0.0;  // mlur gauge of the constructed slice point
    double sup_estimate = 0.0;
    nlohmann::json trace;
};

namespace detail {

// Certified lower bound on sup{f(u) : mlur_gauge(u) <= 1} with its witness.
inline std::pair<double, SeqVec> slice_sup_search(const FinFunctional& f,
                                                  const SearchBudget& budget) {
    std::vector<SeqVec> seeds;
    for (int k = 1; k <= f.support_bound(); ++k) {
        const double c = f.coeff(k);
        if (c != 0.0)
            seeds.push_back((c > 0.0 ? 1.0 : -1.0) * unit_vec(k));
    }
    {
        SeqVec d;
        for (int k = 1; k <= f.support_bound(); ++k) {
            const double c = f.coeff(k);
            if (c != 0.0)
                d = d + (c > 0.0 ? 1.0 : -1.0) * unit_vec(k);
        }
        if (!d.is_zero())
            seeds.push_back(std::move(d));
    }
    MaxProblem p;
    p.objective = [&](const SeqVec& y) {
        const double g = mlur_gauge(y);
        return g > 0.0 ? f(y) / g : -1.0;
    };
    p.feasible = [](const SeqVec&) { return true; };
    p.seeds = std::move(seeds);
    p.active_horizon = std::max(1, f.support_bound());
    const MaxResult r = multistart_max(p, budget);
    const double g = mlur_gauge(r.witness);
    return {r.value, (1.0 / g) * r.witness};
}

}  // namespace detail

/// Diameter lower bound for the slice {mlur gauge <= 1} & {f > a}: pushes a
/// slice point out to gauge = target and applies the midpoint certificate,
/// giving two slice members at sup distance exactly the nonsym norm of the
/// point, which exceeds target/sqrt(2).
inline SliceLbCert slice_lb_certificate(const FinFunctional& f, double a, double target,
                                        const SearchBudget& budget = {}) {
    if (target >= 1.0)
        throw std::invalid_argument("slice_lb_certificate: target must be < 1");
    if (f.is_zero())
        throw std::invalid_argument("slice_lb_certificate: functional must be nonzero");
    if (f.cinf() != 0.0)
        throw std::invalid_argument("slice_lb_certificate: c0-model functional required");

    auto [sup_lb, u] = detail::slice_sup_search(f, budget);
    if (!(sup_lb > a))
        throw std::invalid_argument("slice_lb_certificate: slice not verified nonempty");

    SliceLbCert out;
    out.sup_estimate = sup_lb;
    if (target <= 0.0) {
        // degenerate request: any slice point certifies the trivial bound 0
        out.x = u;
        out.y = u;
        out.bound = 0.0;
        out.gauge_x = mlur_gauge(u);
        out.trace = nlohmann::json{{"degenerate", true}, {"sup_estimate", sup_lb}};
        return out;
    }

    const double gu = mlur_gauge(u);
    SeqVec x = (target / gu) * u;
    // f(x) = (target/gu) f(u) with f(u) = sup_lb > max(a, 0) ensured by the
    // search seeds, so scaling toward the sphere cannot leave the slice.
    if (!(f(x) > a))
        throw std::runtime_error("slice_lb_certificate: scaled point left the slice");

    const Claim2Witness w = claim2_witness(x, f, a);
    out.x = x;
    out.y = w.y;
    out.bound = w.supdist;  // = nonsym ||x|| >= target/sqrt(2), also a |||.|||-bound
    out.gauge_x = mlur_gauge(x);
    out.trace = nlohmann::json{{"sup_estimate", sup_lb},
                               {"target", target},
                               {"gauge_x", out.gauge_x},
                               {"claim2", w.trace}};
    return out;
}

struct ExampleCReport {
    double lambda = 0.0;
    double value = 0.0;
    double expected = 0.0;
    double error = 0.0;

    nlohmann::json trace() const {
        return nlohmann::json{
            {"lambda", lambda}, {"value", value}, {"expected", expected}, {"error", error}};
    }
};

/// e = (1,1,...), z = (0,1,1,...), P the limit projection on c:
/// ||(1+l) P z - l z||_inf evaluates to exactly 1 + l.
inline ExampleCReport example_c_witness(double lambda) {
    const SeqVec e({}, 1.0);
    const SeqVec z({0.0}, 1.0);
    const FinOperator P = FinOperator::limP();
    const SeqVec v = (1.0 + lambda) * P.apply(z) - lambda * z;
    ExampleCReport out;
    out.lambda = lambda;
    out.value = sup_norm(v);
    out.expected = 1.0 + lambda;
    out.error = std::abs(out.value - out.expected);
    return out;
}

struct PkReport {
    int k = 0;
    double lambda = 0.0;
    double num = 0.0;    // |||(P_k - l R_k) u|||
    double den = 0.0;    // ||| u |||
    double ratio = 0.0;

    nlohmann::json trace() const {
        return nlohmann::json{
            {"k", k}, {"lambda", lambda}, {"num", num}, {"den", den}, {"ratio", ratio}};
    }
};

/// u = e_1 + ... + e_{k+1}; the ratio |||(P_k - l R_k)u||| / |||u||| under
/// the series renorm. ratio > 1 certifies |||P_k - l R_k||| > 1.
inline PkReport pk_witness(int k, double lambda, const LurRenormConfig& cfg = {}) {
    if (k < 1)
        throw std::invalid_argument("pk_witness: k must be >= 1");
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("pk_witness: lambda must be in [0,1]");
    std::vector<double> ones(static_cast<std::size_t>(k) + 1, 1.0);
    const SeqVec u(std::move(ones), 0.0);
    const FinOperator T =
        FinOperator::lin(1.0, FinOperator::P(k), -lambda, FinOperator::R(k));
    PkReport out;
    out.k = k;
    out.lambda = lambda;
    out.num = lur_renorm(cfg, T.apply(u));
    out.den = lur_renorm(cfg, u);
    out.ratio = out.num / out.den;
    return out;
}

struct PcTraceRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct PcTrace {
    std::vector<PcTraceRow> rows;
    bool pass = false;
    std::string failed;  // name of the first inequality that broke

    nlohmann::json to_json() const {
        nlohmann::json rows_json = nlohmann::json::array();
        for (const PcTraceRow& r : rows)
            rows_json.push_back({{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}});
        return nlohmann::json{{"rows", rows_json}, {"pass", pass}, {"failed", failed}};
    }
};

/// Numeric walk through the point-of-continuity argument at one sample w:
/// hypotheses first (w in C, Phi w near x, the flip (1+l)Phi w - l w near C),
/// then the midpoint y-, the averaged midpoint bound, the modulus step
/// ||y+ - y-|| < l*eps, and the conclusion ||w - x|| < 2 eps.
inline PcTrace pc_trace_check(const ConvexBody& body, const SeqVec& x, const SeqVec& w,
                              const SeqVec& phi_w, double lambda, double eta, double delta,
                              double eps, const SearchBudget& budget = {}) {
    if (lambda <= 0.0 || lambda > 1.0)
        throw std::invalid_argument("pc_trace_check: lambda must be in (0,1]");
    PcTrace t;
    auto push = [&](const std::string& name, double lhs, double rhs, bool strict = true) {
        const bool ok = strict ? lhs < rhs : lhs <= rhs;
        t.rows.push_back({name, lhs, rhs, ok});
        if (!ok && t.failed.empty())
            t.failed = name;
        return ok;
    };

    push("eta<=min(delta,lambda*eps)/2", eta, std::min(delta, lambda * eps) / 2.0, false);
    push("w_in_body", body.gauge(w), 1.0 + 1e-12, false);
    push("sk3:|Phi_w-x|<=eta", sup_norm(phi_w - x), eta, false);

    const SeqVec psi_w = w - phi_w;
    const SeqVec flip = phi_w - lambda * psi_w;  // equals (1+lambda) Phi w - lambda w
    const DistResult d = dist_to_body(body, flip, budget);
    const bool sk4 = push("sk4:dist(flip,C)<eta", d.upper, eta);
    // a certified failure, when available, shows the distance genuinely
    // exceeds eta rather than the search having missed a close point
    if (!sk4 && d.certified_lower >= eta)
        t.rows.push_back({"sk4_certified_fail:dist_lb>=eta", d.certified_lower, eta, false});

    const SeqVec y_plus = (1.0 - lambda) * x + lambda * w;
    push("y_plus_in_body", body.gauge(y_plus), 1.0 + 1e-12, false);
    const SeqVec y_minus = d.witness;

    push("sk6:|Phi_w+l*Psi_w-y_plus|<eta", sup_norm(phi_w + lambda * psi_w - y_plus), eta);
    push("midpoint:|x-(y+ + y-)/2|<2eta", sup_norm(x - 0.5 * (y_plus + y_minus)), 2.0 * eta);
    push("sk5:|y+ - y-|<lambda*eps", sup_norm(y_plus - y_minus), lambda * eps);
    push("lower:2l|Psi_w|-2eta<|y+ - y-|",
         2.0 * lambda * sup_norm(psi_w) - 2.0 * eta, sup_norm(y_plus - y_minus));
    push("psi:|Psi_w|<1.5*eps", sup_norm(psi_w), 1.5 * eps);
    push("conclusion:|w-x|<2eps", sup_norm(w - x), 2.0 * eps);

    t.pass = t.failed.empty();
    return t;
}

}  // namespace seqgeo

#endif  // SEQGEO_WITNESSES_HPP_
