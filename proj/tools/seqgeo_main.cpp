// seqgeo command line: norm evaluation, point classification, slice
// diameters, the verification suites, and CSV sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqgeo/norms.hpp"
#include "seqgeo/operators.hpp"
#include "seqgeo/probes.hpp"
#include "seqgeo/search.hpp"
#include "seqgeo/seqvec.hpp"
#include "seqgeo/verify.hpp"
#include "seqgeo/witnesses.hpp"

namespace {

using nlohmann::json;
using namespace seqgeo;

std::string num(double v) { return json(v).dump(); }

SeqVec parse_vec(const std::string& text) {
    return json::parse(text).get<SeqVec>();
}

FinFunctional parse_fun(const std::string& text) {
    return json::parse(text).get<FinFunctional>();
}

// oracle ids: sup | spread | q | nonsym | mlur3 | lur(base[,fns]) |
// combine(lattice,base,W) with W = zero | coord:K | coords:K1;K2;...
NormOracle parse_oracle(const std::string& id);

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(')
            ++depth;
        if (c == ')')
            --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<FinFunctional> parse_weak(const std::string& spec) {
    if (spec == "zero" || spec.empty())
        return {};
    std::vector<FinFunctional> out;
    std::string body = spec;
    if (body.rfind("coords:", 0) == 0)
        body = body.substr(7);
    else if (body.rfind("coord:", 0) == 0)
        body = body.substr(6);
    else
        throw std::invalid_argument("weak seminorm spec must be zero|coord:K|coords:K1;K2;...");
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ';'))
        out.push_back(FinFunctional::coordinate(std::stoi(tok)));
    return out;
}

NormOracle parse_oracle(const std::string& id) {
    if (id == "sup")
        return sup_oracle();
    if (id == "spread")
        return spread_oracle();
    if (id == "q")
        return q_oracle();
    if (id == "nonsym")
        return nonsym_oracle();
    if (id == "mlur3")
        return mlur3_oracle();
    if (id.rfind("lur(", 0) == 0 && id.back() == ')') {
        const auto args = split(id.substr(4, id.size() - 5), ',');
        LurRenormConfig cfg;
        cfg.base = parse_oracle(args.at(0));
        if (args.size() > 1) {
            if (args[1] == "zero")
                cfg.fns = LurRenormConfig::Fns::zero;
            else if (args[1] == "coord")
                cfg.fns = LurRenormConfig::Fns::coordinate;
            else
                throw std::invalid_argument("lur fns must be coord|zero");
        }
        return lur_oracle(cfg);
    }
    if (id.rfind("combine(", 0) == 0 && id.back() == ')') {
        const auto args = split(id.substr(8, id.size() - 9), ',');
        if (args.size() != 3)
            throw std::invalid_argument("combine(lattice,base,W) takes three arguments");
        Lattice lat;
        if (args[0] == "l1")
            lat = Lattice::L1;
        else if (args[0] == "l2")
            lat = Lattice::L2;
        else if (args[0] == "linf")
            lat = Lattice::Linf;
        else
            throw std::invalid_argument("lattice must be l1|l2|linf");
        return combine_norm(lat, parse_oracle(args[1]), parse_weak(args[2]));
    }
    throw std::invalid_argument("unknown norm id: " + id);
}

// operator specs: P:n | R:n | limP | I | lin:a,A,b,B (A, B simple specs) |
// rank1:{e json};{e* json}
FinOperator parse_operator(const std::string& spec) {
    if (spec == "I")
        return FinOperator::identity();
    if (spec == "limP")
        return FinOperator::limP();
    if (spec.rfind("P:", 0) == 0)
        return FinOperator::P(std::stoi(spec.substr(2)));
    if (spec.rfind("R:", 0) == 0)
        return FinOperator::R(std::stoi(spec.substr(2)));
    if (spec.rfind("rank1:", 0) == 0) {
        const std::string body = spec.substr(6);
        const auto semi = body.find(';');
        if (semi == std::string::npos)
            throw std::invalid_argument("rank1:{e json};{e* json}");
        const SeqVec e = parse_vec(body.substr(0, semi));
        const FinFunctional estar = parse_fun(body.substr(semi + 1));
        return FinOperator::rank1(estar, e);
    }
    if (spec.rfind("lin:", 0) == 0) {
        const auto args = split(spec.substr(4), ',');
        if (args.size() != 4)
            throw std::invalid_argument("lin:a,A,b,B");
        return FinOperator::lin(std::stod(args[0]), parse_operator(args[1]), std::stod(args[2]),
                                parse_operator(args[3]));
    }
    throw std::invalid_argument("unknown operator spec: " + spec);
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ','))
        out.push_back(std::stod(tok));
    if (out.empty())
        throw std::invalid_argument("empty grid");
    return out;
}

std::vector<int> parse_int_grid(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ','))
        out.push_back(std::stoi(tok));
    if (out.empty())
        throw std::invalid_argument("empty grid");
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

struct CsvWriter {
    std::ostringstream os;
    CsvWriter() { os << "quantity,grid_param,estimate,certified_bound,side,seed\n"; }
    void row(const std::string& quantity, const std::string& param, double estimate,
             double certified, const std::string& side, std::uint64_t seed) {
        os << quantity << "," << param << "," << num(estimate) << "," << num(certified) << ","
           << side << "," << seed << "\n";
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequence-space norm laboratory"};
    // key=value config, sectioned per subcommand ([verify], [sweep], ...);
    // explicit flags override config values
    app.set_config("--config");
    app.require_subcommand(1);

    // shared budget flags
    SearchBudget budget;
    std::string out_path;
    const auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--seed", budget.seed, "random seed");
        cmd->add_option("--restarts", budget.restarts, "search restarts");
        cmd->add_option("--iters", budget.iters, "iterations per restart");
        cmd->add_option("--horizon", budget.horizon_extra, "fresh indices beyond the active horizon");
        cmd->add_option("--out", out_path, "write the report to this file");
    };

    // norm
    auto* cmd_norm = app.add_subcommand("norm", "evaluate a norm on a vector literal");
    std::string norm_id, vec_json;
    bool show_attaining = false;
    cmd_norm->add_option("id", norm_id, "norm id")->required();
    cmd_norm->add_option("vector", vec_json, "vector literal, e.g. {\"head\":[1],\"tail\":0}")
        ->required();
    cmd_norm->add_flag("--attaining", show_attaining, "print the attaining index sequence");

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "run the probe bundle at a boundary point");
    std::string cls_id, cls_vec;
    cmd_classify->add_option("id", cls_id, "gauge id")->required();
    cmd_classify->add_option("vector", cls_vec, "boundary point literal")->required();
    add_budget(cmd_classify);

    // slice-diam
    auto* cmd_slice = app.add_subcommand("slice-diam", "estimate the diameter of one slice");
    std::string sl_id, sl_fun, sl_metric = "both";
    double sl_eps = 0.0, sl_a = 0.0;
    bool sl_has_eps = false, sl_has_a = false;
    cmd_slice->add_option("id", sl_id, "gauge id")->required();
    cmd_slice->add_option("--f", sl_fun, "functional literal")->required();
    cmd_slice->add_option("--eps", sl_eps, "slice depth below the estimated sup")
        ->each([&](const std::string&) { sl_has_eps = true; });
    cmd_slice->add_option("--a", sl_a, "explicit slice threshold")
        ->each([&](const std::string&) { sl_has_a = true; });
    cmd_slice->add_option("--metric", sl_metric, "sup|mlur3|gauge|both");
    add_budget(cmd_slice);

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run verification suites");
    std::string suite_id = "all";
    cmd_verify->add_option("suite", suite_id, "suite id or 'all'");
    add_budget(cmd_verify);

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "grid sweeps to CSV");
    std::string sw_quantity, sw_gauge = "mlur3", sw_vec, sw_op = "P:4";
    std::string sw_ngrid = "1,2,5,10,20", sw_epsgrid = "0.1,0.01,0.001";
    std::string sw_mgrid = "4,8,16", sw_dgrid = "0.0001,0.001,0.01,0.1";
    double sw_lambda = 1.0;
    cmd_sweep->add_option("quantity", sw_quantity, "cond29|thmfn|midpoint|lurgap")->required();
    cmd_sweep->add_option("--gauge", sw_gauge, "gauge id");
    cmd_sweep->add_option("--x", sw_vec, "center vector literal (default: canonical boundary point)");
    cmd_sweep->add_option("--op", sw_op, "operator spec for cond29 when the n-grid is not used");
    cmd_sweep->add_option("--lambda", sw_lambda, "lambda in (0,1]");
    cmd_sweep->add_option("--n-grid", sw_ngrid, "projection sizes for cond29");
    cmd_sweep->add_option("--eps-grid", sw_epsgrid, "eps grid");
    cmd_sweep->add_option("--m-grid", sw_mgrid, "projection sizes for thmfn");
    cmd_sweep->add_option("--delta-grid", sw_dgrid, "delta grid for midpoint/lurgap");
    add_budget(cmd_sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_norm) {
            const SeqVec x = parse_vec(vec_json);
            const NormOracle oracle = parse_oracle(norm_id);
            std::ostringstream os;
            os << num(oracle(x)) << "\n";
            if (show_attaining || norm_id == "nonsym") {
                if (norm_id == "nonsym" || norm_id == "mlur3") {
                    const NonsymNorm nn = nonsym_sup_norm(x);
                    os << "attaining: " << json(nn.attaining).dump() << "\n";
                }
            }
            write_output(out_path, os.str());
            return 0;
        }

        if (*cmd_classify) {
            const SeqVec x = parse_vec(cls_vec);
            const ConvexBody body{parse_oracle(cls_id)};
            const ClassifyReport rep = classify(body, x, budget);
            write_output(out_path, rep.to_json().dump(2) + "\n");
            return 0;
        }

        if (*cmd_slice) {
            const ConvexBody body{parse_oracle(sl_id)};
            const FinFunctional f = parse_fun(sl_fun);
            if (sl_has_eps == sl_has_a)
                throw std::invalid_argument("slice-diam needs exactly one of --eps or --a");
            const SliceSpec slice = sl_has_eps ? SliceSpec::depth(body, f, sl_eps, budget)
                                               : SliceSpec::at_threshold(body, f, sl_a, budget);
            json out = json::array();
            std::vector<NormOracle> metrics;
            if (sl_metric == "both") {
                metrics.push_back(sup_oracle());
                metrics.push_back(body.gauge);
            } else if (sl_metric == "sup") {
                metrics.push_back(sup_oracle());
            } else if (sl_metric == "mlur3") {
                metrics.push_back(mlur3_oracle());
            } else if (sl_metric == "gauge") {
                metrics.push_back(body.gauge);
            } else {
                throw std::invalid_argument("metric must be sup|mlur3|gauge|both");
            }
            for (const NormOracle& m : metrics)
                out.push_back(slice_diameter(body, slice, budget, m).to_json());
            write_output(out_path, out.dump(2) + "\n");
            return 0;
        }

        if (*cmd_verify) {
            std::vector<SuiteResult> results;
            if (suite_id == "all") {
                results = run_all(budget.seed);
            } else {
                results.push_back(run_suite(suite_id, budget.seed));
            }
            const std::string text = report_text(results);
            std::cout << text;
            if (!out_path.empty())
                write_output(out_path, report_json(results, budget.seed).dump(2) + "\n");
            for (const SuiteResult& r : results)
                if (!r.pass)
                    return 1;
            return 0;
        }

        if (*cmd_sweep) {
            CsvWriter csv;
            if (sw_quantity == "cond29") {
                const NormOracle gauge = parse_oracle(sw_gauge);
                const NormOracle cnorm = spread_oracle();
                SeqVec x;
                if (sw_vec.empty()) {
                    const SeqVec e1 = unit_vec(1);
                    x = (1.0 / gauge(e1)) * e1;
                } else {
                    x = parse_vec(sw_vec);
                }
                std::vector<double> eps_grid = parse_grid(sw_epsgrid);
                std::sort(eps_grid.begin(), eps_grid.end());
                for (int n : parse_int_grid(sw_ngrid)) {
                    const FinOperator T = FinOperator::P(n);
                    SeqVec warm = x;
                    for (double eps : eps_grid) {
                        const Cond29Result res =
                            cond29_sup(T, x, sw_lambda, eps, gauge, cnorm, budget, &warm);
                        warm = res.witness;
                        csv.row("cond29", "n=" + std::to_string(n) + ";eps=" + num(eps),
                                res.estimate, res.estimate, "lower", budget.seed);
                    }
                }
            } else if (sw_quantity == "thmfn") {
                const ConvexBody body{parse_oracle(sw_gauge)};
                SeqVec x;
                if (sw_vec.empty()) {
                    const SeqVec e1 = unit_vec(1);
                    x = (1.0 / body.gauge(e1)) * e1;
                } else {
                    x = parse_vec(sw_vec);
                }
                for (int m : parse_int_grid(sw_mgrid)) {
                    for (double eps : parse_grid(sw_epsgrid)) {
                        const FnBracket br =
                            thm_fn_estimate(FinOperator::P(m), body, x, sw_lambda, eps, budget);
                        csv.row("thmfn", "m=" + std::to_string(m) + ";eps=" + num(eps), br.upper,
                                br.lower, "lower", budget.seed);
                    }
                }
            } else if (sw_quantity == "midpoint" || sw_quantity == "lurgap") {
                const ConvexBody body{parse_oracle(sw_gauge)};
                if (sw_vec.empty())
                    throw std::invalid_argument("sweep " + sw_quantity + " requires --x");
                const SeqVec x = parse_vec(sw_vec);
                std::vector<double> dgrid = parse_grid(sw_dgrid);
                const ProbeReport rep = sw_quantity == "midpoint"
                                            ? midpoint_modulus_grid(body, x, dgrid, budget)
                                            : lur_gap_grid(body, x, dgrid, budget);
                for (const GridPoint& g : rep.grid)
                    csv.row(sw_quantity, "delta=" + num(g.param), g.estimate, g.certified, "lower",
                            budget.seed);
            } else {
                throw std::invalid_argument("unknown sweep quantity: " + sw_quantity);
            }
            write_output(out_path, csv.os.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
