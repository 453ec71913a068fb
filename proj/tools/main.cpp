#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sgtree/errors.hpp"
#include "sgtree/oracle.hpp"
#include "sgtree/sgtrees.hpp"
#include "sgtree/subtree_model.hpp"
#include "suites.hpp"
#include "trace.hpp"

using namespace sgt;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRefused = 2, kFailed = 3 };

struct Options {
    std::string model = "sg";
    std::vector<std::string> w, theta;
    int d = 1;
    int n = 10;
    int n_max = 6;
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    std::string out, dot, suite, trace;
    bool decimal = false;
    int plane_trees = 0, subtrees = 0, arith_trees = 0, dmax = 2;
};

std::vector<Rational> rationals(const std::vector<std::string>& parts) {
    std::vector<Rational> out;
    for (const auto& p : parts) out.push_back(parse_rational(p));
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

int cmd_grow(const Options& o) {
    if (o.n < 1) throw DomainError("--n must be positive");
    cli::Trace tr;
    if (o.model == "subtree") {
        tr.kind = cli::TraceKind::Subtree;
        int step = 1;
        for (auto& s : subtree_grow_chain(Theta(rationals(o.theta)), o.n, o.seed))
            tr.records.push_back({step++, s.n, {s.added}, std::move(s.tree)});
    } else {
        if (o.model == "sg" && o.d != 1) throw DomainError("model sg has d=1; use sg-arith");
        if (o.w.empty()) throw DomainError("--w is required");
        int step = 1;
        for (auto& s : grow_chain(rationals(o.w), o.d, o.n, o.seed))
            tr.records.push_back({step++, s.n, std::move(s.added), std::move(s.tree)});
    }

    std::string text;
    for (const auto& r : tr.records) text += cli::to_json_line(r, tr.kind) + "\n";
    std::istringstream reload(text);
    cli::load_trace(reload);

    std::ostream& log = o.out.empty() ? std::cerr : std::cout;
    for (const auto& r : tr.records) {
        log << "step " << r.step << " n=" << r.n << " +";
        for (const auto& u : r.added) log << ' ' << format_word(u);
        log << '\n';
    }
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
    if (!o.dot.empty()) write_file(o.dot, to_dot(tr.records.back().tree));
    return kOk;
}

int cmd_verify(const Options& o) {
    cli::SuiteConfig cfg;
    cfg.model = o.model;
    cfg.w = rationals(o.w);
    cfg.theta = rationals(o.theta);
    cfg.d = o.d;
    cfg.n_max = o.n_max;
    cfg.seed = o.seed;
    cfg.samples = o.samples;
    cfg.decimal = o.decimal;
    const auto rep = cli::run_suite(o.suite, cfg);
    const std::string text = rep.dump(2) + "\n";
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
    return rep.at("ok").get<bool>() ? kOk : kFailed;
}

int cmd_enumerate(const Options& o) {
    const int chosen = (o.plane_trees > 0) + (o.subtrees > 0) + (o.arith_trees > 0);
    if (chosen != 1) throw DomainError("give exactly one of --plane-trees, --subtrees, --arith-trees");
    std::vector<RootedSubtree> items;
    if (o.plane_trees > 0)
        for (auto& t : enumerate_plane_trees(o.plane_trees)) items.push_back(std::move(t));
    else if (o.arith_trees > 0)
        for (auto& t : enumerate_plane_trees(o.arith_trees, o.d)) items.push_back(std::move(t));
    else
        items = enumerate_subtrees(o.subtrees, o.dmax);
    std::string dot;
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::cout << format_tree(items[i]) << '\n';
        if (!o.dot.empty()) dot += to_dot(items[i], "T" + std::to_string(i + 1));
    }
    std::cout << "count: " << items.size() << '\n';
    if (!o.dot.empty()) write_file(o.dot, dot);
    return kOk;
}

int cmd_validate(const Options& o) {
    std::ifstream f(o.trace);
    if (!f) throw DomainError("cannot read " + o.trace);
    try {
        const auto tr = cli::load_trace(f);
        std::cout << "valid " << (tr.kind == cli::TraceKind::Plane ? "plane" : "subtree") << " trace, "
                  << tr.records.size() << " records, final n=" << tr.records.back().n << '\n';
    } catch (const DomainError& e) {
        std::cerr << "invalid trace: " << e.what() << '\n';
        return kFailed;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Increasing growth of simply generated trees and random subtrees"};
    Options o;
    app.set_config("--config", "", "key=value file; flags override it");
    app.add_option("--model", o.model, "sg | sg-arith | subtree")
        ->check(CLI::IsMember({"sg", "sg-arith", "subtree"}));
    app.add_option("--w", o.w, "offspring weights w_0,w_1,...")->delimiter(',');
    app.add_option("--theta", o.theta, "subtree weights theta_1,theta_2,...")->delimiter(',');
    app.add_option("--d", o.d, "arithmetic step")->check(CLI::PositiveNumber);
    app.add_option("--n", o.n, "horizon in vertices");
    app.add_option("--n-max", o.n_max, "largest size checked by a suite");
    app.add_option("--seed", o.seed);
    app.add_option("--samples", o.samples, "chains for the stats suite");
    app.add_option("--out", o.out, "output file");
    app.add_option("--dot", o.dot, "DOT output file");
    app.add_flag("--decimal", o.decimal, "add lossy decimal renderings to reports");
    app.add_option("--suite", o.suite)->check(CLI::IsMember(cli::suite_names()));
    app.add_option("--trace", o.trace, "trace file to validate");
    app.add_option("--plane-trees", o.plane_trees);
    app.add_option("--subtrees", o.subtrees);
    app.add_option("--arith-trees", o.arith_trees);
    app.add_option("--dmax", o.dmax, "letter bound for --subtrees");

    auto* grow = app.add_subcommand("grow", "grow one chain and write its trace")->fallthrough();
    auto* verify = app.add_subcommand("verify", "run a verification suite")->fallthrough();
    auto* enumerate = app.add_subcommand("enumerate", "list trees or subtrees")->fallthrough();
    auto* validate = app.add_subcommand("validate", "re-check a trace file")->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (grow->parsed()) return cmd_grow(o);
        if (verify->parsed()) {
            if (o.suite.empty()) throw DomainError("--suite is required");
            return cmd_verify(o);
        }
        if (enumerate->parsed()) return cmd_enumerate(o);
        if (validate->parsed()) return cmd_validate(o);
    } catch (const Refused& e) {
        std::cerr << "refused: " << e.what() << "\nwitness index: " << e.index << '\n';
        return kRefused;
    } catch (const NotCoupleable& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kFailed;
    } catch (const HorizonExceeded& e) {
        std::cerr << "horizon exceeded: " << e.what() << "\nestimate: " << e.estimate.get_str() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
