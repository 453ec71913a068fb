#include "suites.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "sgtree/errors.hpp"
#include "sgtree/oracle.hpp"
#include "sgtree/sgtrees.hpp"
#include "sgtree/subtree_model.hpp"

namespace sgt::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxListed = 20;

json rational(const Rational& q, bool decimal) {
    if (!decimal) return to_string(q);
    return json{{"exact", to_string(q)}, {"decimal", to_double(q)}};
}

json report_json(const CheckReport& rep, bool decimal) {
    json fails = json::array();
    for (std::size_t i = 0; i < rep.failures.size() && i < kMaxListed; ++i) {
        const auto& f = rep.failures[i];
        fails.push_back({{"where", f.where}, {"lhs", rational(f.lhs, decimal)}, {"rhs", rational(f.rhs, decimal)}});
    }
    return {{"ok", rep.ok()}, {"checked", rep.checked}, {"failure_count", rep.failures.size()}, {"failures", fails}};
}

const std::vector<Rational>& need_w(const SuiteConfig& cfg) {
    if (cfg.w.empty()) throw DomainError("this suite needs --w");
    return cfg.w;
}

std::vector<Rational> w_or_ones(const SuiteConfig& cfg) {
    if (!cfg.w.empty()) return cfg.w;
    return std::vector<Rational>(static_cast<std::size_t>(std::max(cfg.n_max, 2)), Rational(1));
}

json suite_tables(const SuiteConfig& cfg) {
    const auto& w = need_w(cfg);
    validate_weights(w, cfg.d);
    const auto t = compute_tables(w, cfg.d, cfg.n_max);
    CheckReport rep = check_table_identities(t);
    if (cfg.d == 1) {
        const auto a = compute_tables(w, 1, cfg.n_max, TablePath::Arithmetic);
        for (int n = 1; n <= cfg.n_max; ++n) rep.check_eq(a.b_at(n), t.b_at(n), "arithmetic b_" + std::to_string(n));
        for (std::size_t n = 0; n < t.f.size(); ++n)
            for (std::size_t k = 0; k < t.f[n].size(); ++k)
                rep.check_eq(a.f[n][k], t.f[n][k], "arithmetic f_" + std::to_string(n) + "," + std::to_string(k));
    }
    // b_n against a brute-force sum over enumerated trees
    for (int n = 1; n <= std::min(cfg.n_max, kPlaneTreeHorizon - 1); n += cfg.d) {
        Rational s = 0;
        for (const auto& tree : enumerate_plane_trees(n, cfg.d)) s += tree_weight(tree, w);
        rep.check_eq(s, t.b_at(n), "enumerated b_" + std::to_string(n));
    }
    return report_json(rep, cfg.decimal);
}

json suite_tp2(const SuiteConfig& cfg) {
    const auto& w = need_w(cfg);
    validate_weights(w, cfg.d);
    return report_json(check_tp2_array(compute_tables(w, cfg.d, cfg.n_max + 1), cfg.n_max), cfg.decimal);
}

json suite_ratio_chain(const SuiteConfig& cfg) {
    const auto& w = need_w(cfg);
    validate_weights(w, cfg.d);
    const auto t = compute_tables(w, cfg.d, ratio_chain_horizon(cfg.d, cfg.n_max));
    return report_json(check_ratio_chain(t, cfg.n_max), cfg.decimal);
}

json suite_kernel_interchange(const SuiteConfig& cfg) {
    const auto& w = need_w(cfg);
    require_log_concave(w, cfg.d);
    json steps = json::array();
    bool ok = true;
    for (int n = 1; n <= cfg.n_max; n += cfg.d) {
        const auto rep = tree_interchange(w, cfg.d, n);
        ok = ok && rep.ok;
        json s{{"n", n}, {"sources", rep.sources}, {"targets", rep.targets}, {"ok", rep.ok}};
        if (!rep.ok) s["discrepancy"] = rep.first_discrepancy;
        steps.push_back(s);
    }
    return {{"ok", ok}, {"steps", steps}};
}

json suite_bijection(const SuiteConfig& cfg) {
    std::vector<int> widths = cfg.d >= 2 ? std::vector<int>{cfg.d} : std::vector<int>{2, 3};
    json rows = json::array();
    bool ok = true;
    for (int dmax : widths)
        for (int n = 1; n <= cfg.n_max; ++n) {
            std::size_t count = 0, bad = 0;
            for (const auto& tau : enumerate_subtrees(n, dmax)) {
                ++count;
                const auto dt = bij_P(tau);
                if (!is_grading_compatible(dt) || dt.T != push(tau) || bij_P_inv(dt) != tau) ++bad;
            }
            ok = ok && bad == 0;
            rows.push_back({{"dmax", dmax}, {"n", n}, {"subtrees", count}, {"failures", bad}});
        }
    return {{"ok", ok}, {"round_trips", rows}};
}

json suite_subset_coupling(const SuiteConfig& cfg) {
    if (cfg.theta.empty()) throw DomainError("this suite needs --theta");
    const Theta theta(cfg.theta);
    const NestedSubsetCoupling c(theta);
    CheckReport rep;
    for (std::size_t j = 0; j < c.thresholds().size(); ++j) {
        const auto& p = c.thresholds()[j];
        for (std::size_t k = 1; k < p.size(); ++k)
            rep.check_le(p[k - 1], p[k], "threshold depth " + std::to_string(j) + ", k=" + std::to_string(k + 1));
    }
    const auto law = c.joint_law();
    Rational total = 0;
    for (const auto& [x, p] : law) {
        total += p;
        ++rep.checked;
        if (std::set<int>(x.begin(), x.end()).size() != x.size())
            rep.failures.push_back({"atom with a repeated index", p, 0});
    }
    rep.check_eq(total, 1, "joint law total");
    for (int k = 0; k <= theta.size(); ++k) {
        std::map<std::set<int>, Rational> marg;
        for (const auto& [x, p] : law) marg[std::set<int>(x.begin(), x.begin() + k)] += p;
        for (const auto& [s, p] : exact_subset_law(theta, k)) {
            auto it = marg.find(s);
            rep.check_eq(it == marg.end() ? Rational(0) : it->second, p, "marginal k=" + std::to_string(k));
        }
    }
    auto out = report_json(rep, cfg.decimal);
    out["atoms"] = law.size();
    return out;
}

json suite_shuffle_invariance(const SuiteConfig& cfg) {
    const auto w = w_or_ones(cfg);
    const std::map<Deco, Rational> nu{{{1, 2, 3}, Rational(1, 3)}, {{3, 1, 2}, Rational(2, 3)}};
    json rows = json::array();
    bool ok = true;
    std::vector<std::pair<PlaneTree, DecoMap>> instances, planted;
    for (int n = 1; n <= cfg.n_max; ++n) {
        const auto rep = shuffle_invariance_check(w, nu, sigma_shuffle_rule(), n);
        ok = ok && rep.ok();
        rows.push_back({{"n", n}, {"atoms", rep.atoms}, {"mismatches", rep.mismatches}, {"total", to_string(rep.total)}});
        for (const auto& t : enumerate_plane_trees(n)) {
            for (auto& x : all_decorations(t, {{1, 2, 3}, {3, 1, 2}})) instances.emplace_back(t, std::move(x));
            for (auto& x : all_decorations(t, {{1}, {2}})) planted.emplace_back(t, std::move(x));
        }
    }
    const auto eq = check_equivariance(sigma_shuffle_rule(), instances);
    const auto un = check_unshuffling(sigma_shuffle_rule(), instances);
    const bool detected = !check_equivariance(planted_rule({1}), planted).ok();
    ok = ok && eq.ok() && un.ok() && (cfg.n_max < 3 || detected);
    return {{"ok", ok},
            {"invariance", rows},
            {"equivariance_checked", eq.checked},
            {"equivariance_violations", eq.violations.size()},
            {"unshuffling_violations", un.violations.size()},
            {"planted_rule_detected", detected}};
}

json gof_json(const GofReport& g, bool decimal) {
    return {{"samples", g.samples}, {"categories", g.categories}, {"chi2", g.chi2},     {"df", g.df},
            {"p_value", g.p_value}, {"tv", rational(g.tv, decimal)}, {"undersampled", g.undersampled}};
}

json suite_stats(const SuiteConfig& cfg) {
    const int n = cfg.n_max;
    GofReport g;
    if (cfg.model == "subtree") {
        if (cfg.theta.empty()) throw DomainError("this suite needs --theta for the subtree model");
        const Theta theta(cfg.theta);
        auto model = subtree_growth_model(theta, n);
        auto xs = std::make_shared<const NestedSubsetCoupling>(theta);
        const auto law = exact_st_law(theta, n);
        SubtreeChain chain(model, xs, cfg.seed);
        std::map<RootedSubtree, std::uint64_t> counts;
        for (std::uint64_t i = 0; i < cfg.samples; ++i) {
            chain.reset(i);
            while (chain.size() < n) chain.step();
            counts[chain.subtree()]++;
        }
        g = goodness_of_fit(counts, law);
    } else {
        const auto& w = need_w(cfg);
        require_log_concave(w, cfg.d);
        if ((n - 1) % cfg.d != 0) throw DomainError("n must be 1 mod d");
        const auto law = exact_sg_law(w, cfg.d, n);
        auto model = std::make_shared<const GrowthModel>(w, cfg.d, n);
        GrowthChain chain(model, 0);
        std::map<PlaneTree, std::uint64_t> counts;
        for (std::uint64_t i = 0; i < cfg.samples; ++i) {
            chain.reset(CounterRng::derive(cfg.seed, "stats", {i}));
            while (chain.size() < n) chain.step();
            counts[chain.tree()]++;
        }
        g = goodness_of_fit(counts, law);
    }
    auto out = gof_json(g, cfg.decimal);
    out["ok"] = !g.undersampled && g.p_value > 0.001;
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"tables",    "tp2",          "ratio-chain",     "kernel-interchange",
                                                "bijection", "subset-coupling", "shuffle-invariance", "stats"};
    return names;
}

json run_suite(const std::string& name, const SuiteConfig& cfg) {
    json out;
    if (name == "tables") out = suite_tables(cfg);
    else if (name == "tp2") out = suite_tp2(cfg);
    else if (name == "ratio-chain") out = suite_ratio_chain(cfg);
    else if (name == "kernel-interchange") out = suite_kernel_interchange(cfg);
    else if (name == "bijection") out = suite_bijection(cfg);
    else if (name == "subset-coupling") out = suite_subset_coupling(cfg);
    else if (name == "shuffle-invariance") out = suite_shuffle_invariance(cfg);
    else if (name == "stats") out = suite_stats(cfg);
    else throw DomainError("unknown suite " + name);
    out["suite"] = name;
    return out;
}

}  // namespace sgt::cli
