// One PASS/FAIL line per acceptance criterion; indented lines carry detail.
// Exit status is nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gen.hpp"
#include "sgtree/errors.hpp"
#include "sgtree/oracle.hpp"
#include "sgtree/sgtrees.hpp"
#include "sgtree/subtree_model.hpp"

using namespace sgt;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> notes;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double x, int digits = 4) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << x;
    return s.str();
}

std::vector<Rational> ones(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)); }

std::vector<Rational> q(std::initializer_list<Rational> xs) { return canonical(std::vector<Rational>(xs)); }

const Rational kTvBound(1, 100);
constexpr int kSeeds = 100;
constexpr std::uint64_t kSamples = 100000;
constexpr double kPMin = 0.001;

// Mean TV of an M-sample empirical law from p, to first order.
template <class X>
double tv_floor(const ExactLaw<X>& law, std::uint64_t m) {
    double s = 0;
    for (const auto& [x, p] : law) {
        const double v = to_double(p);
        s += std::sqrt(v * (1 - v) / (2 * M_PI * static_cast<double>(m)));
    }
    return s;
}

// Per-seed goodness of fit plus the pooled sample.
template <class X>
struct Battery {
    ExactLaw<X> law;
    std::vector<GofReport> seeds;
    std::map<X, std::uint64_t> pooled;

    void add(const std::map<X, std::uint64_t>& counts) {
        seeds.push_back(goodness_of_fit(counts, law));
        for (const auto& [x, c] : counts) pooled[x] += c;
    }
    int good_seeds() const {
        int g = 0;
        for (const auto& r : seeds) g += !r.undersampled && r.p_value > kPMin;
        return g;
    }
    int tv_seeds() const {
        int g = 0;
        for (const auto& r : seeds) g += r.tv < kTvBound;
        return g;
    }
};

// TV of M draws taken straight from the exact law: the same bar, no chain.
template <class X>
double control_tv(const ExactLaw<X>& law, std::uint64_t m, std::uint64_t seed) {
    std::vector<Rational> p;
    for (const auto& [x, v] : law) p.push_back(v);
    const ExactCdf cdf(p);
    CounterRng r(CounterRng::derive(seed, "accept-control"));
    std::vector<std::uint64_t> counts(p.size());
    for (std::uint64_t i = 0; i < m; ++i) counts[cdf.sample(r)]++;
    return to_double(goodness_of_fit(p, counts).tv);
}

template <class X>
std::string battery_note(const std::string& label, const Battery<X>& b) {
    const auto pooled = goodness_of_fit(b.pooled, b.law);
    return label + ": K=" + std::to_string(b.law.size()) + ", p>" + fixed(kPMin, 3) + " on " +
           std::to_string(b.good_seeds()) + "/" + std::to_string(b.seeds.size()) + " seeds, TV(seed 0)=" +
           fixed(to_double(b.seeds.front().tv)) + ", TV<0.01 on " + std::to_string(b.tv_seeds()) +
           " seeds, expected TV at M=1e5 about " + fixed(tv_floor(b.law, kSamples)) + ", pooled TV over " +
           std::to_string(pooled.samples) + " draws " + fixed(to_double(pooled.tv), 5);
}

// 1
Outcome interchange_trees() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t checks = 0, targets = 0;
    for (const auto& w : {ones(7), q({1, 3, 3, 1}), q({1, 1, 1, 1, 1})})
        for (int n = 1; n <= 6; ++n) {
            const auto rep = tree_interchange(w, 1, n);
            ++checks;
            targets += rep.targets;
            if (!rep.ok) {
                o.pass = false;
                o.notes.push_back("w=(" + join(w) + ") n=" + std::to_string(n) + ": " + rep.first_discrepancy);
            }
        }
    const double secs = seconds_since(t0);
    if (secs >= 60) o.pass = false;
    o.summary = std::to_string(checks) + " interchanges, " + std::to_string(targets) + " targets, " + fixed(secs, 2) +
                " s (limit 60 s)";
    return o;
}

// 2
Outcome interchange_arith() {
    Outcome o;
    std::size_t checks = 0;
    const std::vector<std::pair<std::vector<Rational>, int>> cases{{q({1, 0, 1}), 2}, {q({2, 0, 0, 1}), 3}};
    for (const auto& [w, d] : cases)
        for (int n = 1; n + d <= 9; n += d) {
            const auto rep = tree_interchange(w, d, n);
            ++checks;
            if (!rep.ok) {
                o.pass = false;
                o.notes.push_back("d=" + std::to_string(d) + " n=" + std::to_string(n) + ": " + rep.first_discrepancy);
            }
        }
    std::string sizes;
    const std::vector<std::size_t> catalan{1, 1, 2, 5, 14};
    for (int j = 0; j < 5; ++j) {
        const int n = 2 * j + 1;
        const auto law = exact_sg_law(q({1, 0, 1}), 2, n);
        const auto tab = sg_distribution(q({1, 0, 1}), 2, n);
        bool uniform = law == tab;
        for (const auto& [t, p] : law) uniform = uniform && p == Rational(1, static_cast<long>(law.size()));
        if (!uniform || law.size() != catalan[static_cast<std::size_t>(j)]) o.pass = false;
        sizes += (j ? "," : "") + std::to_string(law.size());
    }
    o.summary = std::to_string(checks) + " interchanges up to 9 vertices; w=(1,0,1) uniform marginals of sizes " + sizes;
    return o;
}

// 3
Outcome growth_shape() {
    Outcome o;
    struct Model {
        std::string name;
        std::vector<Rational> w;
        int d, N;
    };
    const std::vector<Model> models{{"ones", ones(20), 1, 20},
                                    {"(1,3,3,1)", q({1, 3, 3, 1}), 1, 20},
                                    {"(1,1,1,1,1)", q({1, 1, 1, 1, 1}), 1, 20},
                                    {"e(2,1,1)", Theta(q({2, 1, 1})).e(), 1, 20},
                                    {"(1,0,1) d=2", q({1, 0, 1}), 2, 21},
                                    {"(2,0,0,1) d=3", q({2, 0, 0, 1}), 3, 22}};
    std::size_t steps = 0;
    for (const auto& m : models) {
        auto model = std::make_shared<const GrowthModel>(m.w, m.d, m.N);
        GrowthChain chain(model, 0);
        std::size_t bad = 0;
        for (std::uint64_t i = 0; i < 10000; ++i) {
            chain.reset(CounterRng::derive(31, "accept-shape", {i}));
            PlaneTree prev = chain.tree();
            while (chain.size() + m.d <= m.N) {
                chain.step();
                PlaneTree cur = chain.tree();
                const bool ok = m.d == 1 ? is_right_leaning_leaf_addition(prev, cur) : is_bouquet_addition(prev, cur, m.d);
                bad += !ok;
                ++steps;
                prev = std::move(cur);
            }
        }
        if (bad) {
            o.pass = false;
            o.notes.push_back(m.name + ": " + std::to_string(bad) + " bad steps");
        }
    }
    o.summary = std::to_string(models.size()) + " models x 1e4 chains, " + std::to_string(steps) + " steps checked";
    return o;
}

// 4
Outcome reduction() {
    Outcome o;
    const auto direct = compute_tables(ones(9), 1, 9, TablePath::Direct);
    const auto arith = compute_tables(ones(9), 1, 9, TablePath::Arithmetic);
    std::size_t entries = 0, diff = 0;
    for (int n = 1; n <= 8; ++n, ++entries) diff += direct.b_at(n) != arith.b_at(n);
    if (direct.f.size() != arith.f.size()) ++diff;
    for (std::size_t n = 0; n < std::min(direct.f.size(), arith.f.size()) && n <= 8; ++n) {
        if (direct.f[n].size() != arith.f[n].size()) ++diff;
        for (std::size_t k = 0; k < std::min(direct.f[n].size(), arith.f[n].size()); ++k, ++entries)
            diff += direct.f[n][k] != arith.f[n][k];
    }
    const GrowthModel a(direct), b(arith);
    std::size_t rows = 0;
    for (int n = 1; n <= 8; ++n)
        for (const auto& t : enumerate_plane_trees(n)) {
            ++rows;
            diff += a.kernel_row(t) != b.kernel_row(t);
        }
    o.pass = diff == 0;
    o.summary = std::to_string(entries) + " table entries and " + std::to_string(rows) + " kernel rows compared, " +
                std::to_string(diff) + " differences";
    return o;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SGT_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 5
Outcome inequality_suites() {
    Outcome o;
    const std::vector<std::pair<std::vector<Rational>, int>> weights{
        {ones(21), 1},
        {q({1, 3, 3, 1}), 1},
        {q({1, 1, 1, 1, 1}), 1},
        {q({1, 1}), 1},
        {q({1, 2, 1}), 1},
        {q({1, 4, 6, 4, 1}), 1},
        {q({1, 1, Rational(1, 2), Rational(1, 6), Rational(1, 24), Rational(1, 120)}), 1},
        {q({1, Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16), Rational(1, 32)}), 1},
        {q({1, 0, 1}), 2},
        {q({1, 0, 2, 0, 1}), 2},
        {q({2, 0, 0, 1}), 3}};
    std::size_t checked = 0, failures = 0;
    for (const auto& [w, d] : weights) {
        if (!is_log_concave(progression(w, d)).ok) {
            o.pass = false;
            o.notes.push_back("test weight (" + join(w) + ") is not log-concave");
            continue;
        }
        const auto ratio = check_ratio_chain(compute_tables(w, d, ratio_chain_horizon(d, 20)), 20);
        const auto tp2 = check_tp2_array(compute_tables(w, d, 21), 20);
        checked += ratio.checked + tp2.checked;
        failures += ratio.failures.size() + tp2.failures.size();
        if (!ratio.ok() || !tp2.ok()) o.notes.push_back("failures for (" + join(w) + ")");
    }
    const auto janson = q({Rational(2, 5), Rational(1, 5), Rational(2, 5)});
    const auto lc = is_log_concave(janson);
    int refused_index = -1;
    try {
        require_log_concave(janson, 1);
    } catch (const Refused& e) {
        refused_index = e.index;
    }
    const int code = run_cli("grow --model sg --w 2/5,1/5,2/5 --n 5");
    o.pass = o.pass && failures == 0 && !lc.ok && lc.witness == 1 && refused_index == 1 && code == 2;
    o.summary = std::to_string(weights.size()) + " weights, " + std::to_string(checked) + " inequalities, " +
                std::to_string(failures) + " failures; Janson witness index " + std::to_string(lc.witness) +
                ", grow exit " + std::to_string(code);
    return o;
}

// 6
Outcome janson() {
    Outcome o;
    const Rational eps(1, 5);
    const auto e = janson_expectations(eps);
    const auto mu = canonical({(1 - eps) / 2, eps, (1 - eps) / 2});
    auto via_tables = [&](int n) {
        Rational m = 0;
        for (const auto& [t, p] : sg_distribution(mu, 1, n)) m += p * children_count(t, Word{});
        return m;
    };
    const Rational t3 = via_tables(3), t4 = via_tables(4);
    o.pass = e.e3 == Rational(9, 5) && e.e4 == Rational(21, 13) && t3 == e.e3 && t4 == e.e4 && e.e3 > e.e4;
    o.summary = "E3=" + to_string(e.e3) + ", E4=" + to_string(e.e4) + " by enumeration; " + to_string(t3) + ", " +
                to_string(t4) + " by tables";
    return o;
}

// Grading-compatible decorations of t with subsets of {1..dmax}.
std::vector<DecoratedTree> decorated_trees(const PlaneTree& t, int dmax) {
    std::vector<DecoratedTree> out{{t, {}}};
    for (const auto& u : t.words()) {
        const int k = children_count(t, u);
        std::vector<std::set<int>> subsets;
        for (unsigned mask = 0; mask < (1U << dmax); ++mask) {
            std::set<int> s;
            for (int i = 0; i < dmax; ++i)
                if (mask & (1U << i)) s.insert(i + 1);
            if (static_cast<int>(s.size()) == k) subsets.push_back(std::move(s));
        }
        std::vector<DecoratedTree> next;
        for (const auto& dt : out)
            for (const auto& s : subsets) {
                auto e = dt;
                e.S[u] = s;
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

// 7
Outcome bijection_groupoid() {
    Outcome o;
    std::size_t round_trips = 0, bad = 0;
    for (int dmax = 2; dmax <= 3; ++dmax)
        for (int n = 1; n <= (dmax == 2 ? 6 : 5); ++n) {
            const auto all = enumerate_subtrees(n, dmax);
            for (const auto& tau : all) {
                ++round_trips;
                const auto dt = bij_P(tau);
                bad += !is_grading_compatible(dt) || bij_P_inv(dt) != tau || dt.T != push(tau);
            }
            // the other direction, from independently listed decorated trees
            std::set<RootedSubtree> image;
            for (const auto& t : enumerate_plane_trees(n))
                for (const auto& dt : decorated_trees(t, dmax)) {
                    ++round_trips;
                    const auto tau = bij_P_inv(dt);
                    bad += bij_P(tau) != dt;
                    image.insert(tau);
                }
            bad += image != std::set<RootedSubtree>(all.begin(), all.end());
        }

    CounterRng r(CounterRng::derive(2024, "accept-groupoid"));
    std::size_t identities = 0, gbad = 0;
    auto expect = [&](bool ok) {
        ++identities;
        gbad += !ok;
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const int dmax = gen::uniform(r, 1, 3);
        const auto tau = gen::subtree(r, gen::uniform(r, 1, 7), dmax);
        const auto g = gen::shuffle(r, tau, 5);
        const auto h = gen::shuffle(r, tau, 6);
        const auto gt = apply_shuffle(tau, g);
        const auto ginv = inverse_shuffle(g, tau);
        expect(inverse_shuffle(ginv, gt) == g);
        expect(apply_shuffle(gt, ginv) == tau);
        bool words = gt.size() == tau.size();
        for (const auto& u : tau.words()) words = words && act(ginv, act(g, u)) == u && gt.contains(act(g, u));
        expect(words);
        expect(ginv == push_forward(g, tau, bar(g)));
        bool positions = true;
        for (const auto& u : tau.words()) {
            std::set<int> image;
            for (int p : tau.children_positions(u)) image.insert(g.at(u).at(p));
            const auto got = gt.children_positions(act(g, u));
            positions = positions && std::set<int>(got.begin(), got.end()) == image;
        }
        expect(positions);
        std::map<Word, int> x;
        for (const auto& u : tau.words()) x[u] = gen::uniform(r, 0, 9);
        auto f = [](std::map<Word, int> m) {
            for (auto& [u, v] : m) v = v * v + 1;
            return m;
        };
        expect(push_forward(g, tau, f(x)) == f(push_forward(g, tau, x)));
        expect(bar(push_forward(g, tau, h)) == push_forward(g, tau, bar(h)));
    }
    o.pass = bad == 0 && gbad == 0;
    o.summary = std::to_string(round_trips) + " round trips (" + std::to_string(bad) + " failures), " +
                std::to_string(identities) + " groupoid identities on 1000 instances (" + std::to_string(gbad) +
                " failures)";
    return o;
}

// 8
Outcome subtree_exactness() {
    Outcome o;
    const Theta theta(q({Rational(1, 2), Rational(1, 3), Rational(1, 4)}));
    std::size_t terms = 0;
    for (int n = 1; n <= 5; ++n) {
        const auto rep = check_st_factorization(theta, n);
        terms += rep.checked;
        if (!rep.ok()) {
            o.pass = false;
            o.notes.push_back("factorisation fails at n=" + std::to_string(n) + ": " + rep.failures.front().where);
        }
    }
    const auto tables = compute_tables(theta.e(), 1, 6);
    std::string vals;
    for (int n = 1; n <= 6; ++n) {
        const Rational st = st_partition_function(theta, n);
        if (st != tables.b_at(n)) o.pass = false;
        vals += (n > 1 ? "," : "") + to_string(st);
    }
    o.summary = std::to_string(terms) + " factorisation terms; ST_n = b_n for n<=6: " + vals;
    return o;
}

// 9
Outcome nested_subsets() {
    Outcome o;
    std::size_t atoms = 0, marginals = 0;
    for (const auto& values :
         {q({2, 1}), q({1, 1, 1}), q({Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5)})}) {
        const Theta t(values);
        const NestedSubsetCoupling c(t);
        for (const auto& p : c.thresholds())
            for (std::size_t k = 1; k < p.size(); ++k) o.pass = o.pass && p[k - 1] <= p[k];
        const auto law = c.joint_law();
        for (const auto& [x, p] : law) {
            ++atoms;
            std::set<int> prev;
            for (int k = 1; k <= t.size(); ++k) {
                const std::set<int> s(x.begin(), x.begin() + k);
                const bool nested = static_cast<int>(s.size()) == k &&
                                    std::includes(s.begin(), s.end(), prev.begin(), prev.end());
                o.pass = o.pass && nested;
                prev = s;
            }
        }
        for (int k = 0; k <= t.size(); ++k) {
            std::map<std::set<int>, Rational> marg;
            for (const auto& [x, p] : law) marg[std::set<int>(x.begin(), x.begin() + k)] += p;
            ++marginals;
            o.pass = o.pass && marg == exact_subset_law(t, k);
        }
    }
    o.summary = std::to_string(atoms) + " atoms nested, " + std::to_string(marginals) +
                " marginals equal B_k, thresholds nondecreasing";
    return o;
}

// 10
Outcome subtree_coupling() {
    Outcome o;
    bool inclusion = true, stats = true;
    std::size_t steps = 0;
    for (const auto& values : {q({1, 1}), q({2, 1, 1})}) {
        const Theta theta(values);
        const std::string name = "theta=(" + join(values) + ")";
        auto xs = std::make_shared<const NestedSubsetCoupling>(theta);

        auto long_model = subtree_growth_model(theta, 20);
        SubtreeChain chain(long_model, xs, CounterRng::derive(10, "accept-inclusion"));
        for (std::uint64_t i = 0; i < 10000; ++i) {
            chain.reset(i);
            RootedSubtree prev = chain.subtree();
            while (chain.size() < 20) {
                const Word u = chain.step();
                RootedSubtree cur = chain.subtree();
                inclusion = inclusion && is_leaf_addition(prev, cur) && cur.contains(u) && !prev.contains(u);
                ++steps;
                prev = std::move(cur);
            }
        }

        auto model = subtree_growth_model(theta, 5);
        std::vector<Battery<RootedSubtree>> bat(3);
        for (int n = 3; n <= 5; ++n) bat[static_cast<std::size_t>(n - 3)].law = exact_st_law(theta, n);
        std::unordered_map<std::string, RootedSubtree> seen;
        for (int s = 0; s < kSeeds; ++s) {
            SubtreeChain c(model, xs, CounterRng::derive(10, "accept-subtree", {static_cast<std::uint64_t>(s)}));
            std::vector<std::unordered_map<std::string, std::uint64_t>> keyed(3);
            for (std::uint64_t i = 0; i < kSamples; ++i) {
                c.reset(i);
                for (int n = 3; n <= 5; ++n) {
                    while (c.size() < n) c.step();
                    auto key = c.key();
                    if (!seen.count(key)) seen.emplace(key, c.subtree());
                    keyed[static_cast<std::size_t>(n - 3)][std::move(key)]++;
                }
            }
            for (std::size_t j = 0; j < 3; ++j) {
                std::map<RootedSubtree, std::uint64_t> counts;
                for (const auto& [k, v] : keyed[j]) counts[seen.at(k)] += v;
                bat[j].add(counts);
            }
        }
        for (int n = 3; n <= 5; ++n) {
            const auto& b = bat[static_cast<std::size_t>(n - 3)];
            const bool ok = b.good_seeds() >= 95 && b.seeds.front().tv < kTvBound;
            stats = stats && ok;
            o.notes.push_back(battery_note((ok ? "ok   " : "miss ") + name + " n=" + std::to_string(n), b));
            if (!ok)
                o.notes.push_back("     control: 1e5 iid draws from the exact law give TV " +
                                  fixed(control_tv(b.law, kSamples, 10)));
        }
    }
    o.pass = inclusion && stats;
    o.summary = std::string("inclusion on ") + std::to_string(steps) + " steps " + (inclusion ? "holds" : "FAILS") +
                "; per (theta, n): TV(seed 0) < 0.01 and p > 0.001 on >= 95 of 100 seeds";
    if (!stats)
        o.notes.push_back(
            "a miss with TV near the expected sampling TV and passing chi-square reflects the sample size, not "
            "the law: at M=1e5 the mean TV of an exact sampler over K categories is about the listed floor");
    return o;
}

// 11
Outcome sg_marginals() {
    Outcome o;
    const int n = 8;
    Battery<PlaneTree> b;
    b.law = exact_sg_law(ones(n), 1, n);
    auto model = std::make_shared<const GrowthModel>(ones(n), 1, n);
    GrowthChain chain(model, 0);
    std::unordered_map<std::uint64_t, PlaneTree> seen;
    for (int s = 0; s < kSeeds; ++s) {
        std::unordered_map<std::uint64_t, std::uint64_t> keyed;
        for (std::uint64_t i = 0; i < kSamples; ++i) {
            chain.reset(CounterRng::derive(11, "accept-sg", {static_cast<std::uint64_t>(s), i}));
            while (chain.size() < n) chain.step();
            const auto code = chain.shape_code();
            if (!seen.count(code)) seen.emplace(code, chain.tree());
            keyed[code]++;
        }
        std::map<PlaneTree, std::uint64_t> counts;
        for (const auto& [k, v] : keyed) counts[seen.at(k)] += v;
        b.add(counts);
    }
    bool uniform = b.law.size() == 429;
    for (const auto& [t, p] : b.law) uniform = uniform && p == Rational(1, 429);
    const bool chi = b.good_seeds() >= 95;
    const bool tv = b.seeds.front().tv < kTvBound;
    o.pass = uniform && chi && tv;
    o.summary = std::string("chi-square ") + (chi ? "holds" : "fails") + " (" + std::to_string(b.good_seeds()) +
                "/100 seeds), TV(seed 0)=" + fixed(to_double(b.seeds.front().tv)) + (tv ? " < " : " >= ") + "0.01";
    o.notes.push_back(battery_note("T_8", b));
    if (!tv)
        o.notes.push_back("uniform law on 429 trees: at M=1e5 an exact sampler has mean TV about " +
                          fixed(tv_floor(b.law, kSamples)) + "; TV < 0.01 needs roughly " +
                          std::to_string(static_cast<long>(std::pow(tv_floor(b.law, kSamples) / 0.01, 2) * 1e5)) +
                          " draws per seed; control: 1e5 iid draws from the exact law give TV " +
                          fixed(control_tv(b.law, kSamples, 11)));
    return o;
}

// 12
Outcome shuffle_invariance_criterion() {
    Outcome o;
    const std::map<Deco, Rational> nu{{{1, 2, 3}, Rational(1, 3)}, {{3, 1, 2}, Rational(2, 3)}};
    std::size_t atoms = 0;
    for (const auto& w : {ones(4), q({1, 2, 1})})
        for (int n = 1; n <= 4; ++n) {
            const auto rep = shuffle_invariance_check(w, nu, sigma_shuffle_rule(), n);
            atoms += rep.atoms;
            if (!rep.ok()) {
                o.pass = false;
                o.notes.push_back("w=(" + join(w) + ") n=" + std::to_string(n) + ": " +
                                  std::to_string(rep.mismatches) + " mismatches");
            }
        }
    std::vector<std::pair<PlaneTree, DecoMap>> planted, sigma;
    for (int n = 1; n <= 4; ++n)
        for (const auto& t : enumerate_plane_trees(n)) {
            for (auto& x : all_decorations(t, {{1}, {2}})) planted.emplace_back(t, std::move(x));
            for (auto& x : all_decorations(t, {{1, 2, 3}, {3, 1, 2}})) sigma.emplace_back(t, std::move(x));
        }
    const auto det = check_equivariance(planted_rule({1}), planted);
    const auto ctl = check_equivariance(sigma_shuffle_rule(), sigma);
    o.pass = o.pass && !det.ok() && ctl.ok();
    o.summary = std::to_string(atoms) + " atoms invariant under the sigma rule; planted rule flagged with " +
                std::to_string(det.violations.size()) + " violations, sigma rule clean on " +
                std::to_string(ctl.checked) + " checks";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact kernel interchange, trees d=1", interchange_trees},
        {"exact kernel interchange, arithmetic", interchange_arith},
        {"growth-shape invariant", growth_shape},
        {"d=1 reduction", reduction},
        {"inequality suites and Janson refusal", inequality_suites},
        {"Janson obstruction", janson},
        {"bijection and groupoid", bijection_groupoid},
        {"subtree model exactness", subtree_exactness},
        {"nested subset coupling", nested_subsets},
        {"subtree coupling", subtree_coupling},
        {"statistical marginals, sg", sg_marginals},
        {"shuffle invariance", shuffle_invariance_criterion}};

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": " << o.summary
                  << " (" << fixed(seconds_since(t0), 1) << " s)\n";
        for (const auto& n : o.notes) std::cout << "        " << n << '\n';
        std::cout.flush();
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria pass\n";
    return failed ? 1 : 0;
}
