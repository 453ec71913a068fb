#include "sgtree/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "sgtree/sgtrees.hpp"

namespace sgt {

namespace {

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Subtrees of the complete m-ary tree with n vertices.
BigInt fuss_catalan(int m, int n) {
    return binomial(static_cast<unsigned long>(m * n), static_cast<unsigned long>(n)) / ((m - 1) * n + 1);
}

void compositions_into(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (k == 0) {
        if (n == 0) out.push_back(cur);
        return;
    }
    for (int first = 1; first <= n - (k - 1); ++first) {
        cur.push_back(first);
        compositions_into(n - first, k - 1, cur, out);
        cur.pop_back();
    }
}

const std::vector<PlaneTree>& trees_of(int n, int d, std::map<int, std::vector<PlaneTree>>& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::vector<PlaneTree> out;
    if (n == 1) out.push_back(PlaneTree(WordSet{Word{}}));
    for (int k = d; k <= n - 1; k += d) {
        std::vector<std::vector<int>> sizes;
        std::vector<int> cur;
        compositions_into(n - 1, k, cur, sizes);
        for (const auto& sz : sizes) {
            std::vector<PlaneTree> pick(static_cast<std::size_t>(k));
            std::function<void(int)> rec = [&](int i) {
                if (i == k) {
                    out.push_back(compose_root(pick));
                    return;
                }
                for (const auto& t : trees_of(sz[static_cast<std::size_t>(i)], d, memo)) {
                    pick[static_cast<std::size_t>(i)] = t;
                    rec(i + 1);
                }
            };
            rec(0);
        }
    }
    std::sort(out.begin(), out.end());
    return memo.emplace(n, std::move(out)).first->second;
}

Rational subtree_weight(const RootedSubtree& t, const Theta& theta) {
    Rational w = 1;
    for (const auto& u : t.words())
        if (!u.empty()) w *= theta.at(u.back());
    return w;
}

}  // namespace

std::vector<PlaneTree> enumerate_plane_trees(int n, int d, int horizon) {
    if (n < 1) throw DomainError("trees have at least one vertex");
    if (d < 1) throw DomainError("d must be positive");
    if (n > horizon)
        throw HorizonExceeded("plane trees with " + std::to_string(n) + " vertices exceed the horizon " +
                                  std::to_string(horizon),
                              binomial(static_cast<unsigned long>(2 * n - 2), static_cast<unsigned long>(n - 1)) / n);
    std::map<int, std::vector<PlaneTree>> memo;
    return trees_of(n, d, memo);
}

std::vector<RootedSubtree> enumerate_subtrees(int n, int dmax, int horizon, int max_letter) {
    if (n < 1) throw DomainError("trees have at least one vertex");
    if (dmax < 1) throw DomainError("dmax must be positive");
    if (n > horizon || dmax > max_letter)
        throw HorizonExceeded("subtrees with " + std::to_string(n) + " vertices and letters up to " +
                                  std::to_string(dmax) + " exceed the horizon",
                              fuss_catalan(dmax, n));
    std::set<RootedSubtree> level{RootedSubtree(WordSet{Word{}})};
    for (int size = 1; size < n; ++size) {
        std::set<RootedSubtree> next;
        for (const auto& t : level)
            for (const auto& u : t.words())
                for (int j = 1; j <= dmax; ++j) {
                    Word v = child_of(u, j);
                    if (t.contains(v)) continue;
                    WordSet w = t.words();
                    w.insert(std::move(v));
                    next.insert(RootedSubtree(std::move(w)));
                }
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

ExactLaw<PlaneTree> exact_sg_law(const std::vector<Rational>& w, int d, int n) {
    std::map<PlaneTree, Rational> mass;
    for (const auto& t : enumerate_plane_trees(n, d)) {
        Rational m = 1;
        for (const auto& u : t.words()) {
            const auto k = static_cast<std::size_t>(children_count(t, u));
            m *= k < w.size() ? w[k] : Rational(0);
        }
        mass.emplace(t, m);
    }
    return normalize(std::move(mass), "SG(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

ExactLaw<RootedSubtree> exact_st_law(const Theta& theta, int n) {
    const int len = static_cast<int>(theta.values().size());
    std::map<RootedSubtree, Rational> mass;
    for (const auto& t : enumerate_subtrees(n, len, kSubtreeHorizon, std::max(len, kSubtreeMaxLetter)))
        mass.emplace(t, subtree_weight(t, theta));
    return normalize(std::move(mass), "ST(n=" + std::to_string(n) + ")");
}

Rational st_partition_function(const Theta& theta, int n) {
    const int len = static_cast<int>(theta.values().size());
    Rational z = 0;
    for (const auto& t : enumerate_subtrees(n, len, kSubtreeHorizon, std::max(len, kSubtreeMaxLetter)))
        z += subtree_weight(t, theta);
    return z;
}

ExactLaw<Composition> exact_comp_law(const WeightPair& wp, ArithClass cls, int n) {
    if (n < 0 || n > 20) throw DomainError("composition enumeration needs 0 <= n <= 20");
    std::map<Composition, Rational> mass;
    if (n == 0) {
        mass.emplace(Composition{}, cls.s == 0 ? wp.a_at(0) : Rational(0));
    } else {
        for (std::uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
            Composition c;
            int part = 1;
            for (int i = 0; i < n - 1; ++i) {
                if (cuts >> i & 1u) {
                    c.push_back(part);
                    part = 1;
                } else {
                    ++part;
                }
            }
            c.push_back(part);
            if (!satisfies_arith(c, cls)) continue;
            Rational m = wp.a_at(static_cast<int>(c.size()));
            for (int x : c) m *= wp.b_at(x);
            mass.emplace(std::move(c), m);
        }
    }
    return normalize(std::move(mass), "Comp(n=" + std::to_string(n) + ")");
}

ExactLaw<std::set<int>> exact_subset_law(const Theta& theta, int k) {
    const int len = static_cast<int>(theta.values().size());
    if (len > 20) throw DomainError("subset enumeration limited to 20 indices");
    std::map<std::set<int>, Rational> mass;
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
        if (std::popcount(bits) != k) continue;
        std::set<int> s;
        Rational m = 1;
        for (int i = 0; i < len; ++i)
            if (bits >> i & 1u) {
                s.insert(i + 1);
                m *= theta.at(i + 1);
            }
        mass.emplace(std::move(s), m);
    }
    return normalize(std::move(mass), "B(k=" + std::to_string(k) + ")");
}

CheckReport check_st_factorization(const Theta& theta, int n) {
    CheckReport rep;
    const int len = static_cast<int>(theta.values().size());
    const int N = theta.size();
    const auto& e = theta.e();
    auto e_at = [&](int k) { return k <= N ? e[static_cast<std::size_t>(k)] : Rational(0); };
    const Rational bn = compute_tables(e, 1, n).b_at(n);
    const Rational z = st_partition_function(theta, n);
    rep.check_eq(z, bn, "ST normaliser at n=" + std::to_string(n));
    if (z == 0) return rep;
    for (const auto& tau : enumerate_subtrees(n, len + 1, kSubtreeHorizon, std::max(len + 1, kSubtreeMaxLetter))) {
        const Rational lhs = subtree_weight(tau, theta) / z;
        const auto dt = bij_P(tau);
        Rational sg = 1, deco = 1;
        for (const auto& u : dt.T.words()) {
            const int k = children_count(dt.T, u);
            sg *= e_at(k);
            if (k > N) {
                deco = 0;
                continue;
            }
            Rational p = 1;
            for (int i : dt.S.at(u)) p *= theta.at(i);
            deco *= p / e_at(k);
        }
        const Rational rhs = bn == 0 ? Rational(0) : sg / bn * deco;
        rep.check_eq(lhs, rhs, "tau={" + format_tree(tau) + "}");
    }
    return rep;
}

JansonExpectations janson_expectations(const Rational& eps) {
    if (eps <= 0 || eps >= 1) throw DomainError("eps must lie in (0, 1)");
    const std::vector<Rational> mu{(1 - eps) / 2, eps, (1 - eps) / 2};
    auto mean_root_degree = [&](int n) {
        Rational num = 0, den = 0;
        for (const auto& t : enumerate_plane_trees(n)) {
            Rational w = 1;
            for (const auto& u : t.words()) {
                const auto k = static_cast<std::size_t>(children_count(t, u));
                w *= k < mu.size() ? mu[k] : Rational(0);
            }
            num += w * children_count(t, Word{});
            den += w;
        }
        return Rational(num / den);
    };
    return {mean_root_degree(3), mean_root_degree(4)};
}

InterchangeReport tree_interchange(const std::vector<Rational>& w, int d, int n) {
    const GrowthModel model(w, d, n + d);
    return kernel_interchange_check(
        exact_sg_law(w, d, n), exact_sg_law(w, d, n + d), [&](const PlaneTree& t) { return model.kernel_row(t); },
        [](const PlaneTree& t) { return "{" + format_tree(t) + "}"; });
}

InterchangeReport composition_interchange(const WeightPair& wp, ArithClass cls, int n) {
    const CompositionCoupling cc(wp, cls.d, n + cls.d);
    return kernel_interchange_check(
        exact_comp_law(wp, cls, n), exact_comp_law(wp, cls, n + cls.d),
        [&](const Composition& c) { return cc.kernel_row(c); },
        [](const Composition& c) { return "\"" + format_composition(c) + "\""; });
}

GofReport goodness_of_fit(const std::vector<Rational>& probs, const std::vector<std::uint64_t>& counts,
                          std::uint64_t outside) {
    if (probs.size() != counts.size()) throw DomainError("probabilities and counts differ in length");
    GofReport rep;
    rep.categories = probs.size();
    rep.samples = outside;
    for (auto c : counts) rep.samples += c;
    if (rep.samples == 0) throw DomainError("no samples");
    const Rational M(static_cast<unsigned long>(rep.samples));
    Rational tv = Rational(static_cast<unsigned long>(outside)) / M;
    for (std::size_t i = 0; i < probs.size(); ++i) tv += abs(Rational(static_cast<unsigned long>(counts[i])) / M - probs[i]);
    rep.tv = tv / 2;
    rep.df = static_cast<int>(probs.size()) - 1;
    rep.undersampled = rep.samples < 5 * probs.size();
    if (rep.undersampled) {
        rep.p_value = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    if (outside > 0) {
        rep.chi2 = std::numeric_limits<double>::infinity();
        rep.p_value = 0;
        return rep;
    }
    const double m = static_cast<double>(rep.samples);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double e = m * to_double(probs[i]);
        const double diff = static_cast<double>(counts[i]) - e;
        rep.chi2 += diff * diff / e;
    }
    rep.p_value = rep.df > 0 ? boost::math::gamma_q(rep.df / 2.0, rep.chi2 / 2.0) : 1.0;
    return rep;
}

}  // namespace sgt
