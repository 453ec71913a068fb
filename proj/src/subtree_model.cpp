#include "sgtree/subtree_model.hpp"

#include <algorithm>

namespace sgt {

InjMap perm_to_map(const Perm& p) {
    InjMap out;
    for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<int>(i) + 1] = p[i];
    return out;
}

InjMap invert(const InjMap& g) {
    InjMap out;
    for (const auto& [a, b] : g)
        if (!out.emplace(b, a).second) throw DomainError("map is not injective");
    return out;
}

Word act(const Shuffle& g, const Word& u) {
    Word out;
    out.reserve(u.size());
    Word prefix;
    for (int l : u) {
        auto it = g.find(prefix);
        if (it == g.end()) throw DomainError("shuffle undefined at " + format_word(prefix));
        auto jt = it->second.find(l);
        if (jt == it->second.end())
            throw DomainError("shuffle at " + format_word(prefix) + " undefined on " + std::to_string(l));
        out.push_back(jt->second);
        prefix.push_back(l);
    }
    return out;
}

std::map<Word, std::set<int>> children_positions(const RootedSubtree& tau) {
    std::map<Word, std::set<int>> out;
    for (const auto& u : tau.words()) {
        auto pos = tau.children_positions(u);
        out.emplace(u, std::set<int>(pos.begin(), pos.end()));
    }
    return out;
}

void check_shuffle(const RootedSubtree& tau, const Shuffle& g) {
    for (const auto& [u, m] : g)
        if (!tau.contains(u)) throw DomainError("shuffle has an entry at " + format_word(u) + " outside the tree");
    for (const auto& u : tau.words()) {
        auto it = g.find(u);
        if (it == g.end()) throw DomainError("shuffle missing at " + format_word(u));
        const auto pos = tau.children_positions(u);
        if (it->second.size() != pos.size()) throw DomainError("shuffle domain mismatch at " + format_word(u));
        std::set<int> images;
        for (int p : pos) {
            auto jt = it->second.find(p);
            if (jt == it->second.end()) throw DomainError("shuffle domain mismatch at " + format_word(u));
            if (jt->second < 1 || !images.insert(jt->second).second)
                throw DomainError("shuffle at " + format_word(u) + " is not injective");
        }
    }
}

RootedSubtree apply_shuffle(const RootedSubtree& tau, const Shuffle& g) {
    check_shuffle(tau, g);
    WordSet out;
    for (const auto& u : tau.words()) out.insert(act(g, u));
    return RootedSubtree(std::move(out));
}

Shuffle inverse_shuffle(const Shuffle& g, const RootedSubtree& tau) {
    check_shuffle(tau, g);
    Shuffle out;
    for (const auto& u : tau.words()) out.emplace(act(g, u), invert(g.at(u)));
    return out;
}

Shuffle bar(const Shuffle& g) {
    Shuffle out;
    for (const auto& [u, m] : g) out.emplace(u, invert(m));
    return out;
}

Shuffle identity_shuffle(const RootedSubtree& tau) {
    Shuffle out;
    for (const auto& u : tau.words()) {
        InjMap m;
        for (int p : tau.children_positions(u)) m[p] = p;
        out.emplace(u, std::move(m));
    }
    return out;
}

InjMap rank_map(const std::set<int>& s) {
    InjMap out;
    int r = 0;
    for (int x : s) out[x] = ++r;
    return out;
}

Shuffle p_tau(const RootedSubtree& tau) {
    Shuffle out;
    for (const auto& [u, c] : children_positions(tau)) out.emplace(u, rank_map(c));
    return out;
}

PlaneTree push(const RootedSubtree& tau) { return PlaneTree(apply_shuffle(tau, p_tau(tau)).words()); }

bool is_grading_compatible(const DecoratedTree& dt) {
    if (dt.S.size() != dt.T.size()) return false;
    for (const auto& u : dt.T.words()) {
        auto it = dt.S.find(u);
        if (it == dt.S.end()) return false;
        if (static_cast<int>(it->second.size()) != children_count(dt.T, u)) return false;
        for (int x : it->second)
            if (x < 1) return false;
    }
    return true;
}

DecoratedTree bij_P(const RootedSubtree& tau) {
    const auto g = p_tau(tau);
    return {PlaneTree(apply_shuffle(tau, g).words()), push_forward(g, tau, children_positions(tau))};
}

RootedSubtree bij_P_inv(const DecoratedTree& dt) {
    if (!is_grading_compatible(dt)) throw DomainError("decorations are not grading-compatible");
    Shuffle pbar;
    for (const auto& [u, s] : dt.S) pbar.emplace(u, invert(rank_map(s)));
    return apply_shuffle(dt.T, pbar);
}

std::vector<Rational> elementary_symmetric(const std::vector<Rational>& theta, int kmax) {
    if (kmax < 0) throw DomainError("negative order");
    std::vector<Rational> e(static_cast<std::size_t>(kmax) + 1, Rational(0));
    e[0] = 1;
    for (const auto& t : theta) {
        if (t == 0) continue;
        for (int k = kmax; k >= 1; --k) e[static_cast<std::size_t>(k)] += t * e[static_cast<std::size_t>(k - 1)];
    }
    return e;
}

Theta::Theta(std::vector<Rational> values) : v_(canonical(std::move(values))) {
    Rational sum = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (v_[i] < 0) throw DomainError("negative theta entry at index " + std::to_string(i + 1));
        if (v_[i] > 0) supp_.push_back(static_cast<int>(i) + 1);
        sum += v_[i];
    }
    if (sum == 0) throw DomainError("theta has empty support");
    e_ = elementary_symmetric(v_, size());
}

Rational Theta::at(int i) const {
    if (i < 1 || i > static_cast<int>(v_.size())) return 0;
    return v_[static_cast<std::size_t>(i - 1)];
}

std::map<std::set<int>, Rational> subset_distribution(const Theta& theta, int k) {
    if (k < 0 || k > theta.size())
        throw DomainError("no " + std::to_string(k) + "-subset of the support has positive mass");
    std::map<std::set<int>, Rational> out;
    const auto& supp = theta.support();
    std::vector<int> pick;
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t from, const Rational& prod) {
        if (static_cast<int>(pick.size()) == k) {
            out[std::set<int>(pick.begin(), pick.end())] = prod / theta.e()[static_cast<std::size_t>(k)];
            return;
        }
        for (std::size_t j = from; j < supp.size(); ++j) {
            pick.push_back(supp[j]);
            rec(j + 1, prod * theta.at(supp[j]));
            pick.pop_back();
        }
    };
    rec(0, Rational(1));
    return out;
}

NestedSubsetCoupling::NestedSubsetCoupling(const Theta& theta) : pivots_(theta.support()) {
    const int N = size();
    for (int j = 0; j < N; ++j) {
        std::vector<Rational> rest, after;
        for (int t = j; t < N; ++t) rest.push_back(theta.at(pivots_[static_cast<std::size_t>(t)]));
        after.assign(rest.begin() + 1, rest.end());
        const int m = N - j;
        const auto e = elementary_symmetric(rest, m);
        const auto e2 = elementary_symmetric(after, m);
        const Rational& ti = rest.front();
        std::vector<Rational> p, mass;
        Rational prev = 0;
        for (int k = 1; k <= m; ++k) {
            Rational pk = ti * e2[static_cast<std::size_t>(k - 1)] / e[static_cast<std::size_t>(k)];
            mass.push_back(pk - prev);
            prev = pk;
            p.push_back(std::move(pk));
        }
        p_.push_back(std::move(p));
        rank_.emplace_back(mass);
    }
}

std::vector<int> NestedSubsetCoupling::sample(CounterRng& rng) const {
    const int N = size();
    std::vector<std::size_t> ks(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) ks[static_cast<std::size_t>(j)] = rank_[static_cast<std::size_t>(j)].sample(rng);
    std::vector<int> x;
    x.reserve(static_cast<std::size_t>(N));
    for (int j = N - 1; j >= 0; --j)
        x.insert(x.begin() + static_cast<std::ptrdiff_t>(ks[static_cast<std::size_t>(j)]),
                 pivots_[static_cast<std::size_t>(j)]);
    return x;
}

std::map<std::vector<int>, Rational> NestedSubsetCoupling::joint_law() const {
    std::map<std::vector<int>, Rational> law{{{}, Rational(1)}};
    for (int j = size() - 1; j >= 0; --j) {
        std::map<std::vector<int>, Rational> next;
        const auto& p = p_[static_cast<std::size_t>(j)];
        for (const auto& [x, q] : law)
            for (std::size_t k = 0; k < p.size(); ++k) {
                const Rational mass = p[k] - (k ? p[k - 1] : Rational(0));
                if (mass == 0) continue;
                auto y = x;
                y.insert(y.begin() + static_cast<std::ptrdiff_t>(k), pivots_[static_cast<std::size_t>(j)]);
                next[y] += q * mass;
            }
        law = std::move(next);
    }
    return law;
}

std::map<RootedSubtree, Rational> st_distribution(const Theta& theta, int n) {
    const auto sg = sg_distribution(theta.e(), 1, n);
    std::map<int, std::map<std::set<int>, Rational>> B;
    for (int k = 0; k <= theta.size(); ++k) B[k] = subset_distribution(theta, k);
    std::map<RootedSubtree, Rational> out;
    for (const auto& [T, p] : sg) {
        std::vector<Word> verts(T.words().begin(), T.words().end());
        DecoratedTree dt{T, {}};
        std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& mass) {
            if (i == verts.size()) {
                out[bij_P_inv(dt)] += mass;
                return;
            }
            for (const auto& [s, q] : B.at(children_count(T, verts[i]))) {
                dt.S[verts[i]] = s;
                rec(i + 1, mass * q);
            }
        };
        rec(0, p);
    }
    return out;
}

Perm identity_perm(int k) {
    Perm p(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    return p;
}

Perm sigma_rule(int k, const std::vector<int>& x) {
    if (k < 0 || k > static_cast<int>(x.size()))
        throw DomainError("sigma rule needs 0 <= k <= " + std::to_string(x.size()));
    Perm p(static_cast<std::size_t>(k));
    for (int l = 0; l < k; ++l) {
        int rank = 1;
        for (int j = 0; j < k; ++j) {
            if (j != l && x[static_cast<std::size_t>(j)] == x[static_cast<std::size_t>(l)])
                throw DomainError("sequence entries must be distinct");
            if (x[static_cast<std::size_t>(j)] < x[static_cast<std::size_t>(l)]) ++rank;
        }
        p[static_cast<std::size_t>(l)] = rank;
    }
    return p;
}

SubtreeChain::SubtreeChain(std::shared_ptr<const GrowthModel> model, std::shared_ptr<const NestedSubsetCoupling> xs,
                           std::uint64_t seed)
    : model_(model), xs_(std::move(xs)), seed_(seed), chain_(model, 0) {
    if (model_->d() != 1) throw DomainError("the subtree chain grows one leaf at a time");
    reset(0);
}

void SubtreeChain::reset(std::uint64_t id) {
    id_ = id;
    chain_.reset(CounterRng::derive(seed_, "subtree-chain", {id}));
    letter_.assign(1, 0);
    has_x_.assign(1, 0);
    if (x_.empty()) x_.resize(1);
}

const std::vector<int>& SubtreeChain::xseq(int node) {
    const auto v = static_cast<std::size_t>(node);
    if (has_x_.size() <= v) has_x_.resize(v + 1, 0);
    if (x_.size() <= v) x_.resize(v + 1);
    if (!has_x_[v]) {
        CounterRng r(CounterRng::derive(seed_, "xseq", {id_, chain_.node(node).hash}));
        x_[v] = xs_->sample(r);
        has_x_[v] = 1;
    }
    return x_[v];
}

Word SubtreeChain::step() {
    const int parent = chain_.step();
    const auto& kids = chain_.node(parent).kids;
    const int child = kids.back();
    const auto k = kids.size();
    const auto& x = xseq(parent);
    if (k > x.size()) throw std::logic_error("vertex outgrew its position sequence");
    const auto c = static_cast<std::size_t>(child);
    if (letter_.size() <= c) letter_.resize(c + 1, 0);
    if (has_x_.size() <= c) has_x_.resize(c + 1, 0);
    letter_[c] = x[k - 1];
    has_x_[c] = 0;
    Word out;
    for (int u = child; chain_.node(u).parent >= 0; u = chain_.node(u).parent)
        out.push_back(letter_[static_cast<std::size_t>(u)]);
    std::reverse(out.begin(), out.end());
    return out;
}

RootedSubtree SubtreeChain::subtree() const {
    WordSet words;
    Word cur;
    std::function<void(int)> rec = [&](int v) {
        words.insert(cur);
        for (int c : chain_.node(v).kids) {
            cur.push_back(letter_[static_cast<std::size_t>(c)]);
            rec(c);
            cur.pop_back();
        }
    };
    rec(0);
    return RootedSubtree(std::move(words));
}

std::map<Word, std::vector<int>> SubtreeChain::decorations() const {
    std::map<Word, std::vector<int>> out;
    Word cur;
    std::function<void(int)> rec = [&](int v) {
        CounterRng r(CounterRng::derive(seed_, "xseq", {id_, chain_.node(v).hash}));
        out.emplace(cur, xs_->sample(r));
        for (int c : chain_.node(v).kids) {
            cur.push_back(chain_.node(c).pos);
            rec(c);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

namespace {

std::map<Word, std::set<int>> first_k_sets(const PlaneTree& T, const std::map<Word, std::vector<int>>& x) {
    std::map<Word, std::set<int>> S;
    for (const auto& u : T.words()) {
        const auto& xu = x.at(u);
        const auto k = static_cast<std::size_t>(children_count(T, u));
        if (k > xu.size()) throw std::logic_error("vertex outgrew its position sequence");
        S.emplace(u, std::set<int>(xu.begin(), xu.begin() + static_cast<std::ptrdiff_t>(k)));
    }
    return S;
}

}  // namespace

RootedSubtree SubtreeChain::naive() const {
    const PlaneTree T = plane_tree();
    return bij_P_inv({T, first_k_sets(T, decorations())});
}

RootedSubtree SubtreeChain::literal() const {
    const PlaneTree T = plane_tree();
    const auto x = decorations();
    Shuffle sigma;
    for (const auto& u : T.words()) sigma.emplace(u, perm_to_map(sigma_rule(children_count(T, u), x.at(u))));
    const auto S = first_k_sets(T, x);
    const PlaneTree T2(apply_shuffle(T, sigma).words());
    return bij_P_inv({T2, push_forward(sigma, T, S)});
}

std::string SubtreeChain::key() const {
    std::string out;
    std::vector<int> order;
    std::function<void(int)> rec = [&](int v) {
        out += '(';
        auto kids = chain_.node(v).kids;
        std::sort(kids.begin(), kids.end(), [&](int a, int b) {
            return letter_[static_cast<std::size_t>(a)] < letter_[static_cast<std::size_t>(b)];
        });
        for (int c : kids) {
            out += std::to_string(letter_[static_cast<std::size_t>(c)]);
            rec(c);
        }
        out += ')';
    };
    rec(0);
    return out;
}

std::shared_ptr<const GrowthModel> subtree_growth_model(const Theta& theta, int N) {
    require_log_concave(theta.e(), 1);
    return std::make_shared<const GrowthModel>(theta.e(), 1, N);
}

std::vector<SubtreeStep> subtree_grow_chain(const Theta& theta, int N, std::uint64_t seed) {
    auto model = subtree_growth_model(theta, N);
    auto xs = std::make_shared<const NestedSubsetCoupling>(theta);
    SubtreeChain chain(model, xs, seed);
    std::vector<SubtreeStep> out{{1, Word{}, chain.subtree()}};
    while (chain.size() < N) {
        Word u = chain.step();
        out.push_back({chain.size(), std::move(u), chain.subtree()});
    }
    return out;
}

Shuffle rule_shuffle(const ShuffleRule& rule, const PlaneTree& t, const DecoMap& x) {
    Shuffle out;
    for (const auto& u : t.words()) {
        const Perm p = rule(t, x, u);
        const int k = children_count(t, u);
        if (static_cast<int>(p.size()) != k)
            throw DomainError("rule returned a permutation of size " + std::to_string(p.size()) + " at " +
                              format_word(u) + ", expected " + std::to_string(k));
        auto sorted = p;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != identity_perm(k)) throw DomainError("rule output at " + format_word(u) + " is not a permutation");
        out.emplace(u, perm_to_map(p));
    }
    return out;
}

ShuffleRule sigma_shuffle_rule() {
    return [](const PlaneTree& t, const DecoMap& x, const Word& u) {
        const int k = children_count(t, u);
        const auto& xu = x.at(u);
        if (k > static_cast<int>(xu.size())) return identity_perm(k);
        return sigma_rule(k, xu);
    };
}

ShuffleRule planted_rule(const Deco& alpha) {
    return [alpha](const PlaneTree& t, const DecoMap& x, const Word& u) {
        const int k = children_count(t, u);
        Perm p = identity_perm(k);
        if (k >= 1 && x.at(child_of(u, 1)) == alpha) std::reverse(p.begin(), p.end());
        return p;
    };
}

std::vector<Shuffle> all_permutation_families(const PlaneTree& t) {
    std::vector<Word> verts(t.words().begin(), t.words().end());
    std::vector<Shuffle> out;
    Shuffle cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == verts.size()) {
            out.push_back(cur);
            return;
        }
        Perm p = identity_perm(children_count(t, verts[i]));
        do {
            cur[verts[i]] = perm_to_map(p);
            rec(i + 1);
        } while (std::next_permutation(p.begin(), p.end()));
    };
    rec(0);
    return out;
}

namespace {

std::string describe(const PlaneTree& t, const DecoMap& x) {
    std::string s = "T={" + format_tree(t) + "} x={";
    bool first = true;
    for (const auto& [u, d] : x) {
        if (!first) s += ' ';
        first = false;
        s += format_word(u) + ":";
        for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    }
    return s + "}";
}

PlaneTree as_plane(const RootedSubtree& t) { return PlaneTree(t.words()); }

}  // namespace

EquivarianceReport check_equivariance(const ShuffleRule& rule,
                                      const std::vector<std::pair<PlaneTree, DecoMap>>& instances) {
    EquivarianceReport rep;
    for (const auto& [T, x] : instances) {
        const Shuffle sigma = rule_shuffle(rule, T, x);
        for (const auto& pi : all_permutation_families(T)) {
            ++rep.checked;
            const PlaneTree T2 = as_plane(apply_shuffle(T, pi));
            const DecoMap x2 = push_forward(pi, T, x);
            if (rule_shuffle(rule, T2, x2) != push_forward(pi, T, sigma))
                rep.violations.push_back("relabelling breaks the rule on " + describe(T, x));
        }
    }
    return rep;
}

EquivarianceReport check_unshuffling(const ShuffleRule& rule,
                                     const std::vector<std::pair<PlaneTree, DecoMap>>& instances) {
    EquivarianceReport rep;
    for (const auto& [T, x] : instances) {
        ++rep.checked;
        const Shuffle sigma = rule_shuffle(rule, T, x);
        const PlaneTree T2 = as_plane(apply_shuffle(T, sigma));
        const DecoMap x2 = push_forward(sigma, T, x);
        const Shuffle sigma2 = rule_shuffle(rule, T2, x2);
        if (sigma2 != bar(inverse_shuffle(sigma, T)))
            rep.violations.push_back("shuffle of the image differs from bar(sigma^-1) on " + describe(T, x));
        const Shuffle back = bar(sigma2);
        if (as_plane(apply_shuffle(T2, back)) != T || push_forward(back, T2, x2) != x)
            rep.violations.push_back("unshuffling does not recover " + describe(T, x));

        // Converse direction, reading the instance as the shuffled pair.
        const Shuffle sb = bar(sigma);
        const PlaneTree T0 = as_plane(apply_shuffle(T, sb));
        const DecoMap x0 = push_forward(sb, T, x);
        const Shuffle s0 = rule_shuffle(rule, T0, x0);
        if (as_plane(apply_shuffle(T0, s0)) != T || push_forward(s0, T0, x0) != x)
            rep.violations.push_back("reshuffling does not recover " + describe(T, x));
    }
    return rep;
}

EquivarianceReport check_reindexed_equivalence(const ShuffleRule& rule,
                                               const std::vector<std::pair<PlaneTree, DecoMap>>& instances,
                                               const std::vector<PlaneTree>& targets) {
    EquivarianceReport rep;
    for (const auto& [T, x] : instances) {
        const Shuffle sigma = rule_shuffle(rule, T, x);
        const PlaneTree image = as_plane(apply_shuffle(T, sigma));
        for (const auto& T2 : targets) {
            if (T2.size() != T.size()) continue;
            for (const auto& pi : all_permutation_families(T2)) {
                ++rep.checked;
                const Shuffle pinv = inverse_shuffle(pi, T2);
                const bool lhs = image == T2 && sigma == pinv;
                bool rhs = false;
                if (as_plane(apply_shuffle(T2, pi)) == T) {
                    const DecoMap xr = push_forward(pinv, T, x);
                    rhs = rule_shuffle(rule, T2, xr) == bar(pi);
                }
                if (lhs != rhs)
                    rep.violations.push_back("reindexed equivalence fails on " + describe(T, x) + " with target {" +
                                             format_tree(T2) + "}");
            }
        }
    }
    return rep;
}

std::vector<DecoMap> all_decorations(const PlaneTree& t, const std::vector<Deco>& alphabet) {
    std::vector<Word> verts(t.words().begin(), t.words().end());
    std::vector<DecoMap> out;
    DecoMap cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == verts.size()) {
            out.push_back(cur);
            return;
        }
        for (const auto& a : alphabet) {
            cur[verts[i]] = a;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

InvarianceReport shuffle_invariance_check(const std::vector<Rational>& w, const std::map<Deco, Rational>& nu,
                                          const ShuffleRule& rule, int n) {
    std::vector<Deco> alphabet;
    for (const auto& [a, p] : nu) alphabet.push_back(a);
    using Atom = std::pair<PlaneTree, DecoMap>;
    std::map<Atom, Rational> base, pushed;
    for (const auto& [T, p] : sg_distribution(w, 1, n))
        for (auto& x : all_decorations(T, alphabet)) {
            Rational m = p;
            for (const auto& [u, a] : x) m *= nu.at(a);
            if (m == 0) continue;
            const Shuffle sigma = rule_shuffle(rule, T, x);
            pushed[{as_plane(apply_shuffle(T, sigma)), push_forward(sigma, T, x)}] += m;
            base[{T, std::move(x)}] += m;
        }
    InvarianceReport rep;
    rep.atoms = base.size();
    rep.total = 0;
    for (const auto& [a, m] : base) {
        rep.total += m;
        auto it = pushed.find(a);
        if (it == pushed.end() || it->second != m) ++rep.mismatches;
    }
    for (const auto& [a, m] : pushed)
        if (!base.count(a)) ++rep.mismatches;
    return rep;
}

}  // namespace sgt
