#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgtree/compositions.hpp"
#include "sgtree/errors.hpp"
#include "sgtree/rational.hpp"
#include "sgtree/rng.hpp"
#include "sgtree/sgtrees.hpp"
#include "sgtree/treespace.hpp"

namespace sgt {

// Injective map on positive integers, given on a finite domain.
using InjMap = std::map<int, int>;
// One injective map per vertex, keyed by the vertex word it acts at.
using Shuffle = std::map<Word, InjMap>;
// perm[i-1] is the image of i.
using Perm = std::vector<int>;

InjMap perm_to_map(const Perm& p);
InjMap invert(const InjMap& g);

// g.u, letter by letter along the ancestral line of u.
Word act(const Shuffle& g, const Word& u);

// Throws DomainError unless every vertex of tau carries an injective map
// whose domain is exactly its children positions.
void check_shuffle(const RootedSubtree& tau, const Shuffle& g);

RootedSubtree apply_shuffle(const RootedSubtree& tau, const Shuffle& g);
Shuffle inverse_shuffle(const Shuffle& g, const RootedSubtree& tau);
Shuffle bar(const Shuffle& g);
Shuffle identity_shuffle(const RootedSubtree& tau);

// (g_* x) at g.u is x at u.
template <class V>
std::map<Word, V> push_forward(const Shuffle& g, const RootedSubtree& tau, const std::map<Word, V>& x) {
    if (x.size() != tau.size()) throw DomainError("decoration does not match the tree");
    std::map<Word, V> out;
    for (const auto& u : tau.words()) {
        auto it = x.find(u);
        if (it == x.end()) throw DomainError("decoration missing at " + format_word(u));
        out.emplace(act(g, u), it->second);
    }
    return out;
}

std::map<Word, std::set<int>> children_positions(const RootedSubtree& tau);

// Increasing bijection from S onto {1, ..., |S|}.
InjMap rank_map(const std::set<int>& s);
Shuffle p_tau(const RootedSubtree& tau);
PlaneTree push(const RootedSubtree& tau);

struct DecoratedTree {
    PlaneTree T;
    std::map<Word, std::set<int>> S;

    friend bool operator==(const DecoratedTree&, const DecoratedTree&) = default;
};

bool is_grading_compatible(const DecoratedTree& dt);
DecoratedTree bij_P(const RootedSubtree& tau);
RootedSubtree bij_P_inv(const DecoratedTree& dt);

// Weights theta_1, theta_2, ... with finite support.
class Theta {
public:
    explicit Theta(std::vector<Rational> values);

    const std::vector<Rational>& values() const { return v_; }
    Rational at(int i) const;
    const std::vector<int>& support() const { return supp_; }
    int size() const { return static_cast<int>(supp_.size()); }
    // e_0, ..., e_N with N the support size.
    const std::vector<Rational>& e() const { return e_; }

private:
    std::vector<Rational> v_;
    std::vector<int> supp_;
    std::vector<Rational> e_;
};

std::vector<Rational> elementary_symmetric(const std::vector<Rational>& theta, int kmax);

std::map<std::set<int>, Rational> subset_distribution(const Theta& theta, int k);

// Pivot-and-insert realisation of a nested family S_0 c S_1 c ... with
// S_k distributed as B_k for every k.
class NestedSubsetCoupling {
public:
    explicit NestedSubsetCoupling(const Theta& theta);

    int size() const { return static_cast<int>(pivots_.size()); }
    const std::vector<int>& pivots() const { return pivots_; }
    // thresholds()[j][k-1] = p_k at recursion depth j.
    const std::vector<std::vector<Rational>>& thresholds() const { return p_; }

    std::vector<int> sample(CounterRng& rng) const;
    std::map<std::vector<int>, Rational> joint_law() const;

private:
    std::vector<int> pivots_;
    std::vector<std::vector<Rational>> p_;
    std::vector<ExactCdf> rank_;
};

// ST law via the factorisation through plane trees with subset
// decorations: SG^{e(theta)} times independent B_k per vertex.
std::map<RootedSubtree, Rational> st_distribution(const Theta& theta, int n);

Perm sigma_rule(int k, const std::vector<int>& x);
Perm identity_perm(int k);

// Increasing chain of subtrees: a growth chain for e(theta) whose j-th child
// of u is placed at position X_u[j], with X_u drawn once per vertex.
class SubtreeChain {
public:
    SubtreeChain(std::shared_ptr<const GrowthModel> model, std::shared_ptr<const NestedSubsetCoupling> xs,
                 std::uint64_t seed);

    // Restart with a fresh chain identified by `id` under the same seed.
    void reset(std::uint64_t id);
    int size() const { return chain_.size(); }

    // Returns the new vertex of the subtree.
    Word step();

    PlaneTree plane_tree() const { return chain_.tree(); }
    RootedSubtree subtree() const;
    // P^{-1}(T_n, S_n): the naive coupling.
    RootedSubtree naive() const;
    // P^{-1}(sigma_n . T_n, (sigma_n)_* S_n), built from the definitions.
    RootedSubtree literal() const;
    std::map<Word, std::vector<int>> decorations() const;

    // Canonical key of the current subtree.
    std::string key() const;

private:
    const std::vector<int>& xseq(int node);

    std::shared_ptr<const GrowthModel> model_;
    std::shared_ptr<const NestedSubsetCoupling> xs_;
    std::uint64_t seed_;
    std::uint64_t id_ = 0;
    GrowthChain chain_;
    std::vector<int> letter_;
    std::vector<std::vector<int>> x_;
    std::vector<char> has_x_;
};

std::shared_ptr<const GrowthModel> subtree_growth_model(const Theta& theta, int N);

struct SubtreeStep {
    int n = 1;
    Word added;
    RootedSubtree tree;
};

std::vector<SubtreeStep> subtree_grow_chain(const Theta& theta, int N, std::uint64_t seed);

// Decoration-dependent shuffling rules on plane trees.
using Deco = std::vector<int>;
using DecoMap = std::map<Word, Deco>;
using ShuffleRule = std::function<Perm(const PlaneTree&, const DecoMap&, const Word&)>;

Shuffle rule_shuffle(const ShuffleRule& rule, const PlaneTree& t, const DecoMap& x);

// sigma_{k_u, x_u}; the identity where k_u exceeds the decoration length.
ShuffleRule sigma_shuffle_rule();
// Reverses the children of u iff the decoration at u1 equals alpha.
ShuffleRule planted_rule(const Deco& alpha);

// All per-vertex permutation families on a plane tree.
std::vector<Shuffle> all_permutation_families(const PlaneTree& t);

struct EquivarianceReport {
    std::size_t checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

EquivarianceReport check_equivariance(const ShuffleRule& rule,
                                      const std::vector<std::pair<PlaneTree, DecoMap>>& instances);

// Unshuffling identities on each instance: both directions of the
// equivalence and sigma_{T',x'} = bar((sigma_{T,x})^{-1}).
EquivarianceReport check_unshuffling(const ShuffleRule& rule,
                                     const std::vector<std::pair<PlaneTree, DecoMap>>& instances);

// The reindexed equivalence, over every target tree of the same size and
// every permutation family on it.
EquivarianceReport check_reindexed_equivalence(const ShuffleRule& rule,
                                               const std::vector<std::pair<PlaneTree, DecoMap>>& instances,
                                               const std::vector<PlaneTree>& targets);

struct InvarianceReport {
    std::size_t atoms = 0;
    std::size_t mismatches = 0;
    Rational total;
    bool ok() const { return mismatches == 0 && total == 1; }
};

// Pushes SG_n^w(T) nu^{(x) T}(x) through (T, x) -> (sigma.T, sigma_* x) and
// compares with the original measure atom by atom.
InvarianceReport shuffle_invariance_check(const std::vector<Rational>& w,
                                          const std::map<Deco, Rational>& nu, const ShuffleRule& rule, int n);

// Every decoration of t drawn from the support of nu.
std::vector<DecoMap> all_decorations(const PlaneTree& t, const std::vector<Deco>& alphabet);

}  // namespace sgt
