#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sgtree/compositions.hpp"
#include "sgtree/errors.hpp"
#include "sgtree/rational.hpp"
#include "sgtree/subtree_model.hpp"
#include "sgtree/treespace.hpp"

namespace sgt {

inline constexpr int kPlaneTreeHorizon = 10;
inline constexpr int kSubtreeHorizon = 7;
inline constexpr int kSubtreeMaxLetter = 3;

struct HorizonExceeded : DomainError {
    HorizonExceeded(const std::string& what, const BigInt& estimate)
        : DomainError(what + " (about " + estimate.get_str() + " objects)"), estimate(estimate) {}
    BigInt estimate;
};

// Plane trees with n vertices in canonical order; for d >= 2 only those in
// which every child count is a multiple of d.
std::vector<PlaneTree> enumerate_plane_trees(int n, int d = 1, int horizon = kPlaneTreeHorizon);

// Rooted subtrees of the dmax-ary tree with n vertices.
std::vector<RootedSubtree> enumerate_subtrees(int n, int dmax, int horizon = kSubtreeHorizon,
                                              int max_letter = kSubtreeMaxLetter);

template <class X>
using ExactLaw = std::map<X, Rational>;

// Normalises a table of nonnegative masses, dropping zero atoms.
template <class X>
ExactLaw<X> normalize(std::map<X, Rational> mass, const std::string& model) {
    Rational total = 0;
    for (const auto& [x, m] : mass) total += m;
    if (total == 0) throw DomainError(model + " has zero total mass");
    ExactLaw<X> out;
    for (auto& [x, m] : mass)
        if (m != 0) out.emplace(x, m / total);
    return out;
}

// Each law straight from its product formula over the enumerated space.
ExactLaw<PlaneTree> exact_sg_law(const std::vector<Rational>& w, int d, int n);
ExactLaw<RootedSubtree> exact_st_law(const Theta& theta, int n);
ExactLaw<Composition> exact_comp_law(const WeightPair& wp, ArithClass cls, int n);
ExactLaw<std::set<int>> exact_subset_law(const Theta& theta, int k);

// Unnormalised total of the subtree weights over the subtrees with n vertices.
Rational st_partition_function(const Theta& theta, int n);

// Both sides of the plane-tree factorisation of ST, vertex by vertex, over
// every subtree with n vertices and letters up to one past the support.
CheckReport check_st_factorization(const Theta& theta, int n);

struct JansonExpectations {
    Rational e3;
    Rational e4;
};

// Mean root degree under the conditioned laws on 3 and 4 vertices for
// offspring law ((1-eps)/2, eps, (1-eps)/2).
JansonExpectations janson_expectations(const Rational& eps);

struct InterchangeReport {
    std::size_t sources = 0;
    std::size_t targets = 0;
    bool ok = true;
    std::string first_discrepancy;
};

// sum_x L_n(x) K(x, y) = L_{n+d}(y) for every y, exactly.
template <class X, class Row, class Fmt>
InterchangeReport kernel_interchange_check(const ExactLaw<X>& from, const ExactLaw<X>& to, Row&& row,
                                           Fmt&& fmt) {
    InterchangeReport rep;
    std::map<X, Rational> pushed;
    for (const auto& [x, p] : from) {
        ++rep.sources;
        Rational total = 0;
        for (const auto& [y, k] : row(x)) {
            total += k;
            pushed[y] += p * k;
        }
        if (total != 1 && rep.ok) {
            rep.ok = false;
            rep.first_discrepancy = "row of " + fmt(x) + " sums to " + to_string(total);
        }
    }
    std::set<X> ys;
    for (const auto& [y, m] : to) ys.insert(y);
    for (const auto& [y, m] : pushed) ys.insert(y);
    for (const auto& y : ys) {
        ++rep.targets;
        auto a = pushed.find(y);
        auto b = to.find(y);
        const Rational lhs = a == pushed.end() ? Rational(0) : a->second;
        const Rational rhs = b == to.end() ? Rational(0) : b->second;
        if (lhs != rhs && rep.ok) {
            rep.ok = false;
            rep.first_discrepancy = "at " + fmt(y) + ": pushed " + to_string(lhs) + ", target " + to_string(rhs);
        }
    }
    return rep;
}

InterchangeReport tree_interchange(const std::vector<Rational>& w, int d, int n);
InterchangeReport composition_interchange(const WeightPair& wp, ArithClass cls, int n);

struct GofReport {
    std::uint64_t samples = 0;
    std::size_t categories = 0;
    double chi2 = 0;
    int df = 0;
    double p_value = 1;
    Rational tv;
    bool undersampled = false;
};

GofReport goodness_of_fit(const std::vector<Rational>& probs, const std::vector<std::uint64_t>& counts,
                          std::uint64_t outside = 0);

// Counts keyed by outcome; outcomes missing from the law count as outside.
template <class X>
GofReport goodness_of_fit(const std::map<X, std::uint64_t>& counts, const ExactLaw<X>& law) {
    std::vector<Rational> probs;
    std::vector<std::uint64_t> c;
    std::uint64_t outside = 0;
    for (const auto& [x, p] : law) {
        probs.push_back(p);
        auto it = counts.find(x);
        c.push_back(it == counts.end() ? 0 : it->second);
    }
    for (const auto& [x, k] : counts)
        if (!law.count(x)) outside += k;
    return goodness_of_fit(probs, c, outside);
}

}  // namespace sgt
