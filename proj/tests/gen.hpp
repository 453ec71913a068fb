#pragma once

// Hand-rolled generators for property tests, driven by CounterRng so every
// failing case is reproducible from its seed.

#include <algorithm>
#include <numeric>
#include <vector>

#include "sgtree/rng.hpp"
#include "sgtree/subtree_model.hpp"
#include "sgtree/treespace.hpp"

namespace gen {

using namespace sgt;

inline int uniform(CounterRng& r, int lo, int hi) {
    return lo + static_cast<int>(r.next() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random parent-closed subtree with n vertices and letters up to dmax.
inline RootedSubtree subtree(CounterRng& r, int n, int dmax) {
    WordSet w{Word{}};
    while (static_cast<int>(w.size()) < n) {
        std::vector<Word> verts(w.begin(), w.end());
        Word u = verts[static_cast<std::size_t>(uniform(r, 0, static_cast<int>(verts.size()) - 1))];
        u.push_back(uniform(r, 1, dmax));
        w.insert(std::move(u));
    }
    return RootedSubtree(std::move(w));
}

inline PlaneTree plane_tree(CounterRng& r, int n) {
    PlaneTree t(WordSet{Word{}});
    while (static_cast<int>(t.size()) < n) {
        std::vector<Word> verts(t.words().begin(), t.words().end());
        const Word& u = verts[static_cast<std::size_t>(uniform(r, 0, static_cast<int>(verts.size()) - 1))];
        WordSet w = t.words();
        w.insert(child_of(u, children_count(t, u) + 1));
        t = PlaneTree(std::move(w));
    }
    return t;
}

inline Perm permutation(CounterRng& r, int k) {
    Perm p = identity_perm(k);
    for (int i = k - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(uniform(r, 0, i))]);
    return p;
}

// Random injective maps from each children-position set into {1..range}.
inline Shuffle shuffle(CounterRng& r, const RootedSubtree& tau, int range) {
    Shuffle g;
    for (const auto& u : tau.words()) {
        const auto pos = tau.children_positions(u);
        std::vector<int> pool(static_cast<std::size_t>(range));
        std::iota(pool.begin(), pool.end(), 1);
        for (int i = range - 1; i > 0; --i)
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(uniform(r, 0, i))]);
        InjMap m;
        for (std::size_t i = 0; i < pos.size(); ++i) m[pos[i]] = pool[i];
        g.emplace(u, std::move(m));
    }
    return g;
}

inline Shuffle permutation_family(CounterRng& r, const PlaneTree& t) {
    Shuffle g;
    for (const auto& u : t.words()) g.emplace(u, perm_to_map(permutation(r, children_count(t, u))));
    return g;
}

}  // namespace gen
