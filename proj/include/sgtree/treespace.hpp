#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sgt {

// Ulam-Harris word; the empty word is the root. std::vector ordering is
// lexicographic with prefixes first, which is the canonical vertex order.
using Word = std::vector<int>;
using WordSet = std::set<Word>;

// Finite word of positive parts.
using Composition = std::vector<int>;

std::string format_word(const Word& u);
Word parse_word(std::string_view text);
Word parent_of(const Word& u);
Word child_of(const Word& u, int i);
bool is_prefix(const Word& u, const Word& v);

// Parent-closed finite subset of the Ulam-Harris tree.
class RootedSubtree {
public:
    RootedSubtree();
    explicit RootedSubtree(WordSet words);

    const WordSet& words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    bool contains(const Word& u) const { return words_.count(u) != 0; }

    // Sorted positions i with ui in the set; u must belong to the set.
    std::vector<int> children_positions(const Word& u) const;

    // Largest letter used anywhere (0 for the root-only tree).
    int max_letter() const;

    friend bool operator==(const RootedSubtree&, const RootedSubtree&) = default;
    friend auto operator<=>(const RootedSubtree& a, const RootedSubtree& b) {
        return a.words_ <=> b.words_;
    }

protected:
    struct Unchecked {};
    RootedSubtree(WordSet words, Unchecked) : words_(std::move(words)) {}
    WordSet words_;
};

// Additionally closed under left siblings.
class PlaneTree : public RootedSubtree {
public:
    PlaneTree() = default;
    explicit PlaneTree(WordSet words);

    static PlaneTree unchecked(WordSet words);
};

int children_count(const RootedSubtree& t, const Word& u);

bool is_plane(const WordSet& words);
bool is_parent_closed(const WordSet& words);

bool is_right_leaning_leaf_addition(const PlaneTree& t, const PlaneTree& t2);
bool is_bouquet_addition(const PlaneTree& t, const PlaneTree& t2, int d);
// T2 adds exactly one vertex to T, a leaf of T2 (not necessarily rightmost).
bool is_leaf_addition(const RootedSubtree& t, const RootedSubtree& t2);

struct RootDecomposition {
    std::vector<PlaneTree> subtrees;
    Composition sizes;
};

RootDecomposition decompose_root(const PlaneTree& t);
PlaneTree compose_root(const std::vector<PlaneTree>& subtrees);
Composition root_composition(const PlaneTree& t);

PlaneTree complete_d_ary(const RootedSubtree& tau, int d);

// Word-list text: "e,1,2,1.1". "0" and "∅" are accepted for the root.
WordSet parse_word_list(std::string_view text);
PlaneTree parse_plane_tree(std::string_view text);
RootedSubtree parse_subtree(std::string_view text);
std::string format_tree(const RootedSubtree& t);

std::string to_dot(const RootedSubtree& t, std::string_view name = "T");

// Depth-first balanced-parenthesis code of a plane tree, children in order.
std::string paren_code(const PlaneTree& t);

}  // namespace sgt
