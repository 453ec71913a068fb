#include "sgtree/treespace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

#include "sgtree/errors.hpp"

namespace sgt {

std::string format_word(const Word& u) {
    if (u.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(u[i]);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Word parse_word(std::string_view text) {
    auto s = trim(text);
    if (s == "e" || s == "0" || s == "∅") return {};
    Word out;
    std::size_t start = 0;
    for (;;) {
        auto dot = s.find('.', start);
        auto piece = s.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        int v = 0;
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() || v < 1)
            throw ParseError("malformed word '" + std::string(s) + "'");
        out.push_back(v);
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return out;
}

Word parent_of(const Word& u) {
    if (u.empty()) throw DomainError("the root has no parent");
    return Word(u.begin(), u.end() - 1);
}

Word child_of(const Word& u, int i) {
    Word v = u;
    v.push_back(i);
    return v;
}

bool is_prefix(const Word& u, const Word& v) {
    return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

bool is_parent_closed(const WordSet& words) {
    if (!words.count(Word{})) return false;
    for (const auto& u : words) {
        if (u.empty()) continue;
        for (int l : u)
            if (l < 1) return false;
        if (!words.count(parent_of(u))) return false;
    }
    return true;
}

bool is_plane(const WordSet& words) {
    if (!is_parent_closed(words)) return false;
    for (const auto& u : words) {
        if (u.empty() || u.back() == 1) continue;
        Word left = u;
        --left.back();
        if (!words.count(left)) return false;
    }
    return true;
}

RootedSubtree::RootedSubtree() : words_{Word{}} {}

RootedSubtree::RootedSubtree(WordSet words) : words_(std::move(words)) {
    if (!is_parent_closed(words_)) throw DomainError("word set is not a rooted subtree");
}

std::vector<int> RootedSubtree::children_positions(const Word& u) const {
    if (!contains(u)) throw DomainError("vertex " + format_word(u) + " not in tree");
    std::vector<int> out;
    for (auto it = words_.upper_bound(u); it != words_.end() && is_prefix(u, *it); ++it)
        if (it->size() == u.size() + 1) out.push_back(it->back());
    return out;
}

int RootedSubtree::max_letter() const {
    int m = 0;
    for (const auto& u : words_)
        for (int l : u) m = std::max(m, l);
    return m;
}

PlaneTree::PlaneTree(WordSet words) : RootedSubtree(std::move(words), Unchecked{}) {
    if (!is_plane(words_)) throw DomainError("word set is not a plane tree");
}

PlaneTree PlaneTree::unchecked(WordSet words) {
    PlaneTree t;
    t.words_ = std::move(words);
    return t;
}

int children_count(const RootedSubtree& t, const Word& u) {
    return static_cast<int>(t.children_positions(u).size());
}

namespace {

// Vertices of t2 missing from t, or nullopt-like empty flag if t is not a subset.
bool difference(const RootedSubtree& t, const RootedSubtree& t2, std::vector<Word>& added) {
    if (!std::includes(t2.words().begin(), t2.words().end(), t.words().begin(), t.words().end()))
        return false;
    std::set_difference(t2.words().begin(), t2.words().end(), t.words().begin(), t.words().end(),
                        std::back_inserter(added));
    return true;
}

}  // namespace

bool is_right_leaning_leaf_addition(const PlaneTree& t, const PlaneTree& t2) {
    return is_bouquet_addition(t, t2, 1);
}

bool is_bouquet_addition(const PlaneTree& t, const PlaneTree& t2, int d) {
    if (d < 1) return false;
    std::vector<Word> added;
    if (!difference(t, t2, added) || added.size() != static_cast<std::size_t>(d)) return false;
    const Word v = parent_of(added.front());
    if (!t.contains(v)) return false;
    const int k = children_count(t, v);
    for (int j = 0; j < d; ++j)
        if (added[j] != child_of(v, k + 1 + j)) return false;
    return true;
}

bool is_leaf_addition(const RootedSubtree& t, const RootedSubtree& t2) {
    std::vector<Word> added;
    if (!difference(t, t2, added) || added.size() != 1) return false;
    return !added.front().empty() && t.contains(parent_of(added.front()));
}

RootDecomposition decompose_root(const PlaneTree& t) {
    RootDecomposition out;
    std::vector<WordSet> parts;
    for (const auto& u : t.words()) {
        if (u.empty()) continue;
        const auto j = static_cast<std::size_t>(u.front());
        if (parts.size() < j) parts.resize(j);
        parts[j - 1].insert(Word(u.begin() + 1, u.end()));
    }
    for (auto& p : parts) {
        out.sizes.push_back(static_cast<int>(p.size()));
        out.subtrees.push_back(PlaneTree::unchecked(std::move(p)));
    }
    return out;
}

Composition root_composition(const PlaneTree& t) {
    Composition c;
    for (const auto& u : t.words()) {
        if (u.empty()) continue;
        const auto j = static_cast<std::size_t>(u.front());
        if (c.size() < j) c.resize(j, 0);
        ++c[j - 1];
    }
    return c;
}

PlaneTree compose_root(const std::vector<PlaneTree>& subtrees) {
    WordSet out{Word{}};
    for (std::size_t j = 0; j < subtrees.size(); ++j)
        for (const auto& u : subtrees[j].words()) {
            Word v;
            v.reserve(u.size() + 1);
            v.push_back(static_cast<int>(j + 1));
            v.insert(v.end(), u.begin(), u.end());
            out.insert(std::move(v));
        }
    return PlaneTree::unchecked(std::move(out));
}

PlaneTree complete_d_ary(const RootedSubtree& tau, int d) {
    if (d < 1) throw DomainError("d must be positive");
    if (tau.max_letter() > d)
        throw DomainError("subtree uses a letter larger than d=" + std::to_string(d));
    WordSet out = tau.words();
    for (const auto& u : tau.words())
        for (int i = 1; i <= d; ++i) out.insert(child_of(u, i));
    return PlaneTree::unchecked(std::move(out));
}

WordSet parse_word_list(std::string_view text) {
    WordSet out;
    std::size_t start = 0;
    for (;;) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        Word u = parse_word(piece);
        if (!out.insert(u).second) throw ParseError("duplicate word '" + format_word(u) + "'");
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

void check_closure(const WordSet& words, bool plane) {
    if (!words.count(Word{})) throw ParseError("missing root 'e'");
    for (const auto& u : words) {
        if (u.empty()) continue;
        if (!words.count(parent_of(u)))
            throw ParseError("word '" + format_word(u) + "' has no parent in the list");
        if (plane && u.back() > 1) {
            Word left = u;
            --left.back();
            if (!words.count(left))
                throw ParseError("word '" + format_word(u) + "' is missing its left sibling " +
                                 format_word(left));
        }
    }
}

}  // namespace

PlaneTree parse_plane_tree(std::string_view text) {
    WordSet w = parse_word_list(text);
    check_closure(w, true);
    return PlaneTree::unchecked(std::move(w));
}

RootedSubtree parse_subtree(std::string_view text) {
    WordSet w = parse_word_list(text);
    check_closure(w, false);
    return RootedSubtree(std::move(w));
}

std::string format_tree(const RootedSubtree& t) {
    std::string out;
    for (const auto& u : t.words()) {
        if (!out.empty()) out += ',';
        out += format_word(u);
    }
    return out;
}

std::string to_dot(const RootedSubtree& t, std::string_view name) {
    std::string out = "digraph " + std::string(name) + " {\n";
    for (const auto& u : t.words())
        out += "  \"" + format_word(u) + "\" [label=\"" + format_word(u) + "\"];\n";
    for (const auto& u : t.words())
        if (!u.empty())
            out += "  \"" + format_word(parent_of(u)) + "\" -> \"" + format_word(u) + "\";\n";
    out += "}\n";
    return out;
}

std::string paren_code(const PlaneTree& t) {
    std::string out;
    std::function<void(const Word&)> rec = [&](const Word& u) {
        out += '(';
        for (int i = 1;; ++i) {
            Word c = child_of(u, i);
            if (!t.contains(c)) break;
            rec(c);
        }
        out += ')';
    };
    rec(Word{});
    return out;
}

}  // namespace sgt
