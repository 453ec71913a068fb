#include "trace.hpp"

#include <algorithm>
#include <istream>
#include <iterator>

#include <json.hpp>

#include "sgtree/errors.hpp"

namespace sgt::cli {

using nlohmann::json;

std::string to_json_line(const TraceRecord& r, TraceKind kind) {
    nlohmann::ordered_json j;
    j["step"] = r.step;
    j["n"] = r.n;
    if (kind == TraceKind::Plane) {
        std::vector<std::string> words;
        for (const auto& u : r.added) words.push_back(format_word(u));
        j["new_vertices"] = words;
        j["tree"] = format_tree(r.tree);
    } else {
        j["new_vertex"] = format_word(r.added.at(0));
        j["subtree"] = format_tree(r.tree);
    }
    return j.dump();
}

namespace {

std::vector<Word> difference(const RootedSubtree& a, const RootedSubtree& b) {
    std::vector<Word> out;
    std::set_difference(b.words().begin(), b.words().end(), a.words().begin(), a.words().end(),
                        std::back_inserter(out));
    return out;
}

[[noreturn]] void bad(int line, const std::string& why) {
    throw DomainError("trace line " + std::to_string(line) + ": " + why);
}

}  // namespace

Trace load_trace(std::istream& in) {
    Trace tr;
    std::string text;
    int line = 0;
    int width = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty()) continue;
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            bad(line, e.what());
        }
        const bool plane = j.contains("tree");
        if (!plane && !j.contains("subtree")) bad(line, "no tree field");
        const auto kind = plane ? TraceKind::Plane : TraceKind::Subtree;
        if (tr.records.empty()) tr.kind = kind;
        if (kind != tr.kind) bad(line, "mixed record kinds");

        TraceRecord r;
        try {
            r.step = j.at("step").get<int>();
            r.n = j.at("n").get<int>();
            if (plane) {
                r.tree = parse_plane_tree(j.at("tree").get<std::string>());
                for (const auto& w : j.at("new_vertices")) r.added.push_back(parse_word(w.get<std::string>()));
            } else {
                r.tree = parse_subtree(j.at("subtree").get<std::string>());
                r.added.push_back(parse_word(j.at("new_vertex").get<std::string>()));
            }
        } catch (const json::exception& e) {
            bad(line, e.what());
        } catch (const ParseError& e) {
            bad(line, e.what());
        }
        if (r.n != static_cast<int>(r.tree.size())) bad(line, "n does not match the tree size");

        if (tr.records.empty()) {
            if (r.tree.size() != 1) bad(line, "trace must start at the root");
        } else {
            const auto& prev = tr.records.back();
            if (r.step != prev.step + 1) bad(line, "steps are not consecutive");
            auto added = r.added;
            std::sort(added.begin(), added.end());
            if (difference(prev.tree, r.tree) != added) bad(line, "new vertices do not match the tree difference");
            if (!std::includes(r.tree.words().begin(), r.tree.words().end(), prev.tree.words().begin(),
                               prev.tree.words().end()))
                bad(line, "not an inclusion");
            if (plane) {
                const int d = r.n - prev.n;
                if (width == 0) width = d;
                if (d != width) bad(line, "step width changed");
                const PlaneTree a(prev.tree.words()), b(r.tree.words());
                const bool ok = d == 1 ? is_right_leaning_leaf_addition(a, b) : is_bouquet_addition(a, b, d);
                if (!ok) bad(line, d == 1 ? "not a right-leaning leaf addition" : "not a right-leaning bouquet");
            } else if (!is_leaf_addition(prev.tree, r.tree)) {
                bad(line, "not a leaf addition");
            }
        }
        tr.records.push_back(std::move(r));
    }
    if (tr.records.empty()) throw DomainError("empty trace");
    return tr;
}

}  // namespace sgt::cli
