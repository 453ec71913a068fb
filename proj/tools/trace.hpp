#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgtree/treespace.hpp"

namespace sgt::cli {

enum class TraceKind { Plane, Subtree };

struct TraceRecord {
    int step = 0;
    int n = 0;
    std::vector<Word> added;
    RootedSubtree tree;
};

struct Trace {
    TraceKind kind = TraceKind::Plane;
    std::vector<TraceRecord> records;
};

std::string to_json_line(const TraceRecord& r, TraceKind kind);

// Parses JSON-lines and re-validates: consecutive inclusion, the recorded
// vertices equal the set difference, and the growth predicate of the kind.
// Plane traces use the bouquet width given by the first step.
Trace load_trace(std::istream& in);

}  // namespace sgt::cli
