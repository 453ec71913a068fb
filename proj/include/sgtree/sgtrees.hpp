#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sgtree/compositions.hpp"
#include "sgtree/rational.hpp"
#include "sgtree/rng.hpp"
#include "sgtree/treespace.hpp"

namespace sgt {

struct LogConcavity {
    bool ok = true;
    int witness = -1;  // first offending index
    std::string reason;
};

// Squares dominate neighbour products and the support is an interval.
LogConcavity is_log_concave(const std::vector<Rational>& x);

// 2x2 minors of the Toeplitz array (x_{i-j}), indices in [0, window).
CheckReport check_toeplitz_tp2(const std::vector<Rational>& x, int window);

std::vector<Rational> tilt(const std::vector<Rational>& w, const Rational& alpha, const Rational& beta);

// Entries w_0, w_d, w_2d, ...
std::vector<Rational> progression(const std::vector<Rational>& w, int d);

// Throws DomainError unless w is a valid offspring weight for step d.
void validate_weights(const std::vector<Rational>& w, int d);

enum class TablePath { Direct, Arithmetic };

// Tables for trees of at most N vertices. Rows n run over 0..N-1 (root
// compositions), b over 1..N.
struct PartitionTables {
    std::vector<Rational> w;
    int d = 1;
    int N = 1;
    TablePath path = TablePath::Direct;
    std::vector<Rational> b;                          // b[0] unused
    std::vector<std::vector<Rational>> f;             // f[n][k]
    std::vector<std::vector<std::vector<Rational>>> F;  // F[s][n][k], arithmetic path only
    ShiftedZ z;

    const Rational& b_at(int n) const;
    Rational w_at(int i) const;
    Rational W_at(int j) const { return w_at(j * d); }
    WeightPair pair() const;
};

PartitionTables compute_tables(const std::vector<Rational>& w, int d, int N);
PartitionTables compute_tables(const std::vector<Rational>& w, int d, int N, TablePath path);

// Identities tying the tables together: b as a Z value, f against direct
// composition sums, and in the arithmetic case the W^{*d} recursion and the
// edge values of the top shift.
CheckReport check_table_identities(const PartitionTables& t);

// Exact law of the simply generated tree with n vertices, built from the
// b table through the root decomposition.
std::map<PlaneTree, Rational> sg_distribution(const std::vector<Rational>& w, int d, int n);

Rational tree_weight(const PlaneTree& t, const std::vector<Rational>& w);

CheckReport check_tp2_array(const PartitionTables& t, int N);

// Chain of Z ratios across shifts, with its two endpoint identities.
CheckReport check_ratio_chain(const PartitionTables& t, int N);

// Horizon needed by check_ratio_chain up to n = N.
int ratio_chain_horizon(int d, int N);

class GrowthModel {
public:
    GrowthModel(std::vector<Rational> w, int d, int N);
    GrowthModel(PartitionTables tables);

    const PartitionTables& tables() const { return t_; }
    const CompositionCoupling& coupling() const { return cc_; }
    int d() const { return t_.d; }
    int horizon() const { return t_.N; }

    std::map<PlaneTree, Rational> kernel_row(const PlaneTree& t) const;

private:
    PartitionTables t_;
    CompositionCoupling cc_;
};

std::map<PlaneTree, Rational> growth_kernel_row(const std::vector<Rational>& w, int d, const PlaneTree& t);

// Refuses with the witness index unless (w_0, w_d, ...) is log-concave.
void require_log_concave(const std::vector<Rational>& w, int d);

// Sampler over a pool of nodes; state is the tree alone.
class GrowthChain {
public:
    struct Node {
        int size = 1;
        int parent = -1;
        int pos = 0;
        std::uint64_t hash = kRootHash;
        std::vector<int> kids;
    };

    GrowthChain(std::shared_ptr<const GrowthModel> model, std::uint64_t key);

    void reset(std::uint64_t key);
    int size() const { return nodes_[0].size; }
    const GrowthModel& model() const { return *model_; }

    // Grows by one leaf or bouquet; returns the parent node id.
    int step();
    std::vector<Word> last_added() const;

    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    Word word_of(int id) const;
    PlaneTree tree() const;
    // Balanced-parenthesis bits behind a leading 1; trees up to 31 vertices.
    std::uint64_t shape_code() const;

private:
    int new_node(int parent, int pos);

    std::shared_ptr<const GrowthModel> model_;
    CounterRng rng_;
    std::vector<Node> nodes_;
    std::size_t used_ = 0;
    int last_parent_ = -1;
    int last_k_ = 0;
};

struct GrowthStep {
    int n = 1;
    std::vector<Word> added;
    PlaneTree tree;
};

std::vector<GrowthStep> grow_chain(const std::vector<Rational>& w, int d, int N, std::uint64_t seed);

}  // namespace sgt
