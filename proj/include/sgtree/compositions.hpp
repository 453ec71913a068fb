#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sgtree/rational.hpp"
#include "sgtree/rng.hpp"
#include "sgtree/treespace.hpp"

namespace sgt {

// a is indexed from 0 and vanishes past its end. b is indexed from 1 up to a
// declared horizon; b[0] is unused. Reading b past the horizon throws.
struct WeightPair {
    std::vector<Rational> a;
    std::vector<Rational> b;

    Rational a_at(int i) const;
    const Rational& b_at(int m) const;
    int b_horizon() const { return static_cast<int>(b.size()) - 1; }

    // Convenience: b given from index 1.
    static WeightPair make(std::vector<Rational> a, const std::vector<Rational>& b_from_one);
};

struct ArithClass {
    int d = 1;
    int s = 0;
};

std::string format_composition(const Composition& c);
Composition parse_composition(std::string_view text);

int total(const Composition& c);

std::set<Composition> covering_successors(const Composition& c, int d = 1);
bool satisfies_arith(const Composition& c, ArithClass cls);

// Reflexive-transitive closure of the d-covering relation, decided by the
// first-part/remainder split.
bool precedes(const Composition& c, const Composition& c2, int d = 1);

// Largest index with a nonzero entry, or -1.
int support_top(const std::vector<Rational>& a);

bool is_non_degenerate(const WeightPair& wp);
bool is_arith_non_degenerate(const WeightPair& wp, ArithClass cls);

WeightPair shift(const WeightPair& wp, int ell, ArithClass cls = {});

struct PartitionValue {
    Rational value;
    bool zero_mass = false;
};

PartitionValue partition_function(const WeightPair& wp, int n);

// Exact law over all compositions of n, by direct enumeration of products.
std::map<Composition, Rational> comp_distribution(const WeightPair& wp, int n);

struct StepLaw {
    int n = 0;
    int step = 1;
    std::map<int, Rational> p;

    Rational at(int m) const;
    Rational cdf(int m) const;
};

StepLaw first_part_law(const WeightPair& wp, int n, int d = 1);

struct StepRow {
    Rational stay;
    Rational up;
};

// Conditional law of the shared-uniform coupling between mu_n and mu_n1 where
// a first part m either stays or moves to m + step.
std::map<int, StepRow> monotone_step_kernel(const StepLaw& mu_n, const StepLaw& mu_n1, int level = 0);

// Z[level][n] = sum_k a_{k+level} f_{n,k}, with f the composition sums of b.
class ShiftedZ {
public:
    ShiftedZ() = default;
    ShiftedZ(const WeightPair& wp, int horizon);
    explicit ShiftedZ(std::vector<std::vector<Rational>> table) : z_(std::move(table)) {}

    int horizon() const { return z_.empty() ? -1 : static_cast<int>(z_[0].size()) - 1; }
    int levels() const { return static_cast<int>(z_.size()); }
    const Rational& operator()(int level, int n) const;
    const std::vector<std::vector<Rational>>& table() const { return z_; }

    // f_{n,k}: weighted count of compositions of n into k parts.
    static std::vector<std::vector<Rational>> composition_sums(const WeightPair& wp, int horizon);

private:
    std::vector<std::vector<Rational>> z_;
};

// The recursive coupling of composition laws: the first part follows the
// monotone step kernel between consecutive first-part laws, the remainder is
// coupled at the next shift level.
class CompositionCoupling {
public:
    CompositionCoupling(WeightPair wp, int d, int horizon);
    CompositionCoupling(WeightPair wp, int d, ShiftedZ z);

    int d() const { return d_; }
    int horizon() const { return h_; }
    const WeightPair& weights() const { return wp_; }
    const ShiftedZ& z() const { return z_; }

    Rational mu(int level, int n, int m) const;
    StepLaw first_part_law(int level, int n) const;

    // Probability that the first part m at (level, n) grows by d.
    const Rational& q(int level, int n, int m) const;
    const ExactCdf& bernoulli(int level, int n, int m) const;
    // Throws NotCoupleable if the append step at (level, 0) has no mass.
    void check_append(int level) const;

    std::map<Composition, Rational> kernel_row(const Composition& c, int level = 0) const;
    Composition step(const Composition& c, CounterRng& rng, int level = 0) const;

private:
    void build();
    std::size_t index(int level, int n, int m) const;

    WeightPair wp_;
    int d_;
    int h_;
    ShiftedZ z_;
    std::vector<Rational> q_;
    std::vector<ExactCdf> cdf_;
    // Per (level, n): 0 no mass, 1 ready, 2 coupling fails (failing m stored).
    std::vector<int> status_;
    std::vector<int> failing_m_;
};

struct InequalityFailure {
    std::string where;
    Rational lhs;
    Rational rhs;
};

struct CheckReport {
    std::size_t checked = 0;
    std::vector<InequalityFailure> failures;
    bool ok() const { return failures.empty(); }
    void check_le(const Rational& lhs, const Rational& rhs, const std::string& where);
    void check_eq(const Rational& lhs, const Rational& rhs, const std::string& where);
    void merge(const CheckReport& other);
};

// Sufficient admissibility inequalities on the horizon n = 0..N.
CheckReport check_admissibility_inequalities(const WeightPair& wp, ArithClass cls, int N);

// Chain C_s, C_{s+d}, ... up to total N.
std::vector<Composition> sample_composition_chain(const WeightPair& wp, ArithClass cls, int N,
                                                  CounterRng& rng);

}  // namespace sgt
