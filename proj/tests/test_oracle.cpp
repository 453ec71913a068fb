#include <doctest.h>

#include <cmath>

#include "sgtree/oracle.hpp"
#include "sgtree/sgtrees.hpp"

using namespace sgt;

namespace {

std::vector<Rational> ones(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)); }

}  // namespace

TEST_CASE("plane tree enumeration") {
    CHECK(enumerate_plane_trees(1).size() == 1);
    CHECK(enumerate_plane_trees(4).size() == 5);
    const auto t5 = enumerate_plane_trees(5, 2);
    CHECK(t5.size() == 3);
    CHECK(exact_sg_law({1, 0, 1}, 2, 5).size() == 2);
    CHECK(exact_sg_law({1, 0, 1, 0, 1}, 2, 5).size() == 3);
    for (const auto& t : t5)
        for (const auto& u : t.words()) CHECK(children_count(t, u) % 2 == 0);
    CHECK(std::is_sorted(t5.begin(), t5.end()));
    CHECK_THROWS_AS(enumerate_plane_trees(11), HorizonExceeded);
    try {
        enumerate_plane_trees(12);
    } catch (const HorizonExceeded& e) {
        CHECK(e.estimate == 58786);
    }
}

TEST_CASE("subtree enumeration") {
    CHECK(enumerate_subtrees(2, 2).size() == 2);
    CHECK(enumerate_subtrees(3, 2).size() == 5);
    CHECK(enumerate_subtrees(4, 2).size() == 14);
    CHECK(enumerate_subtrees(3, 3).size() == 12);
    CHECK_THROWS_AS(enumerate_subtrees(8, 2), HorizonExceeded);
    CHECK_THROWS_AS(enumerate_subtrees(3, 4), HorizonExceeded);
}

TEST_CASE("enumeration counts match tables") {
    const auto t = compute_tables(ones(8), 1, 8);
    const auto e = compute_tables({1, 2, 1}, 1, 8);
    for (int n = 1; n <= 7; ++n) {
        CHECK(t.b_at(n) == static_cast<long>(enumerate_plane_trees(n).size()));
        CHECK(e.b_at(n) == static_cast<long>(enumerate_subtrees(n, 2).size()));
    }
}

TEST_CASE("exact laws") {
    const auto sg = exact_sg_law(ones(4), 1, 3);
    CHECK(sg.size() == 2);
    for (const auto& [t, p] : sg) CHECK(p == Rational(1, 2));
    const auto s = exact_st_law(Theta({1, 1}), 3);
    CHECK(s.size() == 5);
    for (const auto& [t, p] : s) CHECK(p == Rational(1, 5));
    const auto b = exact_subset_law(Theta({2, 1}), 1);
    CHECK(b.at({1}) == Rational(2, 3));
    CHECK(b.at({2}) == Rational(1, 3));
    const auto wp = WeightPair::make(ones(6), ones(6));
    CHECK(exact_comp_law(wp, {1, 0}, 4) == comp_distribution(wp, 4));
    CHECK_THROWS_AS(exact_sg_law({1, 0, 1}, 2, 4), DomainError);
}

TEST_CASE("Janson expectations") {
    const auto a = janson_expectations(Rational(1, 5));
    CHECK(a.e3 == Rational(9, 5));
    CHECK(a.e4 == Rational(21, 13));
    CHECK(a.e3 > a.e4);
    const auto b = janson_expectations(Rational(1, 3));
    CHECK(b.e3 == b.e4);
    const auto c = janson_expectations(Rational(1, 2));
    CHECK(c.e3 <= c.e4);
    CHECK_THROWS_AS(janson_expectations(0), DomainError);
}

TEST_CASE("kernel interchange harness") {
    const auto wp = compute_tables(ones(12), 1, 12).pair();
    for (int n = 0; n <= 8; ++n) CHECK(composition_interchange(wp, {1, 0}, n).ok);
    for (int n = 1; n <= 6; ++n) CHECK(tree_interchange(ones(7), 1, n).ok);

    const GrowthModel model(ones(6), 1, 6);
    const auto from = exact_sg_law(ones(6), 1, 4);
    const auto to = exact_sg_law(ones(6), 1, 5);
    // Move a sliver of mass between two targets of one row: still stochastic.
    std::set<std::string> moved;
    auto corrupt = [&](const PlaneTree& t) {
        auto row = model.kernel_row(t);
        if (t == parse_plane_tree("e,1,2,3")) {
            auto it = row.begin();
            auto jt = std::next(it);
            moved = {format_tree(it->first), format_tree(jt->first)};
            it->second += Rational(1, 100);
            jt->second -= Rational(1, 100);
        }
        return row;
    };
    const auto fmt = [](const PlaneTree& t) { return format_tree(t); };
    CHECK(kernel_interchange_check(from, to, [&](const PlaneTree& t) { return model.kernel_row(t); }, fmt).ok);
    const auto rep = kernel_interchange_check(from, to, corrupt, fmt);
    CHECK_FALSE(rep.ok);
    bool located = false;
    for (const auto& m : moved) located |= rep.first_discrepancy.find("at " + m + ":") == 0;
    CHECK(located);
}

TEST_CASE("goodness of fit") {
    const std::vector<Rational> uniform5(5, Rational(1, 5));
    const auto constant = goodness_of_fit(uniform5, {100, 0, 0, 0, 0});
    CHECK(constant.tv == Rational(4, 5));
    CHECK(constant.p_value < 1e-6);
    const auto disjoint = goodness_of_fit(uniform5, {0, 0, 0, 0, 0}, 40);
    CHECK(disjoint.tv == 1);
    CHECK(disjoint.p_value == 0);
    const auto tiny = goodness_of_fit(uniform5, {1, 1, 1, 1, 1});
    CHECK(tiny.undersampled);
    CHECK(std::isnan(tiny.p_value));
    CHECK(tiny.tv == 0);
    const auto exact = goodness_of_fit(uniform5, {200, 200, 200, 200, 200});
    CHECK(exact.chi2 == doctest::Approx(0.0));
    CHECK(exact.p_value == doctest::Approx(1.0));
    CHECK(exact.df == 4);
}

TEST_CASE("goodness of fit calibration" * doctest::timeout(120)) {
    // Draws from the exact law itself: 14 categories, 100 seeds.
    const auto law = exact_sg_law(ones(5), 1, 5);
    std::vector<Rational> w;
    for (const auto& [t, p] : law) w.push_back(p);
    const ExactCdf cdf(w);
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CounterRng r(CounterRng::derive(seed, "gof-calibration"));
        std::vector<std::uint64_t> counts(w.size());
        for (int i = 0; i < 100000; ++i) counts[cdf.sample(r)]++;
        if (goodness_of_fit(w, counts).p_value > 0.001) ++good;
    }
    CHECK(good >= 99);
}
