#include <doctest.h>

#include "gen.hpp"
#include "sgtree/errors.hpp"
#include "sgtree/oracle.hpp"
#include "sgtree/sgtrees.hpp"

using namespace sgt;

namespace {

std::vector<Rational> ones(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)); }
const std::vector<Rational> kJanson{Rational(2, 5), Rational(1, 5), Rational(2, 5)};
PlaneTree pt(const char* s) { return parse_plane_tree(s); }

}  // namespace

TEST_CASE("log-concavity") {
    CHECK(is_log_concave({1, 3, 3, 1}).ok);
    const auto j = is_log_concave(kJanson);
    CHECK_FALSE(j.ok);
    CHECK(j.witness == 1);
    CHECK_FALSE(is_log_concave({1, 0, 1}).ok);
    CHECK(is_log_concave({0, 0, 1, 2, 1, 0}).ok);
}

TEST_CASE("Toeplitz TP2") {
    CHECK(check_toeplitz_tp2(ones(8), 5).ok());
    CHECK(check_toeplitz_tp2({1, 2, 1}, 4).ok());
    CHECK_FALSE(check_toeplitz_tp2({1, 0, 0, 1}, 4).ok());
}

TEST_CASE("tilt") {
    CHECK(tilt({1, 3, 3, 1}, 1, 1) == std::vector<Rational>{1, 3, 3, 1});
    CHECK(tilt({1, 1, 1}, 1, 2) == std::vector<Rational>{1, 2, 4});
    CHECK_THROWS_AS(tilt({1, 1}, 0, 1), DomainError);
}

TEST_CASE("weight validation") {
    CHECK_NOTHROW(validate_weights({1, 1}, 1));
    CHECK_THROWS_AS(validate_weights({0, 1}, 1), DomainError);
    CHECK_THROWS_AS(validate_weights({1, 1, 1}, 2), DomainError);
    CHECK_THROWS_AS(validate_weights({1, 0, 0, 0, 1}, 2), DomainError);
    CHECK_NOTHROW(validate_weights({1, 0, 1}, 2));
    CHECK_THROWS_AS(require_log_concave(kJanson, 1), Refused);
    try {
        require_log_concave(kJanson, 1);
    } catch (const Refused& r) {
        CHECK(r.index == 1);
    }
}

TEST_CASE("tables") {
    const auto t = compute_tables(ones(8), 1, 8);
    const std::vector<int> catalan{1, 1, 2, 5, 14, 42, 132, 429};
    for (int n = 1; n <= 8; ++n) CHECK(t.b_at(n) == catalan[static_cast<std::size_t>(n - 1)]);
    for (int n = 1; n <= 7; ++n) CHECK(t.b_at(n) == static_cast<long>(enumerate_plane_trees(n).size()));
    CHECK(t.f[3][2] == 2);
    CHECK(t.f[3][2] == t.f[2][1] + t.f[2][2] + t.f[2][3]);
    CHECK(t.f[2][1] * t.f[3][2] >= t.f[2][2] * t.f[3][1]);
    CHECK(t.f[2][1] * t.f[3][2] == t.f[2][2] * t.f[3][1]);

    const auto t2 = compute_tables({1, 0, 1}, 2, 9);
    const std::vector<int> bin{1, 1, 2, 5, 14};
    for (int j = 0; j < 5; ++j) {
        CHECK(t2.b_at(2 * j + 1) == bin[static_cast<std::size_t>(j)]);
        CHECK(t2.b_at(2 * j + 1) == static_cast<long>(exact_sg_law({1, 0, 1}, 2, 2 * j + 1).size()));
    }
    CHECK(t2.b_at(4) == 0);
    CHECK_THROWS_AS(t2.b_at(10), DomainError);
}

TEST_CASE("table identities on both paths") {
    for (auto path : {TablePath::Direct, TablePath::Arithmetic}) {
        CHECK(check_table_identities(compute_tables(ones(9), 1, 9, path)).ok());
        CHECK(check_table_identities(compute_tables({1, 3, 3, 1}, 1, 9, path)).ok());
    }
    CHECK(check_table_identities(compute_tables({1, 0, 1}, 2, 11)).ok());
    CHECK(check_table_identities(compute_tables({2, 0, 0, 1}, 3, 13)).ok());
    CHECK(check_table_identities(compute_tables({1, 0, 2, 0, 1}, 2, 11)).ok());
    CHECK_THROWS_AS(compute_tables({1, 1}, 2, 5), DomainError);
}

TEST_CASE("simply generated laws") {
    const auto l3 = sg_distribution(ones(5), 1, 3);
    CHECK(l3.size() == 2);
    for (const auto& [t, p] : l3) CHECK(p == Rational(1, 2));
    const auto l5 = sg_distribution({1, 0, 1}, 2, 5);
    CHECK(l5.size() == 2);
    for (const auto& [t, p] : l5) CHECK(p == Rational(1, 2));
    CHECK(sg_distribution({1, 3, 3, 1}, 1, 1).at(pt("e")) == 1);
    CHECK_THROWS_AS(sg_distribution({1, 0, 1}, 2, 4), DomainError);
}

TEST_CASE("inequality suites") {
    CHECK(check_tp2_array(compute_tables(ones(11), 1, 11), 10).ok());
    CHECK(check_tp2_array(compute_tables({1, 3, 3, 1}, 1, 11), 10).ok());
    CHECK(check_ratio_chain(compute_tables({1, 3, 3, 1}, 1, ratio_chain_horizon(1, 20)), 20).ok());
    CHECK(check_ratio_chain(compute_tables({1, 1}, 1, ratio_chain_horizon(1, 20)), 20).ok());
    CHECK(check_ratio_chain(compute_tables({1, 0, 1}, 2, ratio_chain_horizon(2, 10)), 10).ok());
    CHECK(check_tp2_array(compute_tables({1, 0, 1}, 2, 21), 20).ok());
    CHECK_FALSE(check_ratio_chain(compute_tables(kJanson, 1, ratio_chain_horizon(1, 6)), 6).ok());
}

TEST_CASE("growth kernel rows") {
    const auto r0 = growth_kernel_row(ones(6), 1, pt("e"));
    CHECK(r0.size() == 1);
    CHECK(r0.at(pt("e,1")) == 1);

    const auto r1 = growth_kernel_row(ones(6), 1, pt("e,1"));
    CHECK(r1.at(pt("e,1,1.1")) + r1.at(pt("e,1,2")) == 1);
    CHECK(tree_interchange(ones(6), 1, 2).ok);

    const auto r2 = growth_kernel_row({1, 0, 1}, 2, pt("e,1,2"));
    CHECK(r2.size() == 2);
    for (const auto& [t, p] : r2) CHECK(p == Rational(1, 2));
}

TEST_CASE("growth chains") {
    CHECK_THROWS_AS(grow_chain(kJanson, 1, 4, 1), Refused);
    const auto a = grow_chain(ones(6), 1, 6, 77);
    const auto b = grow_chain(ones(6), 1, 6, 77);
    REQUIRE(a.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].tree == b[i].tree);
        CHECK(a[i].n == static_cast<int>(i) + 1);
    }
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(is_right_leaning_leaf_addition(a[i - 1].tree, a[i].tree));

    const auto c = grow_chain({1, 0, 1}, 2, 9, 3);
    REQUIRE(c.size() == 5);
    for (std::size_t i = 1; i < c.size(); ++i) {
        CHECK(is_bouquet_addition(c[i - 1].tree, c[i].tree, 2));
        CHECK(c[i].added.size() == 2);
    }
}

TEST_CASE("chain pool reuse matches fresh chains") {
    auto model = std::make_shared<const GrowthModel>(ones(9), 1, 9);
    GrowthChain reused(model, 0);
    for (std::uint64_t i = 0; i < 50; ++i) {
        reused.reset(CounterRng::derive(8, "pool", {i}));
        GrowthChain fresh(model, CounterRng::derive(8, "pool", {i}));
        while (fresh.size() < 9) {
            fresh.step();
            reused.step();
            CHECK(fresh.last_added() == reused.last_added());
        }
        CHECK(fresh.tree() == reused.tree());
        CHECK(fresh.shape_code() == reused.shape_code());
    }
}

TEST_CASE("growth chain marginal at n=5" * doctest::timeout(120)) {
    auto model = std::make_shared<const GrowthModel>(ones(5), 1, 5);
    GrowthChain chain(model, 0);
    std::map<PlaneTree, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        chain.reset(CounterRng::derive(31, "sg-marginal", {i}));
        while (chain.size() < 5) chain.step();
        counts[chain.tree()]++;
    }
    const auto g = goodness_of_fit(counts, exact_sg_law(ones(5), 1, 5));
    CHECK(g.categories == 14);
    CHECK(g.tv < Rational(1, 100));
}

TEST_CASE("property: kernel support and interchange") {
    for (const auto& w : {ones(7), std::vector<Rational>{1, 3, 3, 1}, std::vector<Rational>{1, 2}}) {
        const GrowthModel model(w, 1, 7);
        for (int n = 1; n <= 6; ++n) {
            for (const auto& [t, p] : exact_sg_law(w, 1, n))
                for (const auto& [t2, q] : model.kernel_row(t)) {
                    CHECK(q > 0);
                    CHECK(is_right_leaning_leaf_addition(t, t2));
                }
            CHECK(tree_interchange(w, 1, n).ok);
        }
    }
    const GrowthModel m2({1, 0, 1}, 2, 9);
    for (int n = 1; n <= 7; n += 2)
        for (const auto& [t, p] : exact_sg_law({1, 0, 1}, 2, n))
            for (const auto& [t2, q] : m2.kernel_row(t)) CHECK(is_bouquet_addition(t, t2, 2));
}

TEST_CASE("property: the arithmetic path at d=1 reproduces the direct path") {
    for (const auto& w : {ones(8), std::vector<Rational>{1, 3, 3, 1}}) {
        const auto direct = compute_tables(w, 1, 8, TablePath::Direct);
        const auto arith = compute_tables(w, 1, 8, TablePath::Arithmetic);
        CHECK(direct.b == arith.b);
        CHECK(direct.f == arith.f);
        CHECK(direct.z.table() == arith.z.table());
        const GrowthModel a(direct), b(arith);
        for (int n = 1; n <= 7; ++n)
            for (const auto& [t, p] : exact_sg_law(w, 1, n)) CHECK(a.kernel_row(t) == b.kernel_row(t));
    }
}

TEST_CASE("property: laws and kernels are tilt invariant") {
    const std::vector<Rational> w{1, 3, 3, 1};
    const auto v = tilt(w, Rational(7, 3), Rational(2, 5));
    const GrowthModel a(w, 1, 7), b(v, 1, 7);
    for (int n = 1; n <= 6; ++n) {
        CHECK(sg_distribution(w, 1, n) == sg_distribution(v, 1, n));
        for (const auto& [t, p] : exact_sg_law(w, 1, n)) CHECK(a.kernel_row(t) == b.kernel_row(t));
    }
}

TEST_CASE("property: recursion law equals product law") {
    for (const auto& w : {ones(8), std::vector<Rational>{1, 3, 3, 1}, std::vector<Rational>{2, 1, Rational(1, 3)}})
        for (int n = 1; n <= 7; ++n) CHECK(sg_distribution(w, 1, n) == exact_sg_law(w, 1, n));
    for (int n = 1; n <= 9; n += 2) CHECK(sg_distribution({1, 0, 1}, 2, n) == exact_sg_law({1, 0, 1}, 2, n));
}

TEST_CASE("property: inequality suites on random log-concave weights") {
    CounterRng r(CounterRng::derive(17, "lc-weights"));
    for (int trial = 0; trial < 12; ++trial) {
        // Products of linear factors (1 + c x) have log-concave coefficients.
        std::vector<Rational> w{1};
        const int deg = gen::uniform(r, 1, 4);
        for (int j = 0; j < deg; ++j) {
            Rational c(gen::uniform(r, 1, 5), gen::uniform(r, 1, 5));
            c.canonicalize();
            std::vector<Rational> next(w.size() + 1, Rational(0));
            for (std::size_t i = 0; i < w.size(); ++i) {
                next[i] += w[i];
                next[i + 1] += c * w[i];
            }
            w = next;
        }
        CHECK(is_log_concave(w).ok);
        CHECK(check_tp2_array(compute_tables(w, 1, 13), 12).ok());
        CHECK(check_ratio_chain(compute_tables(w, 1, ratio_chain_horizon(1, 10)), 10).ok());
        CHECK(check_toeplitz_tp2(w, 8).ok());
    }
}
