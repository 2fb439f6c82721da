#include <random>

#include <doctest.h>

#include "affsim/census.hpp"
#include "oracles.hpp"

using namespace affsim;
using Q = Rational;

namespace {

Matrix<Q> unit(int n, int j, int k) {
    Matrix<Q> m = zero_matrix<Q>(n, n);
    m(j - 1, k - 1) = Q(1);
    return m;
}

/// All of M_n on the single component of an "n:1" spec.
SubalgebraBasis<Q> full_matrix_algebra(int n) {
    const auto spec = make_spec<Q>({{n, 1}});
    std::vector<BlockElement<Q>> units;
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) units.push_back(BlockElement<Q>::single(spec, {n, 1}, unit(n, j, k)));
    return SubalgebraBasis<Q>::span(spec, units);
}

}  // namespace

TEST_CASE("theta_surjective") {
    CHECK(theta_surjective(full_matrix_algebra(3), 3, 1));
    const auto spec = make_spec<Q>({{2, 1}});
    const auto scalars = generate(spec, {BlockElement<Q>::identity(spec)});
    CHECK(!theta_surjective(scalars, 2, 1));

    const auto g = build_generators(make_spec<Q>({{2, 2}, {3, 1}}));
    const auto b = generate_b(g);
    for (const auto& c : g.e.spec().components()) CHECK(theta_surjective(b, c.n, c.index));
    CHECK_THROWS_AS(theta_surjective(b, 4, 1), LookupError);
}

TEST_CASE("eigen_separate") {
    const auto single = build_generators(make_spec<Q>({{3, 1}}));
    CHECK(eigen_separate(single.e) == std::map<int, bool>{{3, true}});

    const auto g = build_generators(make_spec<Q>({{2, 2}, {5, 3}}));
    CHECK(eigen_separate(g.e) == std::map<int, bool>{{2, true}, {5, true}});
    for (const auto& c : g.e.spec().components())
        CHECK(char_poly(theta(g.e, c.n, c.index)) == corner_char_poly(c.n, g.e.spec().lambda(c)));
    CHECK(corner_char_poly(2, Q(1)) == std::vector<Q>{Q(0), Q(-1), Q(1)});
    CHECK(corner_char_poly(2, Q(2)) == std::vector<Q>{Q(0), Q(-2), Q(1)});
}

TEST_CASE("lambdas equal up to sign still separate, but are rejected by the spec") {
    // t(t - 1) versus t(t + 1)
    CHECK(char_poly(unit(2, 1, 1)) == corner_char_poly(2, Q(1)));
    CHECK(char_poly(Matrix<Q>(-unit(2, 1, 1))) == corner_char_poly(2, Q(-1)));
    CHECK(corner_char_poly(2, Q(1)) != corner_char_poly(2, Q(-1)));
    CHECK_THROWS_AS(SupportSpec<Q>::create({{2, 2, {Q(1), Q(-1)}}}), ValidationError);
}

TEST_CASE("radical_dimension") {
    CHECK(radical_dimension(full_matrix_algebra(2)) == 0);

    const auto spec = make_spec<Q>({{2, 1}});
    const auto upper = generate(spec, {BlockElement<Q>::single(spec, {2, 1}, unit(2, 1, 1)),
                                       BlockElement<Q>::single(spec, {2, 1}, unit(2, 1, 2))});
    REQUIRE(upper.dimension() == 3);
    CHECK(radical_dimension(upper) == 1);

    // 3x3 upper triangular: radical is the 3 strictly upper entries
    const auto spec3 = make_spec<Q>({{3, 1}});
    const auto upper3 = generate(spec3, {BlockElement<Q>::single(spec3, {3, 1}, unit(3, 1, 1)),
                                         BlockElement<Q>::single(spec3, {3, 1}, unit(3, 2, 2)),
                                         BlockElement<Q>::single(spec3, {3, 1}, unit(3, 1, 2)),
                                         BlockElement<Q>::single(spec3, {3, 1}, unit(3, 2, 3))});
    REQUIRE(upper3.dimension() == 6);
    CHECK(radical_dimension(upper3) == 3);
    CHECK(radical_dimension(upper3, 4) == 3);

    const auto g = build_generators(make_spec<Q>({{2, 2}, {3, 1}}));
    CHECK(radical_dimension(generate_b(g)) == 0);

    ModP::Scope scope(7);
    const auto gp = build_generators(make_spec<ModP>({{2, 1}}));
    CHECK_THROWS_AS(radical_dimension(generate_b(gp)), UnsupportedFieldError);
}

TEST_CASE("center_dimension") {
    CHECK(center_dimension(full_matrix_algebra(3)) == 1);
    CHECK(center_dimension(generate_b(build_generators(make_spec<Q>({{2, 2}})))) == 2);
    CHECK(center_dimension(generate_b(build_generators(make_spec<Q>({{2, 2}, {3, 1}})))) == 3);

    const auto spec = make_spec<Q>({{2, 1}});
    const auto upper = generate(spec, {BlockElement<Q>::single(spec, {2, 1}, unit(2, 1, 1)),
                                       BlockElement<Q>::single(spec, {2, 1}, unit(2, 1, 2))});
    CHECK(center_dimension(upper) == 1);
}

TEST_CASE("relation_support") {
    const auto g = build_generators(make_spec<Q>({{2, 1}, {3, 1}, {5, 1}}));
    CHECK(relation_support(g, 6) == std::vector<int>{2, 3});
    CHECK(relation_support(g, 7).empty());
    CHECK(relation_support(g, 10) == std::vector<int>{2, 5});
    CHECK_THROWS_AS(relation_support(g, 0), DomainError);

    const auto g4 = build_generators(make_spec<Q>({{4, 1}}));
    CHECK(relation_support(g4, 4) == std::vector<int>{4});
}

TEST_CASE("relation_support follows divisibility for random specs") {
    std::mt19937 rng(41);
    for (int t = 0; t < 10; ++t) {
        std::vector<std::pair<int, int>> entries;
        for (int n = 2; n <= 7; ++n)
            if (std::bernoulli_distribution(0.4)(rng)) entries.emplace_back(n, 1 + static_cast<int>(rng() % 2));
        if (entries.empty()) entries.emplace_back(3, 1);
        const auto g = build_generators(make_spec<Q>(entries));
        const auto support = g.e.spec().support();
        for (int i = 1; i <= 2 * g.e.spec().max_n(); ++i) {
            std::vector<int> divisors;
            for (int n : support)
                if (i % n == 0) divisors.push_back(n);
            CHECK(relation_support(g, i) == divisors);
            CHECK(relation_support(g, i) == oracle::relation_support_bruteforce(support, i));
        }
    }
}

TEST_CASE("full_census") {
    struct Case {
        std::vector<std::pair<int, int>> spec;
        std::size_t center;
    };
    for (const Case& c : {Case{{{2, 1}}, 1}, Case{{{2, 2}, {3, 1}}, 3}, Case{{{2, 3}, {5, 2}}, 5}}) {
        const auto g = build_generators(make_spec<Q>(c.spec));
        const auto basis = generate_b(g);
        const auto ledger = run_induction(g, basis);
        const auto rep = full_census(g, basis, &ledger);
        CHECK(rep.passed);
        CHECK(rep.failures.empty());
        std::map<int, int> expected(c.spec.begin(), c.spec.end());
        CHECK(rep.verified == expected);
        CHECK(rep.derived == expected);
        CHECK(rep.center_dimension == c.center);
        CHECK(rep.radical_dimension == std::optional<std::size_t>(0));
        CHECK(rep.closure_dimension == static_cast<std::size_t>(g.e.spec().dimension()));
    }
}

TEST_CASE("full_census over a prime field skips the radical") {
    ModP::Scope scope(13);
    const auto g = build_generators(make_spec<ModP>({{2, 2}, {3, 1}}));
    const auto basis = generate_b(g);
    const auto rep = full_census(g, basis);
    CHECK(rep.passed);
    CHECK(!rep.radical_dimension.has_value());
    CHECK(rep.verified == std::map<int, int>{{2, 2}, {3, 1}});
}

TEST_CASE("full_census fails on a proper subalgebra") {
    const auto g = build_generators(make_spec<Q>({{2, 2}}));
    const auto partial = generate(g.e.spec_ptr(), {g.e});
    const auto rep = full_census(g, partial);
    CHECK(!rep.passed);
    CHECK(rep.verified.empty());
    CHECK(!rep.failures.empty());
}

TEST_CASE("census checks are independent of the thread count") {
    const auto g = build_generators(make_spec<Q>({{2, 2}, {3, 2}}));
    const auto basis = generate_b(g);
    const auto one = full_census<Q>(g, basis, nullptr, CensusOptions{0, 1});
    const auto four = full_census<Q>(g, basis, nullptr, CensusOptions{0, 4});
    CHECK(one.radical_dimension == four.radical_dimension);
    CHECK(one.verified == four.verified);
}
