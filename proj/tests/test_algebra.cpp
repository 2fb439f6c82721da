#include <random>

#include <doctest.h>

#include "affsim/algebra.hpp"
#include "oracles.hpp"

using namespace affsim;
using Q = Rational;

namespace {

Matrix<Q> mat(std::initializer_list<std::initializer_list<int>> rows) {
    Matrix<Q> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index i = 0;
    for (const auto& r : rows) {
        Index j = 0;
        for (int v : r) m(i, j++) = Q(v);
        ++i;
    }
    return m;
}

SpecPtr<Q> spec_with(std::vector<SupportEntry<Q>> entries) { return SupportSpec<Q>::create(std::move(entries)); }

}  // namespace

TEST_CASE("build_generators on a single 2-block") {
    const auto g = build_generators(make_spec<Q>({{2, 1}}));
    CHECK(theta(g.e, 2, 1) == mat({{1, 0}, {0, 0}}));
    CHECK(theta(g.sigma, 2, 1) == mat({{0, 1}, {1, 0}}));
    CHECK(theta(g.one, 2, 1) == identity_matrix<Q>(2));
}

TEST_CASE("build_generators: sigma_3 is the 3-cycle") {
    const auto g = build_generators(make_spec<Q>({{3, 1}}));
    CHECK(theta(g.sigma, 3, 1) == mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    CHECK(pow(g.sigma, 3) == g.one);
    CHECK(!(pow(g.sigma, 2) == g.one));
}

TEST_CASE("build_generators: one e-block per lambda") {
    const auto g = build_generators(make_spec<Q>({{2, 2}}));
    CHECK(theta(g.e, 2, 1) == mat({{1, 0}, {0, 0}}));
    CHECK(theta(g.e, 2, 2) == mat({{2, 0}, {0, 0}}));
    CHECK(theta(g.e * g.e, 2, 2) == mat({{4, 0}, {0, 0}}));
}

TEST_CASE("block ring operations") {
    const auto spec = make_spec<Q>({{2, 1}, {3, 2}});
    const auto g = build_generators(spec);
    const auto x = g.e * g.sigma + Q(3) * g.sigma;
    CHECK(g.one * x == x);
    CHECK(x * g.one == x);
    CHECK((x - x).is_zero());
    CHECK(x - x == BlockElement<Q>::zero(spec));

    const auto s2 = build_generators(make_spec<Q>({{2, 1}}));
    CHECK(s2.sigma * s2.sigma == s2.one);

    CHECK_THROWS_AS(g.e * s2.e, StructuralError);
    CHECK_THROWS_AS(g.e + s2.e, StructuralError);
}

TEST_CASE("theta lookups") {
    const auto g = build_generators(make_spec<Q>({{2, 2}}));
    CHECK(theta(g.one, 2, 2) == identity_matrix<Q>(2));
    CHECK_THROWS_AS(theta(g.e, 3, 1), LookupError);
    CHECK_THROWS_AS(theta(g.e, 2, 3), LookupError);
    auto copy = theta(g.e, 2, 1);
    copy(1, 1) = Q(9);
    CHECK(theta(g.e, 2, 1) == mat({{1, 0}, {0, 0}}));
}

TEST_CASE("default lambda scheme") {
    CHECK(default_lambda_scheme<Q>({{2, 3}}) == std::vector<std::vector<Q>>{{Q(1), Q(2), Q(3)}});
    CHECK(default_lambda_scheme<Q>({{5, 1}}) == std::vector<std::vector<Q>>{{Q(1)}});
    {
        ModP::Scope scope(7);
        const auto l = default_lambda_scheme<ModP>({{2, 3}});
        CHECK(l == std::vector<std::vector<ModP>>{{ModP(1), ModP(2), ModP(3)}});
        CHECK_NOTHROW(make_spec<ModP>({{2, 3}}));
    }
    {
        ModP::Scope scope(3);
        CHECK_THROWS_AS(default_lambda_scheme<ModP>({{2, 2}}), FieldTooSmallError);
    }
    {
        ModP::Scope scope(5);
        CHECK_THROWS_AS(default_lambda_scheme<ModP>({{2, 3}}), FieldTooSmallError);
        CHECK_NOTHROW(default_lambda_scheme<ModP>({{2, 2}}));
    }
}

TEST_CASE("spec validation reports every violation") {
    try {
        spec_with({{3, 2, {Q(1), Q(-1)}}, {3, 1, {Q(0)}}, {1, 0, {}}});
        FAIL("expected ValidationError");
    } catch (const ValidationError& err) {
        // up-to-sign clash, zero lambda, repeated n, n < 2, a < 1, decreasing n
        CHECK(err.violations().size() == 6);
    }
    CHECK_THROWS_AS(spec_with({}), ValidationError);
    CHECK_THROWS_AS(spec_with({{2, 2, {Q(1)}}}), ValidationError);
    CHECK_NOTHROW(spec_with({{2, 2, {Q(1, 2), Q(-3)}}}));
    {
        ModP::Scope scope(7);
        // 2 = -5 in F_7
        CHECK_THROWS_AS(SupportSpec<ModP>::create({{2, 2, {ModP(2), ModP(5)}}}), ValidationError);
    }
}

TEST_CASE("sigma^n is the identity on n-blocks, with zero corner below n") {
    const auto g = build_generators(make_spec<Q>({{2, 1}, {3, 2}, {5, 1}, {6, 1}}));
    for (const auto& c : g.e.spec().components()) {
        CHECK(theta(pow(g.sigma, static_cast<unsigned>(c.n)), c.n, c.index) == identity_matrix<Q>(c.n));
        for (int k = 1; k < c.n; ++k) CHECK(is_zero(theta(pow(g.sigma, static_cast<unsigned>(k)), c.n, c.index)(0, 0)));
    }
}

TEST_CASE("e sigma^i e is supported exactly on n dividing i") {
    const auto spec = make_spec<Q>({{2, 2}, {3, 1}, {4, 1}, {6, 2}});
    const auto g = build_generators(spec);
    for (int i = 1; i <= 14; ++i) {
        const auto x = g.e * pow(g.sigma, static_cast<unsigned>(i)) * g.e;
        std::vector<int> nonzero;
        for (int n : spec->support())
            if (!vanishes_at(x, n)) nonzero.push_back(n);
        CHECK(nonzero == oracle::relation_support_bruteforce(spec->support(), i));
        for (const auto& c : spec->components()) {
            Matrix<Q> expected = zero_matrix<Q>(c.n, c.n);
            if (i % c.n == 0) expected(0, 0) = spec->lambda(c) * spec->lambda(c);
            CHECK(theta(x, c.n, c.index) == expected);
        }
    }
}

TEST_CASE("flatten and unflatten round-trip") {
    const auto spec = make_spec<Q>({{2, 2}, {3, 1}});
    CHECK(spec->dimension() == 17);
    std::mt19937 rng(29);
    for (int t = 0; t < 20; ++t) {
        Vector<Q> v = oracle::random_matrix<Q>(rng, 17, 1);
        const auto x = unflatten(spec, v);
        CHECK(flatten(x) == v);
        CHECK(unflatten(spec, flatten(x)) == x);
    }
    const auto g = build_generators(spec);
    const auto flat = flatten(g.e);
    CHECK(flat(0) == Q(1));
    CHECK(flat(4) == Q(2));
    CHECK(flat(8) == Q(1));
    CHECK_THROWS_AS(unflatten(spec, Vector<Q>(3)), ShapeError);
}
