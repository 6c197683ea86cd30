#include <doctest.h>

#include <random>

#include "orbimorse/error.hpp"
#include "orbimorse/simplicial.hpp"
#include "support.hpp"

using namespace orbimorse;

namespace {

SimplicialComplex edge() { return SimplicialComplex::from_simplices({"a", "b"}, {{0, 1}}); }

SimplicialComplex triangle() { return SimplicialComplex::from_simplices({"a", "b", "c"}, {{0, 1, 2}}); }

SimplicialComplex square_boundary() {
    return SimplicialComplex::from_simplices({"v0", "v1", "v2", "v3"}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

/// Exhaustive check that every group element maps simplices to simplices.
bool action_is_simplicial(const GSimplicialComplex& k) {
    for (std::size_t g = 0; g < k.group().size(); ++g)
        for (int d = 0; d <= k.complex().dimension(); ++d)
            for (const auto& s : k.complex().simplices(static_cast<std::size_t>(d)))
                if (!k.complex().contains(k.image(g, s))) return false;
    return true;
}

/// Exhaustive regularity check: setwise-fixed simplices are fixed pointwise.
bool regular_oracle(const GSimplicialComplex& k) {
    for (std::size_t g = 0; g < k.group().size(); ++g)
        for (int d = 0; d <= k.complex().dimension(); ++d)
            for (const auto& s : k.complex().simplices(static_cast<std::size_t>(d))) {
                if (k.image(g, s) != s) continue;
                for (auto v : s)
                    if (k.action().image(g, v) != v) return false;
            }
    return true;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

SimplicialComplex random_complex(std::mt19937_64& rng) {
    const std::size_t n = 3 + rng() % 4;
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
    std::vector<Simplex> simplices;
    const auto count = 1 + rng() % 5;
    for (std::size_t i = 0; i < count; ++i) {
        Simplex s;
        for (std::uint32_t x = 0; x < n; ++x)
            if (rng() % 2) s.push_back(x);
        if (s.size() > 3) s.resize(3);
        if (!s.empty()) simplices.push_back(s);
    }
    return SimplicialComplex::from_simplices(v, simplices);
}

}  // namespace

TEST_CASE("face closure") {
    const auto t = triangle();
    CHECK(t.dimension() == 2);
    CHECK(t.count(0) == 3);
    CHECK(t.count(1) == 3);
    CHECK(t.count(2) == 1);
    CHECK(t.maximal_simplices() == std::vector<Simplex>{{0, 1, 2}});
    CHECK(SimplicialComplex::from_simplices({}, {}).dimension() == -1);
    CHECK_THROWS_AS(SimplicialComplex::from_simplices({"a"}, {{0, 1}}), Error);
}

TEST_CASE("subdivision counts") {
    const auto e = barycentric_subdivide(edge());
    CHECK(e.count(0) == 3);
    CHECK(e.count(1) == 2);
    const auto t = barycentric_subdivide(triangle());
    CHECK(t.count(0) == 7);
    CHECK(t.count(1) == 12);
    CHECK(t.count(2) == 6);
    CHECK(t.count(2) == factorial(3));
    const auto tet = barycentric_subdivide(SimplicialComplex::from_simplices({"a", "b", "c", "d"}, {{0, 1, 2, 3}}));
    CHECK(tet.count(3) == factorial(4));
    CHECK(e.label({0, 2}) == "a (a b)");
}

TEST_CASE("antipodal action on a square stays simplicial after subdivision") {
    const auto k = GSimplicialComplex::from_generators(square_boundary(), {{2, 3, 0, 1}});
    const auto sd = barycentric_subdivide(k);
    CHECK(action_is_simplicial(sd));
    CHECK(sd.complex().count(0) == 8);
    CHECK(is_regular(sd));
}

TEST_CASE("non-simplicial actions are rejected") {
    try {
        GSimplicialComplex::from_generators(square_boundary(), {{1, 0, 2, 3}});
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ActionNotSimplicial);
    }
}

TEST_CASE("regularity examples") {
    CHECK(is_regular(GSimplicialComplex::from_generators(triangle(), {})));
    const auto swap = GSimplicialComplex::from_generators(edge(), {{1, 0}});
    CHECK_FALSE(is_regular(swap));
    CHECK_FALSE(regular_oracle(swap));
    const auto twice = barycentric_subdivide(barycentric_subdivide(swap));
    CHECK(is_regular(twice));
    CHECK(regular_oracle(twice));
    try {
        quotient(swap);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotRegular);
    }
}

TEST_CASE("quotients") {
    const auto trivial = quotient(GSimplicialComplex::from_generators(triangle(), {}));
    CHECK(trivial.complex.count(0) == 3);
    CHECK(trivial.complex.count(1) == 3);
    CHECK(trivial.complex.count(2) == 1);

    const auto reg = regularize(GSimplicialComplex::from_generators(edge(), {{1, 0}}));
    const auto q = quotient(reg.complex);
    // Orbits by hand: the two ends, the midpoint, the quarter points, and the
    // half edges on each side: an interval.
    CHECK(q.complex.dimension() == 1);
    CHECK(homology(q.complex) == std::vector<std::size_t>{1, 0});
    CHECK(q.complex.count(0) == q.complex.count(1) + 1);

    const auto heart = testing::corpus("heart");
    const auto hq = quotient(regularize(heart.triangulation->g_complex()).complex);
    CHECK(homology(hq.complex) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("second subdivision is regular for every corpus triangulation") {
    for (const auto& inst : testing::all_corpus()) {
        if (!inst.triangulation) continue;
        const auto k = barycentric_subdivide(barycentric_subdivide(inst.triangulation->g_complex()));
        CHECK(is_regular(k));
        CHECK(regular_oracle(k));
        CHECK(action_is_simplicial(k));
    }
}

TEST_CASE("homology examples") {
    const auto sphere = testing::corpus("sphere_trivial").triangulation->complex();
    CHECK(homology(sphere) == std::vector<std::size_t>{1, 0, 1});
    const auto disc = testing::corpus("disc_rot_3").triangulation;
    CHECK(homology(disc->complex(), disc->sub()) == std::vector<std::size_t>{0, 0, 1});
    CHECK(homology(disc->complex()) == std::vector<std::size_t>{1, 0, 0});
    const auto bad = SimplicialComplex::from_simplices(disc->complex().vertices(), {{1, 4}}, false);
    try {
        homology(disc->complex(), bad);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotASubcomplex);
    }
}

TEST_CASE("invariant homology") {
    const auto sphere = testing::corpus("sphere_trivial").triangulation;
    CHECK(invariant_homology(sphere->g_complex()) == homology(sphere->complex()));
    const auto interval = testing::corpus("interval_reflect").triangulation;
    CHECK(invariant_homology(interval->g_complex(), interval->sub()) == std::vector<std::size_t>{0, 0});
    CHECK(homology(interval->complex(), interval->sub()) == std::vector<std::size_t>{0, 1});
    const auto rot = testing::corpus("disc_rot_3").triangulation;
    CHECK(invariant_homology(rot->g_complex(), rot->sub()) == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("invariant homology equals quotient homology on the corpus") {
    for (const auto& inst : testing::all_corpus()) {
        if (!inst.triangulation) continue;
        const auto& t = *inst.triangulation;
        const auto reg = regularize(t.g_complex(), t.sub());
        CHECK(reg.subdivisions <= 2);
        const auto inv = invariant_homology(t.g_complex(), t.sub());
        CHECK(invariant_homology(reg.complex, reg.sub) == inv);
        std::vector<std::size_t> quot;
        if (reg.sub) {
            const auto [qk, ql] = quotient(reg.complex, *reg.sub);
            quot = homology(qk.complex, ql);
        } else {
            quot = homology(quotient(reg.complex).complex);
        }
        CHECK(same_betti(inv, quot));
    }
}

TEST_CASE("subdivision preserves homology") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        const auto k = random_complex(rng);
        const auto h = homology(k);
        CHECK(same_betti(homology(barycentric_subdivide(k)), h));
    }
    const auto disc = testing::corpus("disc_rot_2").triangulation;
    const auto [k, l] = barycentric_subdivide(disc->complex(), *disc->sub());
    CHECK(homology(k, l) == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("comparison of Morse and simplicial homology") {
    const auto inst = testing::corpus("football_p3");
    const auto c = compare(*inst.global, inst.triangulation->g_complex());
    CHECK(c.equal);
    CHECK(c.morse == std::vector<std::size_t>{1, 0, 1});
    CHECK(c.simplicial == std::vector<std::size_t>{1, 0, 1});
    CHECK(same_betti({1, 0}, {1, 0, 0}));
    CHECK_FALSE(same_betti({1, 0, 1}, {1, 1, 1}));
}
