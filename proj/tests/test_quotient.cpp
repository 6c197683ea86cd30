#include <doctest.h>

#include <random>

#include "orbimorse/error.hpp"
#include "orbimorse/quotient.hpp"
#include "orbimorse/simplicial.hpp"
#include "support.hpp"

using namespace orbimorse;

namespace {

EquivariantMorseSystem heart() { return *testing::corpus("heart").global; }

std::vector<EquivariantMorseSystem> corpus_systems() {
    std::vector<EquivariantMorseSystem> out;
    for (const auto& inst : testing::all_corpus())
        if (inst.global) out.push_back(*inst.global);
    return out;
}

const LawCheck& law(const ValidationReport& r, const std::string& name) {
    for (const auto& l : r.laws)
        if (l.law == name) return l;
    FAIL("no law " << name);
    return r.laws.front();
}

/// Same system with critical point i renamed to position perm[i].
EquivariantMorseSystem relabel(const EquivariantMorseSystem& s, const std::vector<std::size_t>& perm) {
    const auto n = s.crit_points().size();
    std::vector<CriticalPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[perm[i]] = s.crit_points()[i];
    auto flows = s.flows();
    for (auto& f : flows) {
        f.src = perm[f.src];
        f.dst = perm[f.dst];
    }
    auto gens = s.generators();
    for (auto& g : gens) {
        Permutation img(n);
        std::vector<int> tau(n);
        for (std::size_t i = 0; i < n; ++i) {
            img[perm[i]] = static_cast<std::uint32_t>(perm[g.points[i]]);
            tau[perm[i]] = g.tau[i];
        }
        g.points = img;
        g.tau = tau;
    }
    return EquivariantMorseSystem::build(s.ambient_dim(), s.group().degree(), gens, pts, flows, s.self_indexing());
}

/// Orbits as label sets with their invariants, independent of point order.
std::set<std::tuple<std::set<std::string>, std::size_t, std::uint64_t, bool, std::uint64_t>> orbit_signature(
    const EquivariantMorseSystem& s) {
    std::set<std::tuple<std::set<std::string>, std::size_t, std::uint64_t, bool, std::uint64_t>> out;
    for (const auto& o : classify(s)) {
        std::set<std::string> labels;
        for (auto m : o.members) labels.insert(s.crit_points()[m].label);
        out.insert({labels, o.index, o.iso_order, o.orientable, o.reversing});
    }
    return out;
}

bool same_classification(const std::vector<CriticalOrbit>& a, const std::vector<CriticalOrbit>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].members != b[i].members || a[i].index != b[i].index || a[i].iso_order != b[i].iso_order ||
            a[i].orientable != b[i].orientable || a[i].reversing != b[i].reversing)
            return false;
    return true;
}

EquivariantMorseSystem three_level(std::vector<int> qr_signs) {
    std::vector<ManifoldFlow> flows{{"pq", 0, 1, 1}};
    for (std::size_t i = 0; i < qr_signs.size(); ++i) flows.push_back({"qr" + std::to_string(i), 1, 2, qr_signs[i]});
    return EquivariantMorseSystem::build(2, 1, {}, {{"p", 2, {}}, {"q", 1, {}}, {"r", 0, {}}}, flows);
}

}  // namespace

TEST_CASE("heart validates") {
    const auto r = validate_system(heart());
    CHECK(r.ok());
    CHECK(r.first_failure() == nullptr);
    CHECK(r.laws.size() == 10);
}

TEST_CASE("a flipped sign is witnessed by sign equivariance") {
    const auto r = validate_system(*testing::fixture("heart_flipped_sign").global);
    CHECK_FALSE(r.ok());
    const auto& l = law(r, "sign_equivariance");
    CHECK_FALSE(l.ok);
    REQUIRE(l.witness.has_value());
    CHECK(l.witness->element.has_value());
    CHECK(l.witness->flow.has_value());
    CHECK(r.first_failure()->law == "sign_equivariance");
}

TEST_CASE("tau(g, r) = +1 keeps dd = 0 but breaks sign equivariance") {
    const auto s = *testing::fixture("heart_tau_saddle").global;
    const auto r = validate_system(s);
    CHECK(law(r, "manifold_d_squared").ok);
    CHECK(law(r, "cocycle").ok);
    CHECK_FALSE(law(r, "sign_equivariance").ok);
    // Exhaustive oracle over all (g, γ).
    std::size_t violations = 0;
    for (std::size_t g = 0; g < s.group().size(); ++g)
        for (std::size_t f = 0; f < s.flows().size(); ++f) {
            const auto& fl = s.flows()[f];
            const auto& img = s.flows()[s.flow_action().image(g, f)];
            if (img.sign != s.tau(g, fl.src) * s.tau(g, fl.dst) * fl.sign) ++violations;
        }
    CHECK(violations > 0);
}

TEST_CASE("cocycle and index violations") {
    auto gens = heart().generators();
    gens[0].tau = {1, -1, -1, 1};
    const auto h = heart();
    const auto bad = EquivariantMorseSystem::build(2, 2, gens, h.crit_points(), h.flows(), true);
    CHECK_FALSE(law(validate_system(bad), "cocycle").ok);

    auto pts = h.crit_points();
    pts[1].index = 1;
    pts[1].value = Rational(1);
    const auto moved = EquivariantMorseSystem::build(2, 2, h.generators(), pts, h.flows(), true);
    CHECK_FALSE(law(validate_system(moved), "index_invariance").ok);
    CHECK_FALSE(law(validate_system(moved), "flow_index").ok);
}

TEST_CASE("structurally unusable input is rejected at build time") {
    const auto h = heart();
    auto gens = h.generators();
    gens[0].tau = {1, 1, 2, 1};
    CHECK_THROWS_AS(EquivariantMorseSystem::build(2, 2, gens, h.crit_points(), h.flows()), Error);
    auto flows = h.flows();
    flows[0].dst = 9;
    try {
        EquivariantMorseSystem::build(2, 2, h.generators(), h.crit_points(), flows);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownPoint);
    }
}

TEST_CASE("classification examples") {
    const auto h = classify(heart());
    REQUIRE(h.size() == 3);
    CHECK(h[0].members == std::vector<std::size_t>{0, 1});
    CHECK(h[0].orientable);
    CHECK(h[0].index == 2);
    CHECK(h[1].members == std::vector<std::size_t>{2});
    CHECK_FALSE(h[1].orientable);
    CHECK(h[1].reversing == 1);
    CHECK(h[2].orientable);
    CHECK(h[2].iso_order == 2);

    for (const auto& o : classify(*testing::corpus("sphere_trivial").global)) {
        CHECK(o.members.size() == 1);
        CHECK(o.orientable);
    }
    for (const auto& o : classify(*testing::corpus("football_p5").global)) {
        CHECK(o.orientable);
        CHECK(o.iso_order == 5);
    }
}

TEST_CASE("reversing elements are none or exactly half of each stabilizer") {
    for (const auto& s : corpus_systems())
        for (const auto& o : classify(s)) CHECK((o.reversing == 0 || 2 * o.reversing == o.iso_order));
}

TEST_CASE("heart invariant boundary") {
    const auto c = invariant_boundary(heart());
    CHECK(c.labels == std::vector<std::vector<std::string>>{{"s"}, {}, {"p+q"}});
    for (const auto& m : c.boundary) CHECK(m.is_zero());
    CHECK(betti(c) == std::vector<std::size_t>{1, 0, 1});
    // The coefficient at r of ∂(p + q) vanishes in the manifold complex.
    const auto m = heart().manifold_complex();
    CHECK(m.boundary[2].at(0, 0) + m.boundary[2].at(0, 1) == 0);
}

TEST_CASE("trivial group returns the manifold complex") {
    const auto s = *testing::fixture("heart_trivial_group").global;
    const auto inv = invariant_boundary(s);
    const auto man = s.manifold_complex();
    REQUIRE(inv.max_degree() == man.max_degree());
    for (std::size_t k = 0; k <= man.max_degree(); ++k) CHECK(inv.boundary[k] == man.boundary[k]);
    const auto d = derive_intrinsic(s);
    CHECK(d.crit_points.size() == 4);
    for (const auto& p : d.crit_points) CHECK(p.iso_order == 1);
    CHECK(d.flows.size() == 4);
}

TEST_CASE("torus quotient agrees with the simplicial quotient") {
    const auto inst = testing::corpus("torus_z2");
    const auto b = betti(invariant_boundary(*inst.global));
    CHECK(b == std::vector<std::size_t>{1, 0, 1});
    const auto reg = regularize(inst.triangulation->g_complex());
    CHECK(homology(quotient(reg.complex).complex) == b);
}

TEST_CASE("derived intrinsic systems") {
    const auto h = derive_intrinsic(heart());
    REQUIRE(h.crit_points.size() == 3);
    CHECK(h.crit_points[0].label == "p");
    CHECK(h.crit_points[0].iso_order == 1);
    CHECK_FALSE(h.crit_points[1].orientable);
    CHECK(h.crit_points[2].iso_order == 2);
    CHECK(h.flows.empty());

    const auto f = derive_intrinsic(*testing::corpus("football_p3").global);
    REQUIRE(f.crit_points.size() == 2);
    CHECK(f.crit_points[0].iso_order == 3);
    CHECK(f.crit_points[1].iso_order == 3);
    CHECK(f.flows.empty());
}

TEST_CASE("broken weight examples") {
    CHECK(broken_weight(heart(), 0, 1, 2) == 0);
    CHECK(broken_weight(three_level({1, -1}), 0, 1, 2) == 0);
    CHECK(broken_weight(three_level({}), 0, 1, 2) == 0);
    CHECK(broken_weight(three_level({1}), 0, 1, 2) == 1);
    try {
        broken_weight(heart(), 0, 2, 1);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IndexMismatch);
    }
}

TEST_CASE("corpus systems: cancellation, derivation and broken weights") {
    for (const auto& s : corpus_systems()) {
        REQUIRE(validate_system(s).ok());
        const auto inv = invariant_boundary(s);
        const auto derived = derive_intrinsic(s);
        CHECK(validate_intrinsic(derived).empty());
        const auto plus = boundary_plus(derived);
        REQUIRE(inv.max_degree() == plus.max_degree());
        for (std::size_t k = 0; k <= inv.max_degree(); ++k) CHECK(inv.boundary[k] == plus.boundary[k]);
        CHECK(betti(inv) == betti(plus));

        std::map<std::pair<std::size_t, std::size_t>, Rational> sums;
        for (const auto& row : broken_weight_table(s)) {
            sums[{row.p, row.r}] += row.weight;
            if (!row.q_orientable) CHECK(row.weight == 0);
        }
        for (const auto& [pr, total] : sums) CHECK(total == 0);
    }
}

TEST_CASE("classification does not depend on point order") {
    std::mt19937_64 rng(29);
    for (const auto& s : corpus_systems())
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::size_t> perm(s.crit_points().size());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            const auto t = relabel(s, perm);
            REQUIRE(validate_system(t).ok());
            CHECK(orbit_signature(t) == orbit_signature(s));
            CHECK(betti(invariant_boundary(t)) == betti(invariant_boundary(s)));
        }
}

TEST_CASE("re-gauging keeps classification, homology and broken weights") {
    std::mt19937_64 rng(31);
    const auto systems = corpus_systems();
    for (int trial = 0; trial < 100; ++trial) {
        const auto& s = systems[trial % systems.size()];
        std::vector<int> sigma(s.crit_points().size());
        for (auto& x : sigma) x = rng() % 2 ? 1 : -1;
        const auto t = regauge(s, sigma);
        REQUIRE(validate_system(t).ok());
        CHECK(same_classification(classify(t), classify(s)));
        CHECK(betti(invariant_boundary(t)) == betti(invariant_boundary(s)));
        const auto orbs = classify(s);
        const auto ws = broken_weight_table(s), wt = broken_weight_table(t);
        REQUIRE(ws.size() == wt.size());
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const int basis = sigma[orbs[ws[i].p].members[0]] * sigma[orbs[ws[i].r].members[0]];
            CHECK(wt[i].weight == basis * ws[i].weight);
        }
        CHECK(regauge(t, sigma) == s);
    }
}

TEST_CASE("normalized gauge is trivial on orientable orbits") {
    for (const auto& s : corpus_systems()) {
        const auto n = normalize_gauge(s);
        for (const auto& o : classify(n)) {
            if (!o.orientable) continue;
            for (std::size_t g = 0; g < n.group().size(); ++g)
                for (auto m : o.members) CHECK(n.tau(g, m) == 1);
        }
    }
}
