#include "orbimorse/quotient.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "orbimorse/error.hpp"

namespace orbimorse {

namespace {

std::string num(std::size_t v) { return std::to_string(v); }

}  // namespace

EquivariantMorseSystem::EquivariantMorseSystem(std::size_t ambient_dim, bool self_indexing,
                                               std::vector<GeneratorData> generators,
                                               std::vector<CriticalPoint> crit_points,
                                               std::vector<ManifoldFlow> flows, GroupAction point_action,
                                               GroupAction flow_action, std::vector<int> tau)
    : ambient_dim_(ambient_dim), self_indexing_(self_indexing), generators_(std::move(generators)),
      crit_points_(std::move(crit_points)), flows_(std::move(flows)), point_action_(std::move(point_action)),
      flow_action_(std::move(flow_action)), tau_(std::move(tau)) {}

EquivariantMorseSystem EquivariantMorseSystem::build(std::size_t ambient_dim, std::size_t degree,
                                                     std::vector<GeneratorData> generators,
                                                     std::vector<CriticalPoint> crit_points,
                                                     std::vector<ManifoldFlow> flows, bool self_indexing,
                                                     std::size_t cap) {
    const auto n = crit_points.size();
    const auto m = flows.size();
    std::vector<Permutation> perms, point_images, flow_images;
    for (std::size_t k = 0; k < generators.size(); ++k) {
        const auto& g = generators[k];
        if (g.points.size() != n || g.flows.size() != m || g.tau.size() != n)
            throw Error(ErrorCode::ShapeMismatch, "generator " + num(k) + " needs " + num(n) +
                                                      " point images, " + num(m) + " flow images and " +
                                                      num(n) + " tau values");
        for (auto t : g.tau)
            if (t != 1 && t != -1)
                throw Error(ErrorCode::ShapeMismatch, "generator " + num(k) + " has tau value " +
                                                          std::to_string(t) + "; expected +1 or -1");
        perms.push_back(g.perm);
        point_images.push_back(g.points);
        flow_images.push_back(g.flows);
    }
    for (const auto& f : flows) {
        if (f.src >= n || f.dst >= n) throw Error(ErrorCode::UnknownPoint, "flow " + f.label + " endpoint");
        if (f.sign != 1 && f.sign != -1)
            throw Error(ErrorCode::ShapeMismatch, "flow " + f.label + " has sign " + std::to_string(f.sign));
    }
    auto group = std::make_shared<const FiniteGroup>(FiniteGroup::generate(degree, std::move(perms), cap));
    auto point_action = GroupAction::from_generator_images(group, n, point_images);
    auto flow_action = GroupAction::from_generator_images(group, m, flow_images);

    std::vector<int> tau(group->size() * n, 1);
    for (std::size_t i = 1; i < group->size(); ++i) {
        const auto& w = group->word(i);
        const auto& tk = generators[w.generator].tau;
        for (std::size_t p = 0; p < n; ++p)
            tau[i * n + p] = tk[point_action.image(w.parent, p)] * tau[w.parent * n + p];
    }
    return EquivariantMorseSystem(ambient_dim, self_indexing, std::move(generators), std::move(crit_points),
                                  std::move(flows), std::move(point_action), std::move(flow_action),
                                  std::move(tau));
}

std::size_t EquivariantMorseSystem::top_degree() const {
    std::size_t n = ambient_dim_;
    for (const auto& p : crit_points_) n = std::max(n, p.index);
    return n;
}

GradedComplex EquivariantMorseSystem::manifold_complex() const {
    const auto n = top_degree();
    std::vector<std::vector<std::string>> labels(n + 1);
    std::vector<std::size_t> pos(crit_points_.size());
    for (std::size_t i = 0; i < crit_points_.size(); ++i) {
        const auto& p = crit_points_[i];
        pos[i] = labels[p.index].size();
        labels[p.index].push_back(p.label);
    }
    auto c = GradedComplex::zero(std::move(labels));
    for (const auto& f : flows_) {
        const auto& src = crit_points_[f.src];
        const auto& dst = crit_points_[f.dst];
        if (src.index != dst.index + 1)
            throw Error(ErrorCode::IndexMismatch, "flow " + f.label + " does not drop the index by one");
        c.boundary[src.index].add(pos[f.dst], pos[f.src], Rational(f.sign));
    }
    return c;
}

bool ValidationReport::ok() const { return first_failure() == nullptr; }

const LawCheck* ValidationReport::first_failure() const {
    for (const auto& l : laws)
        if (!l.ok) return &l;
    return nullptr;
}

ValidationReport validate_system(const EquivariantMorseSystem& s) {
    const auto& G = s.group();
    const auto& pts = s.crit_points();
    const auto& flows = s.flows();
    const auto& pa = s.point_action();
    const auto& fa = s.flow_action();
    ValidationReport report;
    auto fail = [&](LawCheck& law, LawWitness w) {
        if (law.ok) {
            law.ok = false;
            law.witness = std::move(w);
        }
    };

    auto action_law = [&](const char* name, const GroupAction& a, const char* what) {
        LawCheck law{name};
        if (auto d = a.homomorphism_defect())
            fail(law, {d->generator_element, std::nullopt, std::nullopt,
                       std::string(what) + " image of element " + num(d->generator_element) + " after element " +
                           num(d->element) + " at " + num(d->point) + " breaks the action law"});
        return law;
    };
    report.laws.push_back(action_law("point_action", pa, "point"));
    report.laws.push_back(action_law("flow_action", fa, "flow"));

    LawCheck cocycle{"cocycle"};
    for (std::size_t k = 0; k < G.generators().size() && cocycle.ok; ++k) {
        const auto sgen = G.generator_element(k);
        const auto& tk = s.generators()[k].tau;
        for (std::size_t h = 0; h < G.size() && cocycle.ok; ++h) {
            const auto sh = G.multiply(sgen, h);
            for (std::size_t p = 0; p < pts.size(); ++p) {
                if (s.tau(sh, p) != tk[pa.image(h, p)] * s.tau(h, p)) {
                    fail(cocycle, {sgen, p, std::nullopt,
                                   "tau(gh," + pts[p].label + ") != tau(g,h*" + pts[p].label + ")tau(h," +
                                       pts[p].label + ") with h = element " + num(h)});
                    break;
                }
            }
        }
    }
    report.laws.push_back(std::move(cocycle));

    LawCheck index_inv{"index_invariance"};
    for (std::size_t g = 0; g < G.size() && index_inv.ok; ++g)
        for (std::size_t p = 0; p < pts.size(); ++p)
            if (pts[pa.image(g, p)].index != pts[p].index) {
                fail(index_inv, {g, p, std::nullopt,
                                 pts[p].label + " and its image " + pts[pa.image(g, p)].label + " differ in index"});
                break;
            }
    report.laws.push_back(std::move(index_inv));

    LawCheck flow_index{"flow_index"};
    for (std::size_t f = 0; f < flows.size(); ++f)
        if (pts[flows[f].src].index != pts[flows[f].dst].index + 1) {
            fail(flow_index, {std::nullopt, std::nullopt, f, flows[f].label + " does not drop the index by one"});
            break;
        }
    const bool indices_ok = flow_index.ok;
    report.laws.push_back(std::move(flow_index));

    LawCheck endpoints{"endpoint_equivariance"};
    LawCheck signs{"sign_equivariance"};
    for (std::size_t g = 0; g < G.size(); ++g) {
        for (std::size_t f = 0; f < flows.size(); ++f) {
            const auto& gam = flows[f];
            const auto& img = flows[fa.image(g, f)];
            if (img.src != pa.image(g, gam.src) || img.dst != pa.image(g, gam.dst))
                fail(endpoints, {g, std::nullopt, f,
                                 "endpoints of " + img.label + " are not the images of those of " + gam.label});
            const int expected = s.tau(g, gam.src) * s.tau(g, gam.dst) * gam.sign;
            if (img.sign != expected)
                fail(signs, {g, std::nullopt, f,
                             "eps(" + img.label + ") = " + std::to_string(img.sign) + " but tau(g," +
                                 pts[gam.src].label + ") tau(g," + pts[gam.dst].label + ") eps(" + gam.label +
                                 ") = " + std::to_string(expected)});
        }
    }
    report.laws.push_back(std::move(endpoints));
    report.laws.push_back(std::move(signs));

    LawCheck d2{"manifold_d_squared"};
    if (!indices_ok) {
        fail(d2, {std::nullopt, std::nullopt, std::nullopt, "not evaluated: flow_index fails"});
    } else {
        const auto c = s.manifold_complex();
        const auto check = verify_complex(c);
        if (!check.ok) {
            const auto& w = *check.witness;
            fail(d2, {std::nullopt, std::nullopt, std::nullopt,
                      "coefficient of " + c.labels[w.degree - 2][w.row] + " in dd(" + c.labels[w.degree][w.col] +
                          ") is " + to_string(w.value)});
        }
    }
    report.laws.push_back(std::move(d2));

    LawCheck values{"value_invariance"};
    for (std::size_t g = 0; g < G.size() && values.ok; ++g)
        for (std::size_t p = 0; p < pts.size(); ++p)
            if (pts[pa.image(g, p)].value != pts[p].value) {
                fail(values, {g, p, std::nullopt,
                              pts[p].label + " and " + pts[pa.image(g, p)].label + " carry different values"});
                break;
            }
    report.laws.push_back(std::move(values));

    if (s.self_indexing()) {
        LawCheck self{"self_indexing"};
        for (std::size_t p = 0; p < pts.size(); ++p)
            if (!pts[p].value || *pts[p].value != Rational(static_cast<unsigned long>(pts[p].index))) {
                fail(self, {std::nullopt, p, std::nullopt, pts[p].label + " has value different from its index"});
                break;
            }
        report.laws.push_back(std::move(self));
    }
    return report;
}

std::vector<CriticalOrbit> classify(const EquivariantMorseSystem& s) {
    std::vector<CriticalOrbit> out;
    for (auto& members : orbits(s.point_action())) {
        CriticalOrbit o;
        const auto rep = members.front();
        o.index = s.crit_points()[rep].index;
        const auto stab = s.point_action().stabilizer_elements(rep);
        o.iso_order = stab.size();
        for (auto g : stab)
            if (s.tau(g, rep) == -1) ++o.reversing;
        o.orientable = o.reversing == 0;
        o.members = std::move(members);
        out.push_back(std::move(o));
    }
    return out;
}

EquivariantMorseSystem regauge(const EquivariantMorseSystem& s, const std::vector<int>& sigma) {
    const auto n = s.crit_points().size();
    if (sigma.size() != n) throw Error(ErrorCode::ShapeMismatch, "gauge needs one sign per critical point");
    for (auto v : sigma)
        if (v != 1 && v != -1) throw Error(ErrorCode::ShapeMismatch, "gauge entries must be +1 or -1");
    auto generators = s.generators();
    for (auto& g : generators)
        for (std::size_t p = 0; p < n; ++p) g.tau[p] = sigma[g.points[p]] * g.tau[p] * sigma[p];
    auto flows = s.flows();
    for (auto& f : flows) f.sign *= sigma[f.src] * sigma[f.dst];
    std::vector<int> tau(s.group().size() * n);
    for (std::size_t g = 0; g < s.group().size(); ++g)
        for (std::size_t p = 0; p < n; ++p)
            tau[g * n + p] = sigma[s.point_action().image(g, p)] * s.tau(g, p) * sigma[p];
    return EquivariantMorseSystem(s.ambient_dim(), s.self_indexing(), std::move(generators), s.crit_points(),
                                  std::move(flows), s.point_action(), s.flow_action(), std::move(tau));
}

EquivariantMorseSystem normalize_gauge(const EquivariantMorseSystem& s) {
    const auto& pa = s.point_action();
    std::vector<int> sigma(s.crit_points().size(), 1);
    const auto orbit_list = classify(s);
    for (const auto& o : orbit_list) {
        const auto rep = o.members.front();
        for (auto x : o.members) sigma[x] = s.tau(*pa.transporter(rep, x), rep);
    }
    auto t = regauge(s, sigma);
    for (const auto& o : orbit_list) {
        if (!o.orientable) continue;
        for (auto p : o.members)
            for (std::size_t g = 0; g < t.group().size(); ++g)
                if (t.tau(g, p) != 1)
                    throw Error(ErrorCode::GaugeFailure, "no invariant orientation on the orbit of " +
                                                             s.crit_points()[p].label + " (element " + num(g) + ")");
    }
    return t;
}

namespace {

/// Normalized system with its orbit data, shared by the quotient operations.
struct Prepared {
    EquivariantMorseSystem t;
    std::vector<CriticalOrbit> orbits;
    std::vector<std::size_t> orbit_of;

    explicit Prepared(const EquivariantMorseSystem& s) : t(normalize_gauge(s)), orbits(classify(t)) {
        orbit_of.resize(t.crit_points().size());
        for (std::size_t i = 0; i < orbits.size(); ++i)
            for (auto x : orbits[i].members) orbit_of[x] = i;
    }

    [[nodiscard]] std::string orbit_label(std::size_t i) const {
        std::string label;
        for (auto x : orbits[i].members) {
            if (!label.empty()) label += "+";
            label += t.crit_points()[x].label;
        }
        return label;
    }
};

OrbifoldMorseSystem derive(const Prepared& prep) {
    const auto& t = prep.t;
    OrbifoldMorseSystem out;
    out.ambient_dim = t.ambient_dim();
    for (const auto& o : prep.orbits)
        out.crit_points.push_back({t.crit_points()[o.members.front()].label, o.index, o.iso_order, o.orientable});
    for (const auto& flow_orbit : orbits(t.flow_action())) {
        const auto rep = flow_orbit.front();
        const auto& gam = t.flows()[rep];
        const auto P = prep.orbit_of[gam.src];
        const auto Q = prep.orbit_of[gam.dst];
        if (!prep.orbits[P].orientable || !prep.orbits[Q].orientable) continue;
        for (auto f : flow_orbit)
            if (t.flows()[f].sign != gam.sign)
                throw Error(ErrorCode::SignNotOrbitConstant,
                            t.flows()[f].label + " and " + gam.label + " lie in one orbit but differ in sign");
        const std::uint64_t iso = t.flow_action().stabilizer_elements(rep).size();
        if (prep.orbits[P].iso_order % iso != 0 || prep.orbits[Q].iso_order % iso != 0)
            throw Error(ErrorCode::DivisibilityViolation,
                        "stabilizer of " + gam.label + " has order " + num(iso) +
                            ", which does not divide both endpoint isotropy orders");
        out.flows.push_back({gam.label, P, Q, iso, gam.sign});
    }
    return out;
}

Rational weight_at(const Prepared& prep, std::size_t P, std::size_t q, std::size_t R) {
    Rational in = 0, out = 0;
    for (const auto& f : prep.t.flows()) {
        if (f.dst == q && prep.orbit_of[f.src] == P) in += f.sign;
        if (f.src == q && prep.orbit_of[f.dst] == R) out += f.sign;
    }
    return in * out / static_cast<unsigned long>(prep.t.point_action().stabilizer_elements(q).size());
}

Rational broken_weight_prepared(const Prepared& prep, const OrbifoldMorseSystem& derived, std::size_t P,
                                std::size_t Q, std::size_t R) {
    const auto& orbs = prep.orbits;
    if (P >= orbs.size() || Q >= orbs.size() || R >= orbs.size())
        throw Error(ErrorCode::UnknownPoint, "orbit position out of range");
    if (orbs[P].index != orbs[Q].index + 1 || orbs[Q].index != orbs[R].index + 1)
        throw Error(ErrorCode::IndexMismatch, "orbits " + prep.orbit_label(P) + ", " + prep.orbit_label(Q) + ", " +
                                                  prep.orbit_label(R) + " are not on consecutive indices");
    if (!orbs[P].orientable || !orbs[R].orientable)
        throw Error(ErrorCode::NotOrientable, "outer orbits of a broken weight must be orientable");
    const auto omega = weight_at(prep, P, orbs[Q].members.front(), R);
    for (auto q : orbs[Q].members)
        if (weight_at(prep, P, q, R) != omega)
            throw Error(ErrorCode::InvarianceFailure,
                        "broken weight through " + prep.t.crit_points()[q].label + " differs from the representative");
    if (!orbs[Q].orientable) {
        if (omega != 0)
            throw Error(ErrorCode::CancellationFailure, "broken weight through non-orientable " +
                                                            prep.orbit_label(Q) + " is " + to_string(omega));
    } else if (omega != weighted_pair_sum(derived, P, Q, R)) {
        throw Error(ErrorCode::InternalError, "broken weight through " + prep.orbit_label(Q) +
                                                  " disagrees with the intrinsic weighted pair sum");
    }
    return omega;
}

}  // namespace

GradedComplex invariant_boundary(const EquivariantMorseSystem& s) {
    const Prepared prep(s);
    const auto& t = prep.t;
    const auto& orbs = prep.orbits;
    const auto n = t.top_degree();
    std::vector<std::vector<std::string>> labels(n + 1);
    std::vector<std::size_t> pos(orbs.size());
    for (std::size_t i = 0; i < orbs.size(); ++i) {
        if (!orbs[i].orientable) continue;
        pos[i] = labels[orbs[i].index].size();
        labels[orbs[i].index].push_back(prep.orbit_label(i));
    }
    auto c = GradedComplex::zero(std::move(labels));
    for (std::size_t P = 0; P < orbs.size(); ++P) {
        if (!orbs[P].orientable) continue;
        std::map<std::size_t, Rational> coeff;
        for (const auto& f : t.flows())
            if (prep.orbit_of[f.src] == P) coeff[f.dst] += f.sign;
        std::vector<bool> touched(orbs.size(), false);
        for (const auto& [x, v] : coeff) {
            if (v == 0) continue;
            const auto Q = prep.orbit_of[x];
            if (!orbs[Q].orientable)
                throw Error(ErrorCode::CancellationFailure, "d(" + prep.orbit_label(P) + ") has coefficient " +
                                                                to_string(v) + " at non-orientable " +
                                                                t.crit_points()[x].label);
            touched[Q] = true;
        }
        for (std::size_t Q = 0; Q < orbs.size(); ++Q) {
            if (!touched[Q]) continue;
            const auto at = [&](std::size_t x) {
                auto it = coeff.find(x);
                return it == coeff.end() ? Rational(0) : it->second;
            };
            const auto v = at(orbs[Q].members.front());
            for (auto x : orbs[Q].members)
                if (at(x) != v)
                    throw Error(ErrorCode::InvarianceFailure,
                                "d(" + prep.orbit_label(P) + ") is not constant on " + prep.orbit_label(Q) + ": " +
                                    to_string(v) + " at " + t.crit_points()[orbs[Q].members.front()].label + ", " +
                                    to_string(at(x)) + " at " + t.crit_points()[x].label);
            if (orbs[Q].index + 1 != orbs[P].index)
                throw Error(ErrorCode::IndexMismatch, "flows from " + prep.orbit_label(P) + " reach " +
                                                          prep.orbit_label(Q) + " of the wrong index");
            c.boundary[orbs[P].index].set(pos[Q], pos[P], v);
        }
    }
    return c;
}

OrbifoldMorseSystem derive_intrinsic(const EquivariantMorseSystem& s) { return derive(Prepared(s)); }

Rational broken_weight(const EquivariantMorseSystem& s, std::size_t p, std::size_t q, std::size_t r) {
    const Prepared prep(s);
    return broken_weight_prepared(prep, derive(prep), p, q, r);
}

std::vector<BrokenWeightRow> broken_weight_table(const EquivariantMorseSystem& s) {
    const Prepared prep(s);
    const auto derived = derive(prep);
    const auto& orbs = prep.orbits;
    std::vector<BrokenWeightRow> rows;
    for (std::size_t P = 0; P < orbs.size(); ++P) {
        if (!orbs[P].orientable || orbs[P].index < 2) continue;
        for (std::size_t R = 0; R < orbs.size(); ++R) {
            if (!orbs[R].orientable || orbs[R].index + 2 != orbs[P].index) continue;
            for (std::size_t Q = 0; Q < orbs.size(); ++Q) {
                if (orbs[Q].index + 1 != orbs[P].index) continue;
                rows.push_back({P, Q, R, orbs[Q].orientable, broken_weight_prepared(prep, derived, P, Q, R)});
            }
        }
    }
    return rows;
}

}  // namespace orbimorse
