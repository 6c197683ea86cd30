#include "orbimorse/simplicial.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "orbimorse/error.hpp"

namespace orbimorse {

namespace {

constexpr std::size_t kMaxSimplexVertices = 16;

std::vector<Simplex> proper_faces(const Simplex& s) {
    std::vector<Simplex> out;
    const std::size_t full = (std::size_t{1} << s.size()) - 1;
    for (std::size_t mask = 1; mask < full; ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (mask & (std::size_t{1} << i)) f.push_back(s[i]);
        out.push_back(std::move(f));
    }
    return out;
}

std::string join(const std::vector<std::string>& labels, const Simplex& s) {
    std::string out;
    for (auto v : s) {
        if (!out.empty()) out += ' ';
        out += labels[v];
    }
    return out;
}

void require_subcomplex(const SimplicialComplex& k, const SimplicialComplex& l) {
    if (l.vertex_count() != k.vertex_count())
        throw Error(ErrorCode::NotASubcomplex, "subcomplex must share the vertex set of the complex");
    for (int d = 0; d <= l.dimension(); ++d)
        for (const auto& s : l.simplices(static_cast<std::size_t>(d)))
            if (!k.contains(s))
                throw Error(ErrorCode::NotASubcomplex, "simplex [" + l.label(s) + "] is not in the complex");
}

void require_invariant(const GSimplicialComplex& k, const SimplicialComplex& l) {
    for (int d = 0; d <= l.dimension(); ++d)
        for (const auto& s : l.simplices(static_cast<std::size_t>(d)))
            for (std::size_t g = 0; g < k.group().size(); ++g)
                if (!l.contains(k.image(g, s)))
                    throw Error(ErrorCode::NotASubcomplex,
                                "subcomplex is not invariant: [" + l.label(s) + "] leaves it under element " +
                                    std::to_string(g));
}

/// Barycenter positions: the simplices of K in listing order.
struct Barycenters {
    std::vector<std::string> labels;
    std::map<Simplex, std::uint32_t> index;

    explicit Barycenters(const SimplicialComplex& k) {
        for (int d = 0; d <= k.dimension(); ++d) {
            for (const auto& s : k.simplices(static_cast<std::size_t>(d))) {
                index.emplace(s, static_cast<std::uint32_t>(labels.size()));
                labels.push_back(d == 0 ? k.vertices()[s[0]] : "(" + join(k.vertices(), s) + ")");
            }
        }
    }
};

/// Chains of barycenters ending at each simplex, memoized.
class ChainEnumerator {
public:
    explicit ChainEnumerator(const Barycenters& b) : b_(b) {}

    const std::vector<Simplex>& chains(const Simplex& s) {
        if (auto it = memo_.find(s); it != memo_.end()) return it->second;
        const auto top = b_.index.at(s);
        std::vector<Simplex> out{{top}};
        for (const auto& f : proper_faces(s)) {
            for (auto c : chains(f)) {
                c.push_back(top);
                out.push_back(std::move(c));
            }
        }
        return memo_.emplace(s, std::move(out)).first->second;
    }

    std::vector<Simplex> chains_of(const std::vector<Simplex>& simplices) {
        std::vector<Simplex> out;
        for (const auto& s : simplices) {
            const auto& c = chains(s);
            out.insert(out.end(), c.begin(), c.end());
        }
        return out;
    }

private:
    const Barycenters& b_;
    std::map<Simplex, std::vector<Simplex>> memo_;
};

std::vector<Simplex> all_simplices(const SimplicialComplex& k) {
    std::vector<Simplex> out;
    for (int d = 0; d <= k.dimension(); ++d) {
        const auto& s = k.simplices(static_cast<std::size_t>(d));
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_simplices(std::vector<std::string> vertices,
                                                    std::vector<Simplex> simplices, bool all_vertices) {
    std::set<Simplex> family;
    for (auto s : simplices) {
        if (s.empty()) throw Error(ErrorCode::ShapeMismatch, "empty simplex");
        if (s.size() > kMaxSimplexVertices) throw Error(ErrorCode::ShapeMismatch, "simplex dimension too large");
        for (auto v : s)
            if (v >= vertices.size()) throw Error(ErrorCode::UnknownPoint, "vertex " + std::to_string(v));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorCode::ShapeMismatch, "simplex repeats a vertex");
        if (!family.insert(s).second) continue;
        for (auto& f : proper_faces(s)) family.insert(std::move(f));
    }
    if (all_vertices)
        for (std::uint32_t v = 0; v < vertices.size(); ++v) family.insert(Simplex{v});

    SimplicialComplex k;
    k.vertices_ = std::move(vertices);
    for (const auto& s : family) {
        const auto d = s.size() - 1;
        if (k.by_dim_.size() <= d) k.by_dim_.resize(d + 1);
        k.lookup_.emplace(s, k.by_dim_[d].size());
        k.by_dim_[d].push_back(s);
    }
    return k;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t k) const {
    static const std::vector<Simplex> empty;
    return k < by_dim_.size() ? by_dim_[k] : empty;
}

std::optional<std::size_t> SimplicialComplex::position(const Simplex& s) const {
    auto it = lookup_.find(s);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::set<Simplex> covered;
    for (std::size_t d = 1; d < by_dim_.size(); ++d)
        for (const auto& s : by_dim_[d])
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                covered.insert(std::move(f));
            }
    std::vector<Simplex> out;
    for (const auto& dim : by_dim_)
        for (const auto& s : dim)
            if (!covered.count(s)) out.push_back(s);
    return out;
}

std::string SimplicialComplex::label(const Simplex& s) const { return join(vertices_, s); }

GSimplicialComplex GSimplicialComplex::make(SimplicialComplex complex, GroupAction vertex_action) {
    if (vertex_action.points() != complex.vertex_count())
        throw Error(ErrorCode::ShapeMismatch, "vertex action must act on " +
                                                  std::to_string(complex.vertex_count()) + " vertices");
    GSimplicialComplex k(std::move(complex), std::move(vertex_action));
    for (const auto& s : k.complex_.maximal_simplices())
        for (std::size_t g = 0; g < k.group().size(); ++g)
            if (!k.complex_.contains(k.image(g, s)))
                throw Error(ErrorCode::ActionNotSimplicial, "element " + std::to_string(g) + " maps [" +
                                                                k.complex_.label(s) + "] to a non-simplex");
    return k;
}

GSimplicialComplex GSimplicialComplex::from_generators(SimplicialComplex complex, std::vector<Permutation> generators,
                                                       std::size_t cap) {
    const auto n = complex.vertex_count();
    auto group = std::make_shared<const FiniteGroup>(FiniteGroup::generate(n, std::move(generators), cap));
    return make(std::move(complex), GroupAction::natural(std::move(group)));
}

Simplex GSimplicialComplex::image(std::size_t g, const Simplex& s) const {
    Simplex out;
    out.reserve(s.size());
    for (auto v : s) out.push_back(action_.image(g, v));
    std::sort(out.begin(), out.end());
    return out;
}

SimplicialComplex barycentric_subdivide(const SimplicialComplex& k) {
    const Barycenters b(k);
    ChainEnumerator chains(b);
    return SimplicialComplex::from_simplices(b.labels, chains.chains_of(k.maximal_simplices()));
}

std::pair<SimplicialComplex, SimplicialComplex> barycentric_subdivide(const SimplicialComplex& k,
                                                                      const SimplicialComplex& l) {
    require_subcomplex(k, l);
    const Barycenters b(k);
    ChainEnumerator chains(b);
    auto kk = SimplicialComplex::from_simplices(b.labels, chains.chains_of(k.maximal_simplices()));
    auto ll = SimplicialComplex::from_simplices(b.labels, chains.chains_of(l.maximal_simplices()), false);
    return {std::move(kk), std::move(ll)};
}

GSimplicialComplex barycentric_subdivide(const GSimplicialComplex& k) {
    const Barycenters b(k.complex());
    auto sub = barycentric_subdivide(k.complex());
    const auto n = b.labels.size();
    const auto simplices = all_simplices(k.complex());
    std::vector<std::uint32_t> table(k.group().size() * n);
    for (std::size_t g = 0; g < k.group().size(); ++g)
        for (std::size_t i = 0; i < n; ++i) table[g * n + i] = b.index.at(k.image(g, simplices[i]));
    return GSimplicialComplex::make(std::move(sub), GroupAction::from_table(k.action().group_ptr(), n, std::move(table)));
}

bool is_regular(const GSimplicialComplex& k) {
    const auto& c = k.complex();
    for (int d = 1; d <= c.dimension(); ++d)
        for (const auto& s : c.simplices(static_cast<std::size_t>(d)))
            for (std::size_t g = 1; g < k.group().size(); ++g) {
                if (k.image(g, s) != s) continue;
                for (auto v : s)
                    if (k.action().image(g, v) != v) return false;
            }
    return true;
}

namespace {

std::vector<std::uint32_t> vertex_orbits(const GSimplicialComplex& k, std::vector<std::uint32_t>* least = nullptr) {
    std::vector<std::uint32_t> orbit_of(k.complex().vertex_count());
    std::uint32_t next = 0;
    for (const auto& orbit : orbits(k.action())) {
        for (auto v : orbit) orbit_of[v] = next;
        if (least) least->push_back(static_cast<std::uint32_t>(orbit.front()));
        ++next;
    }
    return orbit_of;
}

Simplex orbit_set(const std::vector<std::uint32_t>& orbit_of, const Simplex& s) {
    Simplex out;
    for (auto v : s) out.push_back(orbit_of[v]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Simplex least_image(const GSimplicialComplex& k, const Simplex& s) {
    Simplex best = s;
    for (std::size_t g = 1; g < k.group().size(); ++g) best = std::min(best, k.image(g, s));
    return best;
}

}  // namespace

bool quotient_is_simplicial(const GSimplicialComplex& k) {
    const auto orbit_of = vertex_orbits(k);
    const auto& c = k.complex();
    for (int d = 0; d <= c.dimension(); ++d) {
        std::set<Simplex> sets, simplex_orbits;
        for (const auto& s : c.simplices(static_cast<std::size_t>(d))) {
            auto set = orbit_set(orbit_of, s);
            if (set.size() != s.size()) return false;
            sets.insert(std::move(set));
            simplex_orbits.insert(least_image(k, s));
        }
        if (sets.size() != simplex_orbits.size()) return false;
    }
    return true;
}

Regularized regularize(const GSimplicialComplex& k, const std::optional<SimplicialComplex>& l) {
    Regularized r{k, l, 0};
    while (r.subdivisions < 2 && !(is_regular(r.complex) && quotient_is_simplicial(r.complex))) {
        if (r.sub) r.sub = barycentric_subdivide(r.complex.complex(), *r.sub).second;
        r.complex = barycentric_subdivide(r.complex);
        ++r.subdivisions;
    }
    return r;
}

QuotientComplex quotient(const GSimplicialComplex& k) {
    if (!is_regular(k)) throw Error(ErrorCode::NotRegular, "a simplex is fixed setwise but not vertex-wise");
    if (!quotient_is_simplicial(k))
        throw Error(ErrorCode::NotRegular, "vertex orbits do not span a simplicial quotient; subdivide first");
    std::vector<std::uint32_t> least;
    auto orbit_of = vertex_orbits(k, &least);
    std::vector<std::string> labels;
    for (auto v : least) labels.push_back(k.complex().vertices()[v]);
    const auto& c = k.complex();
    std::vector<Simplex> sets;
    for (const auto& s : all_simplices(c)) sets.push_back(orbit_set(orbit_of, s));
    QuotientComplex q{SimplicialComplex::from_simplices(std::move(labels), sets), std::move(orbit_of), {}};
    q.representatives.resize(static_cast<std::size_t>(q.complex.dimension() + 1));
    for (int d = 0; d <= q.complex.dimension(); ++d)
        q.representatives[static_cast<std::size_t>(d)].resize(q.complex.count(static_cast<std::size_t>(d)));
    // Simplices are visited in increasing order, so the first hit is the least.
    for (int d = c.dimension(); d >= 0; --d) {
        const auto dd = static_cast<std::size_t>(d);
        std::vector<bool> seen(q.complex.count(dd), false);
        for (const auto& s : c.simplices(dd)) {
            const auto pos = *q.complex.position(orbit_set(q.vertex_orbit, s));
            if (!seen[pos]) {
                seen[pos] = true;
                q.representatives[dd][pos] = s;
            }
        }
    }
    return q;
}

std::pair<QuotientComplex, SimplicialComplex> quotient(const GSimplicialComplex& k, const SimplicialComplex& l) {
    require_subcomplex(k.complex(), l);
    require_invariant(k, l);
    auto q = quotient(k);
    std::vector<Simplex> sets;
    for (const auto& s : all_simplices(l)) sets.push_back(orbit_set(q.vertex_orbit, s));
    auto ql = SimplicialComplex::from_simplices(q.complex.vertices(), std::move(sets), false);
    return {std::move(q), std::move(ql)};
}

void require_invariant_subcomplex(const GSimplicialComplex& k, const SimplicialComplex& l) {
    require_subcomplex(k.complex(), l);
    require_invariant(k, l);
}

GradedComplex chain_complex(const SimplicialComplex& k, const std::optional<SimplicialComplex>& l) {
    if (l) require_subcomplex(k, *l);
    const auto top = static_cast<std::size_t>(std::max(k.dimension(), 0));
    std::vector<std::vector<std::string>> labels(top + 1);
    std::vector<std::vector<std::optional<std::size_t>>> pos(top + 1);
    for (std::size_t d = 0; d <= top; ++d) {
        for (const auto& s : k.simplices(d)) {
            if (l && l->contains(s)) {
                pos[d].push_back(std::nullopt);
                continue;
            }
            pos[d].push_back(labels[d].size());
            labels[d].push_back(k.label(s));
        }
    }
    auto c = GradedComplex::zero(std::move(labels));
    for (std::size_t d = 1; d <= top; ++d) {
        const auto& simplices = k.simplices(d);
        for (std::size_t j = 0; j < simplices.size(); ++j) {
            if (!pos[d][j]) continue;
            const auto& s = simplices[j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
                const auto fp = pos[d - 1][*k.position(f)];
                if (fp) c.boundary[d].add(*fp, *pos[d][j], Rational(i % 2 == 0 ? 1 : -1));
            }
        }
    }
    return c;
}

std::vector<std::size_t> homology(const SimplicialComplex& k, const std::optional<SimplicialComplex>& l) {
    return betti(chain_complex(k, l));
}

std::vector<std::size_t> invariant_homology(const GSimplicialComplex& k, const std::optional<SimplicialComplex>& l) {
    const auto& c = k.complex();
    if (l) {
        require_subcomplex(c, *l);
        require_invariant(k, *l);
    }
    const auto chains = chain_complex(c, l);
    const auto top = chains.max_degree();
    const Rational order(static_cast<unsigned long>(k.group().size()));
    std::vector<RationalMatrix> projector;
    for (std::size_t d = 0; d <= top; ++d) {
        std::vector<std::optional<std::size_t>> pos;
        std::size_t next = 0;
        for (const auto& s : c.simplices(d)) pos.push_back(l && l->contains(s) ? std::nullopt : std::optional(next++));
        RationalMatrix p(next, next);
        const auto& simplices = c.simplices(d);
        for (std::size_t j = 0; j < simplices.size(); ++j) {
            if (!pos[j]) continue;
            std::map<std::size_t, Rational> column;
            for (std::size_t g = 0; g < k.group().size(); ++g) {
                std::vector<std::uint32_t> images;
                for (auto v : simplices[j]) images.push_back(k.action().image(g, v));
                const int sign = parity(images);
                std::sort(images.begin(), images.end());
                column[*pos[*c.position(images)]] += Rational(sign) / order;
            }
            for (const auto& [row, v] : column)
                if (v != 0) p.set(row, *pos[j], v);
        }
        projector.push_back(std::move(p));
    }
    std::vector<std::size_t> image_rank(top + 2, 0);
    for (std::size_t d = 1; d <= top; ++d) image_rank[d] = rank(chains.boundary[d] * projector[d]);
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d <= top; ++d) out.push_back(rank(projector[d]) - image_rank[d] - image_rank[d + 1]);
    return out;
}

bool same_betti(std::vector<std::size_t> a, std::vector<std::size_t> b) {
    const auto n = std::max(a.size(), b.size());
    a.resize(n, 0);
    b.resize(n, 0);
    return a == b;
}

Comparison compare(const EquivariantMorseSystem& g, const GSimplicialComplex& k) {
    Comparison out;
    out.morse = betti(invariant_boundary(g));
    const auto r = regularize(k);
    out.subdivisions = r.subdivisions;
    out.simplicial = homology(quotient(r.complex).complex);
    out.equal = same_betti(out.morse, out.simplicial);
    return out;
}

}  // namespace orbimorse
