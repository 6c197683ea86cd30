#include "orbimorse/intrinsic.hpp"

#include <algorithm>
#include <set>

namespace orbimorse {

std::string_view to_string(Convention c) { return c == Convention::Plus ? "plus" : "minus"; }

std::vector<SystemIssue> validate_intrinsic(const OrbifoldMorseSystem& s) {
    std::vector<SystemIssue> issues;
    const auto n = s.crit_points.size();
    std::set<std::string> seen;
    for (const auto& p : s.crit_points) {
        if (!seen.insert(p.label).second)
            issues.push_back({ErrorCode::ParseError, "unique_labels", "duplicate label " + p.label});
        if (p.iso_order == 0)
            issues.push_back({ErrorCode::DivisibilityViolation, "iso_order_positive", p.label});
    }
    for (const auto& f : s.flows) {
        if (!seen.insert(f.label).second)
            issues.push_back({ErrorCode::ParseError, "unique_labels", "duplicate label " + f.label});
        if (f.src >= n || f.dst >= n) {
            issues.push_back({ErrorCode::UnknownPoint, "flow_endpoints", f.label});
            continue;
        }
        const auto& src = s.crit_points[f.src];
        const auto& dst = s.crit_points[f.dst];
        if (f.sign != 1 && f.sign != -1)
            issues.push_back({ErrorCode::ShapeMismatch, "sign", f.label + " has sign " + std::to_string(f.sign)});
        if (src.index != dst.index + 1)
            issues.push_back({ErrorCode::IndexMismatch, "flow_index",
                              f.label + ": index(" + src.label + ")=" + std::to_string(src.index) +
                                  ", index(" + dst.label + ")=" + std::to_string(dst.index)});
        if (!src.orientable || !dst.orientable)
            issues.push_back({ErrorCode::NotOrientable, "flow_orientable_endpoints",
                              f.label + " touches a non-orientable point"});
        if (f.iso_order == 0 || src.iso_order % f.iso_order != 0 || dst.iso_order % f.iso_order != 0)
            issues.push_back({ErrorCode::DivisibilityViolation, "iso_divisibility",
                              f.label + ": |G_γ|=" + std::to_string(f.iso_order) + " must divide |G_" +
                                  src.label + "|=" + std::to_string(src.iso_order) + " and |G_" +
                                  dst.label + "|=" + std::to_string(dst.iso_order)});
    }
    return issues;
}

namespace {

void require_valid(const OrbifoldMorseSystem& s) {
    const auto issues = validate_intrinsic(s);
    if (!issues.empty()) throw Error(issues.front().code, issues.front().law + ": " + issues.front().witness);
}

Rational as_rational(std::uint64_t v) { return Rational(static_cast<unsigned long>(v)); }

}  // namespace

std::vector<std::optional<std::size_t>> generator_positions(const OrbifoldMorseSystem& s) {
    std::vector<std::optional<std::size_t>> pos(s.crit_points.size());
    std::vector<std::size_t> next(top_degree(s) + 1, 0);
    for (std::size_t i = 0; i < s.crit_points.size(); ++i) {
        const auto& p = s.crit_points[i];
        if (p.orientable) pos[i] = next[p.index]++;
    }
    return pos;
}

std::size_t top_degree(const OrbifoldMorseSystem& s) {
    std::size_t n = s.ambient_dim;
    for (const auto& p : s.crit_points) n = std::max(n, p.index);
    return n;
}

Rational incidence(const OrbifoldMorseSystem& s, std::size_t p, std::size_t q, Convention c) {
    Rational total = 0;
    for (const auto& f : s.flows) {
        if (f.src != p || f.dst != q) continue;
        const auto endpoint = c == Convention::Plus ? s.crit_points[q].iso_order : s.crit_points[p].iso_order;
        total += Rational(f.sign) * as_rational(endpoint) / as_rational(f.iso_order);
    }
    return total;
}

GradedComplex boundary_complex(const OrbifoldMorseSystem& s, Convention c) {
    require_valid(s);
    const auto n = top_degree(s);
    std::vector<std::vector<std::string>> labels(n + 1);
    for (const auto& p : s.crit_points)
        if (p.orientable) labels[p.index].push_back(p.label);
    auto complex = GradedComplex::zero(std::move(labels));
    const auto pos = generator_positions(s);
    for (const auto& f : s.flows) {
        const auto& src = s.crit_points[f.src];
        const auto& dst = s.crit_points[f.dst];
        const auto endpoint = c == Convention::Plus ? dst.iso_order : src.iso_order;
        // Divisibility makes every coefficient an integer.
        const Rational coeff = Rational(f.sign) * as_rational(endpoint / f.iso_order);
        complex.boundary[src.index].add(*pos[f.dst], *pos[f.src], coeff);
    }
    return complex;
}

ChainMap psi(const OrbifoldMorseSystem& s) {
    ChainMap f{boundary_minus(s), boundary_plus(s), {}};
    const auto n = top_degree(s);
    std::vector<std::vector<Rational>> diag(n + 1);
    for (const auto& p : s.crit_points)
        if (p.orientable) diag[p.index].push_back(as_rational(p.iso_order));
    for (std::size_t k = 0; k <= n; ++k) f.maps.push_back(RationalMatrix::diagonal(diag[k]));
    return f;
}

DSquaredReport verify_d_squared(const OrbifoldMorseSystem& s) {
    for (auto conv : {Convention::Plus, Convention::Minus}) {
        const auto c = boundary_complex(s, conv);
        const auto check = verify_complex(c);
        if (!check.ok) {
            const auto& w = *check.witness;
            return {false, DSquaredReport::Witness{conv, c.labels[w.degree][w.col],
                                                   c.labels[w.degree - 2][w.row], w.value}};
        }
    }
    return {};
}

OrbifoldMorseSystem reverse(const OrbifoldMorseSystem& s, std::size_t n) {
    OrbifoldMorseSystem r;
    r.ambient_dim = n;
    for (const auto& p : s.crit_points) {
        if (p.index > n)
            throw Error(ErrorCode::IndexOutOfRange,
                        p.label + " has index " + std::to_string(p.index) + " > " + std::to_string(n));
        auto q = p;
        q.index = n - p.index;
        r.crit_points.push_back(std::move(q));
    }
    for (const auto& f : s.flows) {
        auto g = f;
        std::swap(g.src, g.dst);
        r.flows.push_back(std::move(g));
    }
    return r;
}

std::vector<Rational> pairing_form(const OrbifoldMorseSystem& s, Convention c) {
    std::vector<Rational> d;
    for (const auto& p : s.crit_points) {
        if (!p.orientable) continue;
        const auto g = as_rational(p.iso_order);
        d.push_back(c == Convention::Plus ? Rational(1) / g : g);
    }
    return d;
}

PairingReport pairing_check(const OrbifoldMorseSystem& s, std::size_t n) {
    const auto reversed = reverse(s, n);
    const auto pos = generator_positions(s);
    PairingReport report;
    for (auto conv : {Convention::Plus, Convention::Minus}) {
        const auto forward = boundary_complex(s, conv);
        const auto backward = boundary_complex(reversed, conv);
        const auto weight = [&](std::size_t i) {
            const auto g = as_rational(s.crit_points[i].iso_order);
            return conv == Convention::Plus ? Rational(1) / g : g;
        };
        for (std::size_t p = 0; p < s.crit_points.size(); ++p) {
            for (std::size_t q = 0; q < s.crit_points.size(); ++q) {
                const auto& P = s.crit_points[p];
                const auto& Q = s.crit_points[q];
                if (!P.orientable || !Q.orientable || P.index != Q.index + 1) continue;
                ++report.pairs_checked;
                // ⟨∂p̄, q̄⟩ on the forward side; ⟨p̄, ∂'q̄⟩ with q̄ in degree n − index(q̄).
                const Rational lhs = forward.boundary[P.index].at(*pos[q], *pos[p]) * weight(q);
                const Rational rhs = backward.boundary[n - Q.index].at(*pos[p], *pos[q]) * weight(p);
                Rational expected = 0;
                for (const auto& f : s.flows)
                    if (f.src == p && f.dst == q) expected += Rational(f.sign) / as_rational(f.iso_order);
                if (conv == Convention::Minus)
                    expected *= as_rational(P.iso_order) * as_rational(Q.iso_order);
                if (lhs != rhs || lhs != expected) {
                    report.ok = false;
                    report.failures.push_back({conv, P.label, Q.label, lhs, rhs});
                }
            }
        }
    }
    return report;
}

Rational weighted_pair_sum(const OrbifoldMorseSystem& s, std::size_t p, std::size_t q, std::size_t r) {
    const auto gq = as_rational(s.crit_points.at(q).iso_order);
    Rational in = 0, out = 0;
    for (const auto& f : s.flows) {
        const Rational nu = Rational(f.sign) * gq / as_rational(f.iso_order);
        if (f.src == p && f.dst == q) in += nu;
        if (f.src == q && f.dst == r) out += nu;
    }
    return in * out / gq;
}

}  // namespace orbimorse
