#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbimorse/chaincx.hpp"
#include "orbimorse/groups.hpp"
#include "orbimorse/intrinsic.hpp"
#include "orbimorse/rational.hpp"

namespace orbimorse {

struct CriticalPoint {
    std::string label;
    std::size_t index = 0;
    std::optional<Rational> value;

    friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

/// Gradient line on the manifold between two critical points, with its
/// Morse sign ε.
struct ManifoldFlow {
    std::string label;
    std::size_t src = 0;
    std::size_t dst = 0;
    int sign = 1;

    friend bool operator==(const ManifoldFlow&, const ManifoldFlow&) = default;
};

/// How one group generator acts: on the ground set, on critical points, on
/// flows, and on the chosen unstable orientations (tau[p] = τ(s, p)).
struct GeneratorData {
    Permutation perm;
    Permutation points;
    Permutation flows;
    std::vector<int> tau;

    friend bool operator==(const GeneratorData&, const GeneratorData&) = default;
};

/// Manifold Morse data with a finite group action and orientation cocycle.
/// Built from generator data; actions and τ are extended to every group
/// element along the group's words, so the laws in validate_system() decide
/// whether the input really defines an action and a cocycle.
class EquivariantMorseSystem {
public:
    /// Throws MalformedPermutation, ClosureExceedsCap, ShapeMismatch or
    /// UnknownPoint on structurally unusable input.
    static EquivariantMorseSystem build(std::size_t ambient_dim, std::size_t degree,
                                        std::vector<GeneratorData> generators,
                                        std::vector<CriticalPoint> crit_points,
                                        std::vector<ManifoldFlow> flows, bool self_indexing = false,
                                        std::size_t cap = default_group_cap());

    [[nodiscard]] std::size_t ambient_dim() const { return ambient_dim_; }
    [[nodiscard]] bool self_indexing() const { return self_indexing_; }
    [[nodiscard]] const FiniteGroup& group() const { return point_action_.group(); }
    [[nodiscard]] const GroupPtr& group_ptr() const { return point_action_.group_ptr(); }
    [[nodiscard]] const std::vector<GeneratorData>& generators() const { return generators_; }
    [[nodiscard]] const std::vector<CriticalPoint>& crit_points() const { return crit_points_; }
    [[nodiscard]] const std::vector<ManifoldFlow>& flows() const { return flows_; }
    [[nodiscard]] const GroupAction& point_action() const { return point_action_; }
    [[nodiscard]] const GroupAction& flow_action() const { return flow_action_; }
    /// τ(g, p) for group element index g.
    [[nodiscard]] int tau(std::size_t g, std::size_t p) const { return tau_[g * crit_points_.size() + p]; }

    /// Manifold complex: generators are the critical points, ∂p = Σ ε(γ) dst(γ).
    [[nodiscard]] GradedComplex manifold_complex() const;
    /// max(ambient_dim, largest index).
    [[nodiscard]] std::size_t top_degree() const;

    friend bool operator==(const EquivariantMorseSystem& a, const EquivariantMorseSystem& b) {
        return a.ambient_dim_ == b.ambient_dim_ && a.self_indexing_ == b.self_indexing_ &&
               a.group().degree() == b.group().degree() && a.generators_ == b.generators_ &&
               a.crit_points_ == b.crit_points_ && a.flows_ == b.flows_;
    }

private:
    EquivariantMorseSystem(std::size_t ambient_dim, bool self_indexing, std::vector<GeneratorData> generators,
                           std::vector<CriticalPoint> crit_points, std::vector<ManifoldFlow> flows,
                           GroupAction point_action, GroupAction flow_action, std::vector<int> tau);

    friend EquivariantMorseSystem regauge(const EquivariantMorseSystem&, const std::vector<int>&);

    std::size_t ambient_dim_ = 0;
    bool self_indexing_ = false;
    std::vector<GeneratorData> generators_;
    std::vector<CriticalPoint> crit_points_;
    std::vector<ManifoldFlow> flows_;
    GroupAction point_action_;
    GroupAction flow_action_;
    std::vector<int> tau_;  // |G| × |crit_points|, row-major by element
};

struct LawWitness {
    std::optional<std::size_t> element;
    std::optional<std::size_t> point;
    std::optional<std::size_t> flow;
    std::string detail;
};

struct LawCheck {
    std::string law;
    bool ok = true;
    std::optional<LawWitness> witness;
};

struct ValidationReport {
    std::vector<LawCheck> laws;
    [[nodiscard]] bool ok() const;
    /// First failed law, if any.
    [[nodiscard]] const LawCheck* first_failure() const;
};

/// Checks, in order: point_action, flow_action, cocycle, index_invariance,
/// flow_index, endpoint_equivariance, sign_equivariance, manifold_d_squared,
/// value_invariance, and self_indexing when the system asks for it.
ValidationReport validate_system(const EquivariantMorseSystem& s);

struct CriticalOrbit {
    std::vector<std::size_t> members;  // sorted; members[0] is the representative
    std::size_t index = 0;
    std::uint64_t iso_order = 1;
    bool orientable = true;
    /// |{g ∈ G_p : τ(g, p) = −1}| at the representative; 0 or iso_order / 2.
    std::uint64_t reversing = 0;
};

/// One entry per critical-point orbit, ordered by representative.
std::vector<CriticalOrbit> classify(const EquivariantMorseSystem& s);

/// Orientation change by σ(p) ∈ {±1}: τ'(g,p) = σ(g·p) τ(g,p) σ(p) and
/// ε'(γ) = σ(src γ) σ(dst γ) ε(γ).
EquivariantMorseSystem regauge(const EquivariantMorseSystem& s, const std::vector<int>& sigma);

/// The gauge σ(g·rep) = τ(g, rep), applied per orbit. Afterwards τ ≡ +1 on
/// every orientable orbit and τ(g, rep) = +1 along the chosen transporters.
/// Throws GaugeFailure if an orientable orbit is left with τ ≠ +1.
EquivariantMorseSystem normalize_gauge(const EquivariantMorseSystem& s);

/// Boundary of the invariant subcomplex in the basis [p̄] = Σ_{p ∈ p̄} p of
/// orientable orbits. Throws CancellationFailure if some ∂[p̄] has a nonzero
/// coefficient at a non-orientable point, InvarianceFailure if it is not
/// constant along an orbit.
GradedComplex invariant_boundary(const EquivariantMorseSystem& s);

/// Intrinsic system of the quotient. Every critical orbit becomes a point,
/// labelled by its representative, in classify() order; flow orbits between
/// orientable orbits become flows with the stabilizer order and normalized
/// sign of their least member. Throws SignNotOrbitConstant or
/// DivisibilityViolation on inconsistent input.
OrbifoldMorseSystem derive_intrinsic(const EquivariantMorseSystem& s);

/// ω(p̄, q̄, r̄) in the normalized gauge, for orbit positions in classify()
/// order. Evaluated at every member q of q̄ and checked to agree; checked to
/// vanish when q̄ is non-orientable and to equal the intrinsic weighted pair
/// sum otherwise. Throws IndexMismatch or NotOrientable on bad arguments.
Rational broken_weight(const EquivariantMorseSystem& s, std::size_t p, std::size_t q, std::size_t r);

struct BrokenWeightRow {
    std::size_t p;
    std::size_t q;
    std::size_t r;
    bool q_orientable;
    Rational weight;
};

/// broken_weight over every admissible triple, ordered by (p, r, q).
std::vector<BrokenWeightRow> broken_weight_table(const EquivariantMorseSystem& s);

}  // namespace orbimorse
