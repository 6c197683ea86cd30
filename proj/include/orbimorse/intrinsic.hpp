#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbimorse/chaincx.hpp"
#include "orbimorse/error.hpp"
#include "orbimorse/rational.hpp"

namespace orbimorse {

/// Critical point of the orbifold function: Morse index, order of the local
/// group, and whether that group preserves the unstable orientation.
struct OrbifoldCriticalPoint {
    std::string label;
    std::size_t index = 0;
    std::uint64_t iso_order = 1;
    bool orientable = true;

    friend bool operator==(const OrbifoldCriticalPoint&, const OrbifoldCriticalPoint&) = default;
};

/// Gradient line in the orbit space between two orientable critical points.
struct OrbifoldFlow {
    std::string label;
    std::size_t src = 0;
    std::size_t dst = 0;
    std::uint64_t iso_order = 1;
    int sign = 1;

    friend bool operator==(const OrbifoldFlow&, const OrbifoldFlow&) = default;
};

struct OrbifoldMorseSystem {
    std::size_t ambient_dim = 0;
    std::vector<OrbifoldCriticalPoint> crit_points;
    std::vector<OrbifoldFlow> flows;

    friend bool operator==(const OrbifoldMorseSystem&, const OrbifoldMorseSystem&) = default;
};

enum class Convention {
    Plus,   // n(p̄,q̄) = Σ ε |G_q̄| / |G_γ̄|
    Minus,  // underlined boundary: Σ ε |G_p̄| / |G_γ̄|
};

std::string_view to_string(Convention c);

struct SystemIssue {
    ErrorCode code;
    std::string law;
    std::string witness;
};

/// Every structural violation (ranges, index drop, divisibility, flows
/// touching non-orientable points, duplicate labels). Empty when valid.
std::vector<SystemIssue> validate_intrinsic(const OrbifoldMorseSystem& s);

/// Position of each orientable critical point inside its degree; nullopt for
/// non-orientable points, which never become generators.
std::vector<std::optional<std::size_t>> generator_positions(const OrbifoldMorseSystem& s);

/// Top degree of the complex: max(ambient_dim, largest index).
std::size_t top_degree(const OrbifoldMorseSystem& s);

/// Weighted count of gradient lines from p̄ to q̄ under the convention.
Rational incidence(const OrbifoldMorseSystem& s, std::size_t p, std::size_t q, Convention c);

GradedComplex boundary_complex(const OrbifoldMorseSystem& s, Convention c);
inline GradedComplex boundary_plus(const OrbifoldMorseSystem& s) { return boundary_complex(s, Convention::Plus); }
inline GradedComplex boundary_minus(const OrbifoldMorseSystem& s) { return boundary_complex(s, Convention::Minus); }

/// ψ: p̄ ↦ |G_p̄| p̄, from the underlined complex to the plus complex.
ChainMap psi(const OrbifoldMorseSystem& s);

struct DSquaredReport {
    struct Witness {
        Convention convention;
        std::string source;  // p̄
        std::string target;  // r̄
        Rational value;
    };
    bool ok = true;
    std::optional<Witness> witness;
};

/// Both ∂₊² = 0 and underlined ∂² = 0; reports the first (p̄, r̄) that fails.
DSquaredReport verify_d_squared(const OrbifoldMorseSystem& s);

/// The system for −f̄ on an n-dimensional orbifold: index k ↦ n − k, flows
/// reversed, local group orders and signs kept verbatim.
OrbifoldMorseSystem reverse(const OrbifoldMorseSystem& s, std::size_t n);

/// Diagonal of the chain-level pairing: 1/|G_p̄| for the plus convention,
/// |G_p̄| for the underlined one.
std::vector<Rational> pairing_form(const OrbifoldMorseSystem& s, Convention c);

struct PairingReport {
    struct Failure {
        Convention convention;
        std::string source;
        std::string target;
        Rational lhs;
        Rational rhs;
    };
    bool ok = true;
    std::size_t pairs_checked = 0;
    std::vector<Failure> failures;
};

/// ⟨∂p̄, q̄⟩ = ⟨p̄, ∂'q̄⟩ where ∂' is the boundary of reverse(s, n), for every
/// pair of orientable points one index apart, in both conventions. The plus
/// convention is also checked against Σ ε/|G_γ̄| computed from the flows.
PairingReport pairing_check(const OrbifoldMorseSystem& s, std::size_t n);

/// Σ over pairs of flow lines p̄ → q̄ → r̄ of ν_q̄(γ̄) ν_q̄(δ̄) / |G_q̄|, where
/// ν_q̄(γ̄) = ε(γ̄) |G_q̄| / |G_γ̄|.
Rational weighted_pair_sum(const OrbifoldMorseSystem& s, std::size_t p, std::size_t q, std::size_t r);

}  // namespace orbimorse
