#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbimorse/intrinsic.hpp"
#include "orbimorse/quotient.hpp"
#include "orbimorse/simplicial.hpp"

namespace orbimorse {

enum class InstanceKind { GlobalQuotient, Intrinsic, Simplicial, Comparison };

std::string_view to_string(InstanceKind kind);

/// Outcomes the instance author asserts; checked by `corpus run`.
struct Expectations {
    std::optional<std::vector<std::size_t>> betti;
    std::optional<std::vector<std::size_t>> quotient_betti;
    std::optional<bool> valid;

    friend bool operator==(const Expectations&, const Expectations&) = default;
};

/// Triangulation as authored: vertex labels, simplices by label (faces are
/// closed automatically), an optional subcomplex, and vertex permutations.
struct Triangulation {
    std::vector<std::string> vertices;
    std::vector<std::vector<std::string>> simplices;
    std::optional<std::vector<std::vector<std::string>>> subcomplex;
    std::vector<Permutation> generators;

    friend bool operator==(const Triangulation&, const Triangulation&) = default;

    [[nodiscard]] SimplicialComplex complex() const;
    [[nodiscard]] std::optional<SimplicialComplex> sub() const;
    /// Throws ActionNotSimplicial, MalformedPermutation or ClosureExceedsCap.
    [[nodiscard]] GSimplicialComplex g_complex() const;
};

struct Instance {
    InstanceKind kind = InstanceKind::Intrinsic;
    std::string name;
    std::string description;
    Expectations expect;
    std::optional<EquivariantMorseSystem> global;    // global_quotient, comparison
    std::optional<OrbifoldMorseSystem> intrinsic;    // intrinsic
    std::optional<Triangulation> triangulation;      // simplicial, comparison

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws ParseError (with line and column for malformed JSON, with the JSON
/// path and label for schema problems); structural errors from building the
/// systems propagate with their own codes.
Instance parse_instance(std::string_view text);
/// Throws IoError if the file cannot be read.
Instance load_instance(const std::filesystem::path& path);

/// Canonical JSON text: two-space indentation, arrays of scalars on one line,
/// trailing newline.
std::string serialize(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace orbimorse
