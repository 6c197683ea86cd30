#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "orbimorse/rational.hpp"

namespace orbimorse {

/// 0-based image array: perm[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

bool is_permutation(std::span<const std::uint32_t> images);
Permutation identity_permutation(std::size_t degree);
/// (a ∘ b)(x) = a(b(x)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
/// +1 for even, -1 for odd.
int parity(std::span<const std::uint32_t> images);

/// Closure cap used when none is given; ORBIMORSE_GROUP_CAP overrides the
/// built-in 10080.
std::size_t default_group_cap();

/// A finite permutation group stored by its full element list. Element 0 is
/// the identity. Every non-identity element remembers how it was reached
/// (element = generator ∘ parent), which lets actions be defined on
/// generators and extended along words.
class FiniteGroup {
public:
    struct Word {
        std::size_t generator;  // position in generators()
        std::size_t parent;     // element index
    };

    /// Breadth-first closure from the identity, each layer appended in
    /// lexicographic order. Generators are kept exactly as given (duplicates
    /// and the identity included) so per-generator data stays aligned.
    static FiniteGroup generate(std::size_t degree, std::vector<Permutation> generators,
                                std::size_t cap = default_group_cap());

    static FiniteGroup trivial(std::size_t degree) { return generate(degree, {}); }

    [[nodiscard]] std::size_t degree() const { return degree_; }
    [[nodiscard]] std::size_t size() const { return elements_.size(); }
    [[nodiscard]] const Permutation& element(std::size_t i) const { return elements_.at(i); }
    [[nodiscard]] const std::vector<Permutation>& elements() const { return elements_; }
    [[nodiscard]] const std::vector<Permutation>& generators() const { return generators_; }
    /// Element index of generator k.
    [[nodiscard]] std::size_t generator_element(std::size_t k) const { return generator_index_.at(k); }
    [[nodiscard]] const Word& word(std::size_t i) const { return words_.at(i); }

    [[nodiscard]] std::optional<std::size_t> index_of(const Permutation& p) const;
    [[nodiscard]] bool contains(const Permutation& p) const { return index_of(p).has_value(); }
    /// Index of element(a) ∘ element(b).
    [[nodiscard]] std::size_t multiply(std::size_t a, std::size_t b) const;
    [[nodiscard]] std::size_t inverse_of(std::size_t a) const;

    /// Subgroup over the same degree from an explicit element list that is
    /// known to be closed (identity first). Used for stabilizers.
    static FiniteGroup from_closed_subset(std::size_t degree, std::vector<Permutation> elements);

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.degree_ == b.degree_ && a.elements_ == b.elements_;
    }

private:
    FiniteGroup() = default;
    void build_lookup();

    std::size_t degree_ = 0;
    std::vector<Permutation> generators_;
    std::vector<std::size_t> generator_index_;
    std::vector<Permutation> elements_;
    std::vector<Word> words_;
    std::map<Permutation, std::size_t> lookup_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Action of a FiniteGroup on the points {0, …, n−1}, stored as a full
/// (element × point) image table.
class GroupAction {
public:
    /// The defining action on {0, …, degree−1}.
    static GroupAction natural(GroupPtr group);
    /// Extends per-generator images along the group's words. The result is a
    /// genuine action only if the images respect the group relations; see
    /// homomorphism_defect().
    static GroupAction from_generator_images(GroupPtr group, std::size_t points,
                                             const std::vector<Permutation>& generator_images);
    static GroupAction from_table(GroupPtr group, std::size_t points,
                                  std::vector<std::uint32_t> table);

    [[nodiscard]] const FiniteGroup& group() const { return *group_; }
    [[nodiscard]] const GroupPtr& group_ptr() const { return group_; }
    [[nodiscard]] std::size_t points() const { return points_; }
    [[nodiscard]] std::uint32_t image(std::size_t g, std::size_t x) const {
        return table_[g * points_ + x];
    }
    [[nodiscard]] const std::vector<std::uint32_t>& table() const { return table_; }
    /// Image array of generator k, as supplied (or read off the table).
    [[nodiscard]] const Permutation& generator_image(std::size_t k) const { return generator_images_.at(k); }

    struct Defect {
        std::size_t generator_element;
        std::size_t element;
        std::size_t point;
    };
    /// First (s, h, x) with image(s∘h, x) ≠ s(image(h, x)) where s ranges over
    /// the generators with their supplied images, or an identity/permutation
    /// failure (reported with s = h = 0). Generators against all h suffice
    /// for the full law.
    [[nodiscard]] std::optional<Defect> homomorphism_defect() const;

    [[nodiscard]] std::vector<std::size_t> stabilizer_elements(std::size_t x) const;
    /// Some g with g·x = y.
    [[nodiscard]] std::optional<std::size_t> transporter(std::size_t x, std::size_t y) const;
    [[nodiscard]] std::vector<std::size_t> orbit_of(std::size_t x) const;

private:
    GroupAction(GroupPtr group, std::size_t points, std::vector<std::uint32_t> table,
                std::vector<Permutation> generator_images = {});

    GroupPtr group_;
    std::size_t points_ = 0;
    std::vector<std::uint32_t> table_;
    std::vector<Permutation> generator_images_;
};

FiniteGroup generate_group(std::size_t degree, std::vector<Permutation> generators,
                           std::size_t cap = default_group_cap());

/// {g : g·x = x} as a FiniteGroup over the acting group's degree.
FiniteGroup stabilizer(const GroupAction& action, std::size_t x);

/// Orbits with sorted members, listed by least member.
std::vector<std::vector<std::size_t>> orbits(const GroupAction& action);

/// Weights λ on the points, required constant on each orbit.
struct WeightedSet {
    std::vector<Rational> weight;
};

/// Σ over orbits of λ, evaluated once directly over orbits and once as
/// (1/|G|) Σ_x λ_x |G_x|; the two are checked for equality before returning.
Rational weighted_orbit_count(const GroupAction& action, const WeightedSet& weights);

}  // namespace orbimorse
