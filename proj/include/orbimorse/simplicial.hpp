#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbimorse/chaincx.hpp"
#include "orbimorse/groups.hpp"
#include "orbimorse/quotient.hpp"

namespace orbimorse {

/// Sorted vertex indices.
using Simplex = std::vector<std::uint32_t>;

/// Finite abstract simplicial complex. Simplices are listed per dimension in
/// lexicographic order and the family is closed under taking faces.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Face closure of the given simplices (any vertex order, duplicates
    /// allowed). With all_vertices every vertex is a 0-simplex; without it
    /// only vertices of listed simplices are, which is how subcomplexes share
    /// the ambient vertex set. Throws UnknownPoint or ShapeMismatch.
    static SimplicialComplex from_simplices(std::vector<std::string> vertices, std::vector<Simplex> simplices,
                                            bool all_vertices = true);

    [[nodiscard]] const std::vector<std::string>& vertices() const { return vertices_; }
    [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
    /// −1 for the empty complex.
    [[nodiscard]] int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    [[nodiscard]] std::size_t count(std::size_t k) const { return k < by_dim_.size() ? by_dim_[k].size() : 0; }
    [[nodiscard]] const std::vector<Simplex>& simplices(std::size_t k) const;
    /// Position of the simplex inside its dimension.
    [[nodiscard]] std::optional<std::size_t> position(const Simplex& s) const;
    [[nodiscard]] bool contains(const Simplex& s) const { return lookup_.count(s) != 0; }
    /// Simplices not contained in any larger simplex.
    [[nodiscard]] std::vector<Simplex> maximal_simplices() const;
    [[nodiscard]] std::string label(const Simplex& s) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertices_ == b.vertices_ && a.by_dim_ == b.by_dim_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::map<Simplex, std::size_t> lookup_;
};

/// Simplicial complex with a group acting on its vertices by simplicial maps.
class GSimplicialComplex {
public:
    /// Throws ActionNotSimplicial if some generator maps a simplex to a
    /// non-simplex, ShapeMismatch if the action is on the wrong point count.
    static GSimplicialComplex make(SimplicialComplex complex, GroupAction vertex_action);
    /// Group generated by vertex permutations, acting naturally.
    static GSimplicialComplex from_generators(SimplicialComplex complex, std::vector<Permutation> generators,
                                              std::size_t cap = default_group_cap());

    [[nodiscard]] const SimplicialComplex& complex() const { return complex_; }
    [[nodiscard]] const GroupAction& action() const { return action_; }
    [[nodiscard]] const FiniteGroup& group() const { return action_.group(); }
    /// g·σ as a sorted simplex.
    [[nodiscard]] Simplex image(std::size_t g, const Simplex& s) const;

private:
    GSimplicialComplex(SimplicialComplex complex, GroupAction action)
        : complex_(std::move(complex)), action_(std::move(action)) {}

    SimplicialComplex complex_;
    GroupAction action_;
};

/// New vertices are the simplices of K in (dimension, lexicographic) order;
/// new simplices are chains σ₀ ⊂ … ⊂ σ_k.
SimplicialComplex barycentric_subdivide(const SimplicialComplex& k);
/// Subdivides K and a subcomplex L on the same vertex set compatibly.
std::pair<SimplicialComplex, SimplicialComplex> barycentric_subdivide(const SimplicialComplex& k,
                                                                      const SimplicialComplex& l);
/// The action extends to barycenters by g·b(σ) = b(g·σ).
GSimplicialComplex barycentric_subdivide(const GSimplicialComplex& k);

/// Every g fixing a simplex setwise fixes it vertex-wise.
bool is_regular(const GSimplicialComplex& k);

/// True when the vertex orbits span a simplicial complex isomorphic to the
/// orbit space of K: no simplex has two vertices in one orbit and distinct
/// simplex orbits have distinct sets of vertex orbits.
bool quotient_is_simplicial(const GSimplicialComplex& k);

struct Regularized {
    GSimplicialComplex complex;
    std::optional<SimplicialComplex> sub;
    std::size_t subdivisions = 0;
};

/// Subdivides (at most twice) until the action is regular and the quotient is
/// simplicial; L, when given, is subdivided alongside.
Regularized regularize(const GSimplicialComplex& k, const std::optional<SimplicialComplex>& l = std::nullopt);

struct QuotientComplex {
    SimplicialComplex complex;           // vertices are vertex orbits, labelled by least member
    std::vector<std::uint32_t> vertex_orbit;  // vertex of K -> vertex of K/G
    /// Per dimension, the least simplex of K in each simplex orbit.
    std::vector<std::vector<Simplex>> representatives;
};

/// K/G. Throws NotRegular unless is_regular(k) and quotient_is_simplicial(k).
QuotientComplex quotient(const GSimplicialComplex& k);
/// K/G together with L/G on the same vertex set. Throws NotASubcomplex unless
/// L is a G-invariant subcomplex of K.
std::pair<QuotientComplex, SimplicialComplex> quotient(const GSimplicialComplex& k, const SimplicialComplex& l);

/// Throws NotASubcomplex unless L is a subcomplex of K on the same vertex set
/// that every group element maps into itself.
void require_invariant_subcomplex(const GSimplicialComplex& k, const SimplicialComplex& l);

/// Simplicial chain complex of (K, L): generators are simplices of K not in L,
/// oriented by increasing vertex index. Throws NotASubcomplex.
GradedComplex chain_complex(const SimplicialComplex& k, const std::optional<SimplicialComplex>& l = std::nullopt);

std::vector<std::size_t> homology(const SimplicialComplex& k,
                                  const std::optional<SimplicialComplex>& l = std::nullopt);

/// dim H_*(K, L)^G: each g acts on chains by oriented simplex images; with the
/// averaging projector P, dim H_k^G = rank P_k − rank ∂_k P_k − rank ∂_{k+1} P_{k+1}.
/// Throws NotASubcomplex unless L is a G-invariant subcomplex.
std::vector<std::size_t> invariant_homology(const GSimplicialComplex& k,
                                            const std::optional<SimplicialComplex>& l = std::nullopt);

struct Comparison {
    std::vector<std::size_t> morse;
    std::vector<std::size_t> simplicial;
    std::size_t subdivisions = 0;
    bool equal = false;
};

/// Betti numbers of the invariant Morse complex against those of the
/// regularized simplicial quotient, compared after padding with zeros.
Comparison compare(const EquivariantMorseSystem& g, const GSimplicialComplex& k);

/// Pads both vectors with zeros to a common length.
bool same_betti(std::vector<std::size_t> a, std::vector<std::size_t> b);

}  // namespace orbimorse
