#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orbimorse/rational.hpp"

namespace orbimorse {

/// Exact rational matrix, stored column-sparse (boundary operators are very
/// sparse). Columns keep their entries sorted by row with no explicit zeros.
class RationalMatrix {
public:
    struct Entry {
        std::size_t row;
        Rational value;
    };
    using Column = std::vector<Entry>;

    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(const std::vector<Rational>& d);
    /// Row-major dense input; mostly for tests.
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows,
                                    std::size_t cols_if_empty = 0);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return columns_.size(); }
    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& v);
    void add(std::size_t r, std::size_t c, const Rational& v);
    [[nodiscard]] const Column& column(std::size_t c) const { return columns_.at(c); }
    void set_column(std::size_t c, Column col);

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] std::size_t nonzeros() const;
    [[nodiscard]] RationalMatrix transpose() const;
    [[nodiscard]] RationalMatrix scaled(const Rational& s) const;
    /// First nonzero entry in column-major order, if any.
    [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

/// Rank by fraction-free sparse Gaussian elimination. Columns are scaled to
/// primitive integer vectors; at each leading row the pivot is the candidate
/// of smallest magnitude (lowest column on ties).
std::size_t rank(const RationalMatrix& m);

/// Basis of the right null space, via dense reduced row echelon form. Meant
/// for small matrices and for debugging; the basis has no stability contract.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

/// Stable text grid, one row per line, entries right-aligned.
std::string to_grid(const RationalMatrix& m);

/// Chain complex C_0 … C_n over Q. boundary[k] maps C_k → C_{k−1}; boundary[0]
/// is the 0 × dim C_0 map.
struct GradedComplex {
    std::vector<std::vector<std::string>> labels;
    std::vector<RationalMatrix> boundary;

    [[nodiscard]] std::size_t max_degree() const { return labels.empty() ? 0 : labels.size() - 1; }
    [[nodiscard]] std::size_t dim(std::size_t k) const { return k < labels.size() ? labels[k].size() : 0; }

    /// Complex with the given generators and all-zero boundaries.
    static GradedComplex zero(std::vector<std::vector<std::string>> labels);
};

/// Throws ShapeMismatch unless every boundary[k] is dim(k−1) × dim(k).
void check_shapes(const GradedComplex& c);

struct MatrixWitness {
    std::size_t degree;  // the offending composite starts in this degree
    std::size_t row;
    std::size_t col;
    Rational value;
};

struct CheckResult {
    bool ok = true;
    std::optional<MatrixWitness> witness;
};

/// ∂_{k−1} ∘ ∂_k = 0 for all k. Witness: (k, row in C_{k−2}, col in C_k, value).
CheckResult verify_complex(const GradedComplex& c);

/// b_k = dim ker ∂_k − rank ∂_{k+1}. Throws NotAComplex if ∂∘∂ ≠ 0.
std::vector<std::size_t> betti(const GradedComplex& c);

/// Reversed grading with transposed boundaries: C'_j = C_{n−j}.
GradedComplex opposite(const GradedComplex& c);

/// Apply a permutation to the generators of each degree (perm[k][i] is the new
/// position of old generator i).
GradedComplex permute_basis(const GradedComplex& c, const std::vector<std::vector<std::size_t>>& perm);

struct ChainMap {
    GradedComplex source;
    GradedComplex target;
    std::vector<RationalMatrix> maps;  // maps[k]: source C_k → target C_k
};

/// target.∂_k ∘ f_k = f_{k−1} ∘ source.∂_k for all k. Witness degree is k.
CheckResult verify_chain_map(const ChainMap& f);

ChainMap identity_map(const GradedComplex& c);

}  // namespace orbimorse
