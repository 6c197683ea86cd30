#include <doctest.h>

#include <random>

#include "orbimorse/chaincx.hpp"
#include "orbimorse/error.hpp"
#include "support.hpp"

using namespace orbimorse;

namespace {

/// Rank by plain dense elimination over Q, written independently of the
/// library's sparse fraction-free routine.
std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
    std::size_t r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

std::vector<std::vector<Rational>> random_dense(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (auto& row : a)
        for (auto& x : row)
            if (rng() % 3 != 0) {
                x = Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(1 + rng() % 4));
                x.canonicalize();
            }
    return a;
}

/// ∂₂ = (1), ∂₁ = (1) on one-dimensional spaces.
GradedComplex bad_complex() {
    GradedComplex c = GradedComplex::zero({{"r"}, {"q"}, {"p"}});
    c.boundary[1] = RationalMatrix::from_rows({{1}});
    c.boundary[2] = RationalMatrix::from_rows({{1}});
    return c;
}

/// Random three-term complex: ∂₂ is random and the rows of ∂₁ are random
/// combinations of vectors orthogonal to the image of ∂₂.
GradedComplex random_complex(std::mt19937_64& rng) {
    const std::size_t d0 = 1 + rng() % 4, d1 = 2 + rng() % 4, d2 = 1 + rng() % 3;
    auto b2 = random_dense(d1, d2, rng);
    const auto ker = kernel_basis(RationalMatrix::from_rows(b2).transpose());
    std::vector<std::vector<Rational>> b1(d0, std::vector<Rational>(d1));
    for (std::size_t i = 0; i < d0; ++i)
        for (const auto& v : ker) {
            const Rational s(static_cast<long>(rng() % 5) - 2);
            for (std::size_t j = 0; j < d1; ++j) b1[i][j] += s * v[j];
        }
    GradedComplex c;
    std::size_t k = 0;
    for (std::size_t d : {d0, d1, d2}) {
        std::vector<std::string> l;
        for (std::size_t i = 0; i < d; ++i) l.push_back("e" + std::to_string(k) + "_" + std::to_string(i));
        c.labels.push_back(l);
        ++k;
    }
    c.boundary = {RationalMatrix(0, d0), RationalMatrix::from_rows(b1, d1), RationalMatrix::from_rows(b2, d2)};
    return c;
}

}  // namespace

TEST_CASE("matrix basics") {
    const auto m = RationalMatrix::from_rows({{1, 0}, {Rational(1, 2), 3}});
    CHECK(m.at(1, 0) == Rational(1, 2));
    CHECK(m.nonzeros() == 3);
    CHECK(m.transpose().at(0, 1) == Rational(1, 2));
    CHECK(m * RationalMatrix::identity(2) == m);
    CHECK((m - m).is_zero());
    CHECK(to_grid(m) == "  1   0\n1/2   3\n");
}

TEST_CASE("all-zero boundaries form a complex") {
    const auto c = GradedComplex::zero({{"s"}, {}, {"p"}});
    CHECK(verify_complex(c).ok);
    CHECK(betti(c) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("nonzero square is witnessed") {
    const auto r = verify_complex(bad_complex());
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->degree == 2);
    CHECK(r.witness->value == 1);
    CHECK_THROWS_AS(betti(bad_complex()), Error);
}

TEST_CASE("shape mismatch is an error") {
    auto c = GradedComplex::zero({{"a"}, {"b"}});
    c.boundary[1] = RationalMatrix(2, 1);
    try {
        verify_complex(c);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
}

TEST_CASE("heart invariant complex and its naive variant") {
    CHECK(betti(GradedComplex::zero({{"s"}, {}, {"p+q"}})) == std::vector<std::size_t>{1, 0, 1});
    CHECK(betti(GradedComplex::zero({{"s"}, {"r"}, {"p"}})) == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("chain map checks") {
    std::mt19937_64 rng(11);
    const auto c = random_complex(rng);
    CHECK(verify_chain_map(identity_map(c)).ok);

    GradedComplex line = GradedComplex::zero({{"q"}, {"p"}});
    line.boundary[1] = RationalMatrix::from_rows({{1}});
    auto f = identity_map(line);
    f.maps[1] = RationalMatrix::from_rows({{2}});
    const auto r = verify_chain_map(f);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->degree == 1);
}

TEST_CASE("rank plus nullity equals the column count") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = rng() % 6, cols = 1 + rng() % 6;
        const auto a = random_dense(rows, cols, rng);
        const auto m = RationalMatrix::from_rows(a, cols);
        const auto r = rank(m);
        CHECK(r == dense_rank(a));
        const auto ker = kernel_basis(m);
        CHECK(r + ker.size() == cols);
        for (const auto& v : ker) {
            RationalMatrix col(cols, 1);
            for (std::size_t j = 0; j < cols; ++j) col.set(j, 0, v[j]);
            CHECK((m * col).is_zero());
        }
    }
}

TEST_CASE("betti is invariant under basis permutations and reversal") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_complex(rng);
        REQUIRE(verify_complex(c).ok);
        const auto b = betti(c);
        std::vector<std::vector<std::size_t>> perm;
        for (std::size_t k = 0; k <= c.max_degree(); ++k) {
            std::vector<std::size_t> p(c.dim(k));
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            perm.push_back(p);
        }
        CHECK(betti(permute_basis(c, perm)) == b);
        auto rb = betti(opposite(c));
        std::reverse(rb.begin(), rb.end());
        CHECK(rb == b);
    }
}
