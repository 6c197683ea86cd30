#include "orbimorse/chaincx.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "orbimorse/error.hpp"

namespace orbimorse {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw Error(ErrorCode::ShapeMismatch, what);
}

// Sparse primitive integer vector, sorted by index.
using IntVec = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(IntVec& v) {
    Integer g = 0;
    for (const auto& [i, x] : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& [i, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntVec to_integer_vector(const RationalMatrix::Column& col) {
    Integer lcm = 1;
    for (const auto& e : col) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.value.get_den_mpz_t());
    IntVec v;
    v.reserve(col.size());
    for (const auto& e : col) {
        Integer x = e.value.get_num() * (lcm / e.value.get_den());
        v.emplace_back(e.row, std::move(x));
    }
    make_primitive(v);
    return v;
}

// a·v − b·w; the leading entries cancel by construction of the caller.
IntVec combine(const Integer& a, const IntVec& v, const Integer& b, const IntVec& w) {
    IntVec out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.emplace_back(v[i].first, a * v[i].second);
            ++i;
        } else if (i == v.size() || w[j].first < v[i].first) {
            out.emplace_back(w[j].first, -b * w[j].second);
            ++j;
        } else {
            Integer x = a * v[i].second - b * w[j].second;
            if (x != 0) out.emplace_back(v[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

}  // namespace

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({i, Rational(1)});
    return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& d) {
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) m.columns_[i].push_back({i, d[i]});
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows,
                                         std::size_t cols_if_empty) {
    const auto cols = rows.empty() ? cols_if_empty : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == cols, "ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c] != 0) m.columns_[c].push_back({r, rows[r][c]});
    }
    return m;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const {
    require(r < rows_ && c < cols(), "index out of range");
    const auto& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.row < row; });
    if (it != col.end() && it->row == r) return it->value;
    return 0;
}

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
    require(r < rows_ && c < cols(), "index out of range");
    auto& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.row < row; });
    if (it != col.end() && it->row == r) {
        if (v == 0)
            col.erase(it);
        else
            it->value = v;
    } else if (v != 0) {
        col.insert(it, Entry{r, v});
    }
}

void RationalMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
    if (v == 0) return;
    set(r, c, at(r, c) + v);
}

void RationalMatrix::set_column(std::size_t c, Column col) {
    require(c < cols(), "column out of range");
    std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    std::erase_if(col, [](const Entry& e) { return e.value == 0; });
    for (const auto& e : col) require(e.row < rows_, "row out of range");
    columns_[c] = std::move(col);
}

bool RationalMatrix::is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
}

std::size_t RationalMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols(), rows_);
    for (std::size_t c = 0; c < cols(); ++c)
        for (const auto& e : columns_[c]) t.columns_[e.row].push_back({c, e.value});
    return t;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
    if (s == 0) return RationalMatrix(rows_, cols());
    RationalMatrix m = *this;
    for (auto& col : m.columns_)
        for (auto& e : col) e.value *= s;
    return m;
}

std::optional<std::pair<std::size_t, std::size_t>> RationalMatrix::first_nonzero() const {
    for (std::size_t c = 0; c < cols(); ++c)
        if (!columns_[c].empty()) return std::make_pair(columns_[c].front().row, c);
    return std::nullopt;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    require(a.cols() == b.rows(), "product of incompatible shapes");
    RationalMatrix out(a.rows(), b.cols());
    std::vector<Rational> acc(a.rows());
    std::vector<bool> touched(a.rows(), false);
    std::vector<std::size_t> rows_touched;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        rows_touched.clear();
        for (const auto& eb : b.columns_[j]) {
            for (const auto& ea : a.columns_[eb.row]) {
                if (!touched[ea.row]) {
                    touched[ea.row] = true;
                    rows_touched.push_back(ea.row);
                    acc[ea.row] = 0;
                }
                acc[ea.row] += ea.value * eb.value;
            }
        }
        std::sort(rows_touched.begin(), rows_touched.end());
        auto& col = out.columns_[j];
        for (auto r : rows_touched) {
            touched[r] = false;
            if (acc[r] != 0) col.push_back({r, acc[r]});
        }
    }
    return out;
}

namespace {
RationalMatrix merge(const RationalMatrix& a, const RationalMatrix& b, int sign) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "sum of incompatible shapes");
    RationalMatrix out(a.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        RationalMatrix::Column col;
        const auto& x = a.column(c);
        const auto& y = b.column(c);
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].row < y[j].row)) {
                col.push_back(x[i++]);
            } else if (i == x.size() || y[j].row < x[i].row) {
                col.push_back({y[j].row, sign * y[j].value});
                ++j;
            } else {
                Rational v = x[i].value + sign * y[j].value;
                if (v != 0) col.push_back({x[i].row, v});
                ++i;
                ++j;
            }
        }
        out.set_column(c, std::move(col));
    }
    return out;
}
}  // namespace

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) { return merge(a, b, 1); }
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) { return merge(a, b, -1); }

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        const auto& x = a.columns_[c];
        const auto& y = b.columns_[c];
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].row != y[i].row || x[i].value != y[i].value) return false;
    }
    return true;
}

std::size_t rank(const RationalMatrix& m) {
    // Buckets keyed by leading row; each holds (original column, vector).
    std::map<std::size_t, std::vector<std::pair<std::size_t, IntVec>>> buckets;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m.column(c).empty()) continue;
        auto v = to_integer_vector(m.column(c));
        const auto lead = v.front().first;
        buckets[lead].emplace_back(c, std::move(v));
    }
    std::size_t r = 0;
    while (!buckets.empty()) {
        auto node = buckets.extract(buckets.begin());
        auto& list = node.mapped();
        std::size_t best = 0;
        for (std::size_t i = 1; i < list.size(); ++i) {
            const int cmp = mpz_cmpabs(list[i].second.front().second.get_mpz_t(),
                                       list[best].second.front().second.get_mpz_t());
            if (cmp < 0 || (cmp == 0 && list[i].first < list[best].first)) best = i;
        }
        ++r;
        const auto& pivot = list[best].second;
        const Integer& p = pivot.front().second;
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i == best) continue;
            const Integer& a = list[i].second.front().second;
            auto reduced = combine(p, list[i].second, a, pivot);
            if (reduced.empty()) continue;
            const auto lead = reduced.front().first;
            buckets[lead].emplace_back(list[i].first, std::move(reduced));
        }
    }
    return r;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
    const auto rows = m.rows();
    const auto cols = m.cols();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& e : m.column(c)) a[e.row][c] = e.value;

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string to_grid(const RationalMatrix& m) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols(), "0"));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& e : m.column(c)) cells[e.row][c] = to_string(e.value);
    std::size_t width = 1;
    for (const auto& row : cells)
        for (const auto& s : row) width = std::max(width, s.size());
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ' ';
            os << std::string(width - row[c].size(), ' ') << row[c];
        }
        os << '\n';
    }
    return os.str();
}

GradedComplex GradedComplex::zero(std::vector<std::vector<std::string>> labels) {
    GradedComplex c;
    if (labels.empty()) labels.emplace_back();
    c.labels = std::move(labels);
    c.boundary.emplace_back(0, c.labels[0].size());
    for (std::size_t k = 1; k < c.labels.size(); ++k)
        c.boundary.emplace_back(c.labels[k - 1].size(), c.labels[k].size());
    return c;
}

void check_shapes(const GradedComplex& c) {
    require(!c.labels.empty(), "complex needs at least degree 0");
    require(c.boundary.size() == c.labels.size(), "one boundary matrix per degree required");
    require(c.boundary[0].rows() == 0 && c.boundary[0].cols() == c.dim(0), "boundary[0] shape");
    for (std::size_t k = 1; k < c.labels.size(); ++k)
        require(c.boundary[k].rows() == c.dim(k - 1) && c.boundary[k].cols() == c.dim(k),
                "boundary[" + std::to_string(k) + "] has shape " +
                    std::to_string(c.boundary[k].rows()) + "x" + std::to_string(c.boundary[k].cols()) +
                    ", expected " + std::to_string(c.dim(k - 1)) + "x" + std::to_string(c.dim(k)));
}

CheckResult verify_complex(const GradedComplex& c) {
    check_shapes(c);
    for (std::size_t k = 2; k < c.labels.size(); ++k) {
        const auto dd = c.boundary[k - 1] * c.boundary[k];
        if (auto nz = dd.first_nonzero()) {
            const auto [row, col] = *nz;
            return {false, MatrixWitness{k, row, col, dd.at(row, col)}};
        }
    }
    return {};
}

std::vector<std::size_t> betti(const GradedComplex& c) {
    const auto check = verify_complex(c);
    if (!check.ok) {
        const auto& w = *check.witness;
        throw Error(ErrorCode::NotAComplex, "boundary squared is nonzero in degree " +
                                                std::to_string(w.degree) + " (value " +
                                                to_string(w.value) + ")");
    }
    const auto n = c.max_degree();
    std::vector<std::size_t> ranks(n + 2, 0);
    for (std::size_t k = 1; k <= n; ++k) ranks[k] = rank(c.boundary[k]);
    std::vector<std::size_t> b(n + 1);
    long euler_cells = 0, euler_betti = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        b[k] = c.dim(k) - ranks[k] - ranks[k + 1];
        const long sign = (k % 2 == 0) ? 1 : -1;
        euler_cells += sign * static_cast<long>(c.dim(k));
        euler_betti += sign * static_cast<long>(b[k]);
    }
    if (euler_cells != euler_betti)
        throw Error(ErrorCode::InternalError, "Euler characteristic mismatch");
    return b;
}

GradedComplex opposite(const GradedComplex& c) {
    check_shapes(c);
    const auto n = c.max_degree();
    GradedComplex o;
    for (std::size_t j = 0; j <= n; ++j) o.labels.push_back(c.labels[n - j]);
    o.boundary.emplace_back(0, o.dim(0));
    // ∂'_j : C_{n−j} → C_{n−j+1} is the transpose of ∂_{n−j+1}.
    for (std::size_t j = 1; j <= n; ++j) o.boundary.push_back(c.boundary[n - j + 1].transpose());
    return o;
}

GradedComplex permute_basis(const GradedComplex& c, const std::vector<std::vector<std::size_t>>& perm) {
    check_shapes(c);
    require(perm.size() == c.labels.size(), "one permutation per degree");
    GradedComplex out;
    for (std::size_t k = 0; k < c.labels.size(); ++k) {
        require(perm[k].size() == c.dim(k), "permutation size mismatch");
        std::vector<std::string> labels(c.dim(k));
        for (std::size_t i = 0; i < c.dim(k); ++i) labels[perm[k][i]] = c.labels[k][i];
        out.labels.push_back(std::move(labels));
    }
    out.boundary.emplace_back(0, out.dim(0));
    for (std::size_t k = 1; k < c.labels.size(); ++k) {
        RationalMatrix m(c.dim(k - 1), c.dim(k));
        for (std::size_t col = 0; col < c.dim(k); ++col)
            for (const auto& e : c.boundary[k].column(col)) m.set(perm[k - 1][e.row], perm[k][col], e.value);
        out.boundary.push_back(std::move(m));
    }
    return out;
}

CheckResult verify_chain_map(const ChainMap& f) {
    check_shapes(f.source);
    check_shapes(f.target);
    const auto n = f.source.max_degree();
    require(f.target.max_degree() == n && f.maps.size() == n + 1, "chain map degree mismatch");
    for (std::size_t k = 0; k <= n; ++k)
        require(f.maps[k].rows() == f.target.dim(k) && f.maps[k].cols() == f.source.dim(k),
                "chain map component " + std::to_string(k) + " has wrong shape");
    for (std::size_t k = 1; k <= n; ++k) {
        const auto diff = f.target.boundary[k] * f.maps[k] - f.maps[k - 1] * f.source.boundary[k];
        if (auto nz = diff.first_nonzero()) {
            const auto [row, col] = *nz;
            return {false, MatrixWitness{k, row, col, diff.at(row, col)}};
        }
    }
    return {};
}

ChainMap identity_map(const GradedComplex& c) {
    ChainMap f{c, c, {}};
    for (std::size_t k = 0; k <= c.max_degree(); ++k) f.maps.push_back(RationalMatrix::identity(c.dim(k)));
    return f;
}

}  // namespace orbimorse
