#pragma once

/**
 * Sparse vectors, sparse column matrices and exact elimination.
 *
 * A Matrix keeps its columns as sorted sparse vectors. Rank and kernels
 * are computed by inserting vectors one at a time into an echelon basis;
 * each insertion reduces a dense accumulator left to right against the
 * stored pivots, which are indexed by their leading position. Pivoting is
 * therefore deterministic: the first nonzero position in index order.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "skewcat/error.hpp"
#include "skewcat/field.hpp"

namespace skewcat {

template <class K>
struct Entry {
    std::size_t index;
    K value;
    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by index, no explicit zeros.
template <class K>
using SparseVec = std::vector<Entry<K>>;

/// Sorts, merges duplicates and drops zeros.
template <class K>
void normalize(SparseVec<K>& v)
{
    std::stable_sort(v.begin(), v.end(), [](const Entry<K>& a, const Entry<K>& b) { return a.index < b.index; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        K acc = v[i].value;
        for (++j; j < v.size() && v[j].index == v[i].index; ++j) acc += v[j].value;
        if (!acc.is_zero()) v[out++] = Entry<K>{v[i].index, acc};
        i = j;
    }
    v.resize(out);
}

/// y += a·x
template <class K>
void axpy(const K& a, const SparseVec<K>& x, SparseVec<K>& y)
{
    if (a.is_zero() || x.empty()) return;
    SparseVec<K> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
            out.push_back({x[i].index, a * x[i].value});
            ++i;
        } else if (i == x.size() || y[j].index < x[i].index) {
            out.push_back(y[j]);
            ++j;
        } else {
            K s = y[j].value + a * x[i].value;
            if (!s.is_zero()) out.push_back({x[i].index, s});
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

template <class K>
SparseVec<K> scaled(const SparseVec<K>& x, const K& a)
{
    SparseVec<K> out;
    if (a.is_zero()) return out;
    out.reserve(x.size());
    for (const auto& e : x) out.push_back({e.index, e.value * a});
    return out;
}

template <class K>
K coefficient(const SparseVec<K>& v, std::size_t index)
{
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const Entry<K>& e, std::size_t i) { return e.index < i; });
    if (it != v.end() && it->index == index) return it->value;
    return K{};
}

template <class K>
struct Triplet {
    std::size_t row;
    std::size_t col;
    K value;
};

/// Sparse matrix stored by columns. Dimensions are fixed at construction.
template <class K>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(cols) {}

    static Matrix identity(std::size_t n, const K& one)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, one});
        return m;
    }

    static Matrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet<K>>& ts)
    {
        Matrix m(rows, cols);
        for (const auto& t : ts) {
            if (t.row >= rows || t.col >= cols) throw std::out_of_range("triplet outside matrix");
            m.data_[t.col].push_back({t.row, t.value});
        }
        for (auto& c : m.data_) normalize(c);
        return m;
    }

    static Matrix from_dense(const std::vector<std::vector<K>>& grid)
    {
        const std::size_t r = grid.size();
        const std::size_t c = r == 0 ? 0 : grid.front().size();
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (grid[i].size() != c) throw std::invalid_argument("ragged dense matrix");
            for (std::size_t j = 0; j < c; ++j)
                if (!grid[i][j].is_zero()) m.data_[j].push_back({i, grid[i][j]});
        }
        return m;
    }

    /// Columns given as sparse vectors of length `rows`.
    static Matrix from_columns(std::size_t rows, std::vector<SparseVec<K>> cols)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            normalize(cols[j]);
            if (!cols[j].empty() && cols[j].back().index >= rows) throw std::out_of_range("column entry outside matrix");
            m.data_[j] = std::move(cols[j]);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const SparseVec<K>& column(std::size_t j) const { return data_.at(j); }
    const std::vector<SparseVec<K>>& columns() const noexcept { return data_; }
    K at(std::size_t i, std::size_t j) const { return coefficient(data_.at(j), i); }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& c : data_) n += c.size();
        return n;
    }
    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const SparseVec<K>& c) { return c.empty(); });
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t j = 0; j < cols_; ++j)
            for (const auto& e : data_[j]) t.data_[e.index].push_back({j, e.value});
        return t;
    }

    /// Matrix times sparse vector.
    SparseVec<K> apply(const SparseVec<K>& x) const
    {
        SparseVec<K> y;
        for (const auto& e : x) {
            if (e.index >= cols_) throw std::out_of_range("vector longer than matrix");
            for (const auto& a : data_[e.index]) y.push_back({a.index, a.value * e.value});
        }
        normalize(y);
        return y;
    }

    Matrix select_columns(std::span<const std::size_t> which) const
    {
        Matrix m(rows_, which.size());
        for (std::size_t k = 0; k < which.size(); ++k) m.data_[k] = data_.at(which[k]);
        return m;
    }

    /// Keeps the listed rows, renumbered in list order. Entries in other rows are dropped.
    Matrix select_rows(std::span<const std::size_t> which) const
    {
        std::vector<std::size_t> pos(rows_, npos);
        for (std::size_t k = 0; k < which.size(); ++k) pos.at(which[k]) = k;
        Matrix m(which.size(), cols_);
        for (std::size_t j = 0; j < cols_; ++j) {
            for (const auto& e : data_[j])
                if (pos[e.index] != npos) m.data_[j].push_back({pos[e.index], e.value});
            normalize(m.data_[j]);
        }
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
        Matrix c(a.rows_, b.cols_);
        std::vector<K> acc(a.rows_);
        std::vector<char> hit(a.rows_, 0);
        std::vector<std::size_t> touched;
        for (std::size_t j = 0; j < b.cols_; ++j) {
            touched.clear();
            for (const auto& eb : b.data_[j]) {
                for (const auto& ea : a.data_[eb.index]) {
                    if (!hit[ea.index]) {
                        hit[ea.index] = 1;
                        touched.push_back(ea.index);
                        acc[ea.index] = ea.value * eb.value;
                    } else {
                        acc[ea.index] += ea.value * eb.value;
                    }
                }
            }
            std::sort(touched.begin(), touched.end());
            for (std::size_t i : touched) {
                if (!acc[i].is_zero()) c.data_[j].push_back({i, acc[i]});
                hit[i] = 0;
            }
        }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) { return combine(a, b, false); }
    friend Matrix operator-(const Matrix& a, const Matrix& b) { return combine(a, b, true); }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    static Matrix combine(const Matrix& a, const Matrix& b, bool subtract)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shapes differ");
        Matrix c = a;
        for (std::size_t j = 0; j < a.cols_; ++j) {
            for (const auto& e : b.data_[j]) c.data_[j].push_back({e.index, subtract ? -e.value : e.value});
            normalize(c.data_[j]);
        }
        return c;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVec<K>> data_;
};

/// Vertical concatenation [a; b].
template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b)
{
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column counts differ");
    std::vector<SparseVec<K>> cols(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        cols[j] = a.column(j);
        for (const auto& e : b.column(j)) cols[j].push_back({e.index + a.rows(), e.value});
    }
    return Matrix<K>::from_columns(a.rows() + b.rows(), std::move(cols));
}

/// Horizontal concatenation [a | b].
template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row counts differ");
    std::vector<SparseVec<K>> cols = a.columns();
    cols.insert(cols.end(), b.columns().begin(), b.columns().end());
    return Matrix<K>::from_columns(a.rows(), std::move(cols));
}

/// Incrementally built echelon basis of a subspace of K^length.
/// With tracking on, a dependent vector comes back with the relation
/// expressing it through the ids of earlier inserted vectors.
template <class K>
class Echelon {
  public:
    /// `one` is needed only for tracking.
    explicit Echelon(std::size_t length, std::optional<K> one = std::nullopt)
        : length_(length), one_(std::move(one)), pivot_of_(length, npos), acc_(length), hit_(length, 0)
    {
    }

    struct Outcome {
        bool independent = false;
        /// Tracking only: Σ c_i v_i = 0 with c_id = 1, over earlier ids.
        SparseVec<K> relation;
    };

    Outcome insert(const SparseVec<K>& v, std::size_t id = 0)
    {
        const bool track = one_.has_value();
        std::size_t start = length_;
        for (const auto& e : v) {
            if (e.index >= length_) throw std::out_of_range("vector longer than echelon space");
            put(e.index, e.value);
            start = std::min(start, e.index);
        }
        SparseVec<K> combo;
        if (track) combo.push_back({id, *one_});

        std::size_t lead = npos;
        for (std::size_t pos = start; pos < length_; ++pos) {
            if (!hit_[pos] || acc_[pos].is_zero()) continue;
            const std::size_t p = pivot_of_[pos];
            if (p == npos) {
                lead = pos;
                break;
            }
            const K c = acc_[pos];
            for (const auto& e : basis_[p]) put(e.index, -(c * e.value));
            if (track) axpy(-c, combos_[p], combo);
        }

        Outcome out;
        out.independent = lead != npos;
        if (out.independent) {
            const K inv = acc_[lead].inverse();
            std::sort(touched_.begin(), touched_.end());
            SparseVec<K> row;
            for (std::size_t i : touched_)
                if (i >= lead && !acc_[i].is_zero()) row.push_back({i, acc_[i] * inv});
            pivot_of_[lead] = basis_.size();
            basis_.push_back(std::move(row));
            if (track) combos_.push_back(scaled(combo, inv));
        } else if (track) {
            out.relation = std::move(combo);
        }
        for (std::size_t i : touched_) {
            hit_[i] = 0;
            acc_[i] = K{};
        }
        touched_.clear();
        return out;
    }

    std::size_t rank() const noexcept { return basis_.size(); }
    std::size_t length() const noexcept { return length_; }

    /// Whether v lies in the current span. Leaves the basis unchanged.
    bool contains(const SparseVec<K>& v)
    {
        std::size_t start = length_;
        for (const auto& e : v) {
            put(e.index, e.value);
            start = std::min(start, e.index);
        }
        bool inside = true;
        for (std::size_t pos = start; pos < length_; ++pos) {
            if (!hit_[pos] || acc_[pos].is_zero()) continue;
            const std::size_t p = pivot_of_[pos];
            if (p == npos) {
                inside = false;
                break;
            }
            const K c = acc_[pos];
            for (const auto& e : basis_[p]) put(e.index, -(c * e.value));
        }
        for (std::size_t i : touched_) {
            hit_[i] = 0;
            acc_[i] = K{};
        }
        touched_.clear();
        return inside;
    }

    /// Normal form of v modulo the span: the reduced vector vanishes at
    /// every pivot position.
    SparseVec<K> reduce(const SparseVec<K>& v)
    {
        std::size_t start = length_;
        for (const auto& e : v) {
            put(e.index, e.value);
            start = std::min(start, e.index);
        }
        for (std::size_t pos = start; pos < length_; ++pos) {
            if (!hit_[pos] || acc_[pos].is_zero()) continue;
            const std::size_t p = pivot_of_[pos];
            if (p == npos) continue;
            const K c = acc_[pos];
            for (const auto& e : basis_[p]) put(e.index, -(c * e.value));
        }
        std::sort(touched_.begin(), touched_.end());
        SparseVec<K> out;
        for (std::size_t i : touched_) {
            if (!acc_[i].is_zero()) out.push_back({i, acc_[i]});
            hit_[i] = 0;
            acc_[i] = K{};
        }
        touched_.clear();
        return out;
    }

    bool is_pivot(std::size_t pos) const { return pivot_of_.at(pos) != npos; }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void put(std::size_t i, const K& value)
    {
        if (!hit_[i]) {
            hit_[i] = 1;
            acc_[i] = value;
            touched_.push_back(i);
        } else {
            acc_[i] += value;
        }
    }

    std::size_t length_;
    std::optional<K> one_;
    std::vector<std::size_t> pivot_of_;
    std::vector<SparseVec<K>> basis_;
    std::vector<SparseVec<K>> combos_;
    std::vector<K> acc_;
    std::vector<char> hit_;
    std::vector<std::size_t> touched_;
};

/// Rank over the field. Eliminates along the shorter dimension.
template <class K>
std::size_t rank(const Matrix<K>& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.rows() <= m.cols()) {
        Echelon<K> e(m.rows());
        for (const auto& c : m.columns()) e.insert(c);
        return e.rank();
    }
    const Matrix<K> t = m.transpose();
    Echelon<K> e(t.rows());
    for (const auto& c : t.columns()) e.insert(c);
    return e.rank();
}

/// Basis of the right null space. Column j of `vectors` belongs to the
/// j-th non-pivot column `free_columns[j]` of the input: it has entry 1
/// there and is otherwise supported on pivot columns. Hence any kernel
/// vector v equals Σ_j v[free_columns[j]]·vectors.column(j).
template <class K>
struct KernelBasis {
    Matrix<K> vectors;
    std::vector<std::size_t> free_columns;

    std::size_t dim() const noexcept { return free_columns.size(); }

    /// Coordinates of a kernel vector in this basis (no membership check).
    SparseVec<K> coordinates(const SparseVec<K>& v) const
    {
        SparseVec<K> out;
        for (std::size_t j = 0; j < free_columns.size(); ++j) {
            K c = coefficient(v, free_columns[j]);
            if (!c.is_zero()) out.push_back({j, c});
        }
        return out;
    }
};

template <Field F>
KernelBasis<typename F::element_type> kernel_basis(const F& field, const Matrix<typename F::element_type>& m)
{
    using K = typename F::element_type;
    Echelon<K> e(m.rows(), field.one());
    std::vector<SparseVec<K>> vecs;
    KernelBasis<K> out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto r = e.insert(m.column(j), j);
        if (!r.independent) {
            vecs.push_back(std::move(r.relation));
            out.free_columns.push_back(j);
        }
    }
    out.vectors = Matrix<K>::from_columns(m.cols(), std::move(vecs));
    return out;
}

/// ambient − rank of the span of `sub`.
template <class K>
std::size_t quotient_dim(std::size_t ambient, std::span<const SparseVec<K>> sub)
{
    Echelon<K> e(ambient);
    for (const auto& v : sub) {
        if (!v.empty() && v.back().index >= ambient) throw std::invalid_argument("quotient_dim: vector length mismatch");
        e.insert(v);
    }
    return ambient - e.rank();
}

/// Whether every column of b lies in the column span of a.
template <class K>
bool columns_in_span(const Matrix<K>& a, const Matrix<K>& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("columns_in_span: row counts differ");
    Echelon<K> e(a.rows());
    for (const auto& c : a.columns()) e.insert(c);
    for (const auto& c : b.columns())
        if (!e.contains(c)) return false;
    return true;
}

/// Inverse of a square matrix; throws std::domain_error when singular.
template <Field F>
Matrix<typename F::element_type> inverse(const F& field, const Matrix<typename F::element_type>& m)
{
    using K = typename F::element_type;
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::domain_error("inverse of a non-square matrix");
    std::vector<std::vector<K>> a(n, std::vector<K>(2 * n, field.zero()));
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : m.column(j)) a[e.index][j] = e.value;
    for (std::size_t i = 0; i < n; ++i) a[i][n + i] = field.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[col]);
        const K inv = a[col][col].inverse();
        for (auto& x : a[col]) x = x * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const K f = a[r][col];
            for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    std::vector<std::vector<K>> right(n, std::vector<K>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) right[i][j] = a[i][n + j];
    return Matrix<K>::from_dense(right);
}

template <class K>
std::size_t rank_of_vectors(std::size_t length, std::span<const SparseVec<K>> vs)
{
    Echelon<K> e(length);
    for (const auto& v : vs) e.insert(v);
    return e.rank();
}

} // namespace skewcat
