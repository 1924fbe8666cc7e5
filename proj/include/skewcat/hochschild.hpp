#pragma once

/**
 * Truncated Hochschild-Mitchell chain complexes.
 *
 * A degree-n chain basis element is a cyclic tuple (f_n, ..., f_1, f_0)
 * of basis morphisms with f_i : x_i → x_{i+1} and x_{n+1} = x_0. Tuples
 * are stored as f_0, ..., f_n and enumerated lexicographically by the
 * objects (x_0, ..., x_n) and then by the local basis indices.
 *
 * The boundary is
 *   d = Σ_{i<n} (-1)^{n-1-i} (contract f_{i+1} f_i) + (-1)^n (f_0 f_n ⊗ f_{n-1} ⊗ ... ⊗ f_1),
 * which for n = 2 reads f_2f_1⊗f_0 − f_2⊗f_1f_0 + f_0f_2⊗f_1.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "skewcat/constructions.hpp"
#include "skewcat/error.hpp"
#include "skewcat/group.hpp"
#include "skewcat/lincat.hpp"
#include "skewcat/linalg.hpp"
#include "skewcat/parallel.hpp"

namespace skewcat {

struct Budget {
    std::size_t max_tuples = 200000;
};

/// Fixed-length words over [0, radix) numbered by a hash table.
class WordIndex {
  public:
    WordIndex() = default;
    WordIndex(std::uint64_t radix, std::size_t length) : radix_(std::max<std::uint64_t>(radix, 1))
    {
        std::uint64_t cap = 1;
        for (std::size_t i = 0; i < length; ++i) {
            if (cap > std::numeric_limits<std::uint64_t>::max() / radix_)
                throw BudgetExceeded("basis words too long to index");
            cap *= radix_;
        }
    }

    std::uint64_t code(std::span<const std::uint32_t> w) const
    {
        std::uint64_t c = 0;
        for (auto x : w) c = c * radix_ + x;
        return c;
    }
    void add(std::span<const std::uint32_t> w, std::size_t id) { map_.emplace(code(w), static_cast<std::uint32_t>(id)); }
    std::optional<std::size_t> find(std::span<const std::uint32_t> w) const
    {
        auto it = map_.find(code(w));
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

  private:
    std::uint64_t radix_ = 1;
    std::unordered_map<std::uint64_t, std::uint32_t> map_;
};

/// Words of equal length stored back to back, with a reverse index.
struct WordBasis {
    std::size_t width = 0;
    std::vector<std::uint32_t> flat;
    WordIndex index;

    std::size_t size() const noexcept { return width == 0 ? 0 : flat.size() / width; }
    std::span<const std::uint32_t> word(std::size_t k) const { return {flat.data() + k * width, width}; }
    std::optional<std::size_t> find(std::span<const std::uint32_t> w) const { return index.find(w); }
    void push(std::span<const std::uint32_t> w)
    {
        index.add(w, size());
        flat.insert(flat.end(), w.begin(), w.end());
    }
};

namespace detail {

/// Σ over walks x_0 → ... → x_len of Π dim hom, saturating. closed = walk returns to x_0.
template <Field F>
std::uint64_t count_walks(const LinCat<F>& c, std::size_t len, bool closed)
{
    const std::size_t n = c.num_objects();
    constexpr std::uint64_t cap = std::uint64_t(1) << 62;
    auto sat_mul = [](std::uint64_t a, std::uint64_t b) { return (a != 0 && b > cap / a) ? cap : a * b; };
    std::uint64_t total = 0;
    for (std::size_t x0 = 0; x0 < n; ++x0) {
        std::vector<std::uint64_t> cur(n, 0);
        cur[x0] = 1;
        for (std::size_t step = 0; step < len; ++step) {
            std::vector<std::uint64_t> nxt(n, 0);
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) nxt[y] = std::min(cap, nxt[y] + sat_mul(cur[x], c.hom(x, y).size()));
            cur = std::move(nxt);
        }
        if (closed) {
            total = std::min(cap, total + cur[x0]);
        } else {
            for (auto v : cur) total = std::min(cap, total + v);
        }
    }
    return total;
}

/// Calls visit(word) for each tuple in Π factors, expanding sparse vectors;
/// coefficient passed alongside. `factors[i]` fills position i.
template <class K, class Visit>
void expand_tensor(const std::vector<const SparseVec<K>*>& factors, const K& one, Visit&& visit)
{
    const std::size_t len = factors.size();
    for (auto* f : factors)
        if (f->empty()) return;
    std::vector<std::uint32_t> word(len);
    std::vector<std::size_t> pos(len, 0);
    while (true) {
        K c = one;
        for (std::size_t i = 0; i < len; ++i) {
            const auto& e = (*factors[i])[pos[i]];
            word[i] = static_cast<std::uint32_t>(e.index);
            c = c * e.value;
        }
        visit(std::span<const std::uint32_t>(word), c);
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++pos[i] < factors[i]->size()) break;
            pos[i] = 0;
            if (i == 0) return;
        }
        if (len == 0) return;
    }
}

} // namespace detail

/// Degree-n chain basis.
template <Field F>
WordBasis chain_basis(const LinCat<F>& c, std::size_t n, const Budget& budget = {})
{
    const std::uint64_t expected = detail::count_walks(c, n + 1, true);
    if (expected > budget.max_tuples)
        throw BudgetExceeded("chain degree " + std::to_string(n) + " needs " + std::to_string(expected) +
                             " tuples (budget " + std::to_string(budget.max_tuples) + ")");
    WordBasis b{n + 1, {}, WordIndex(c.num_morphisms(), n + 1)};
    b.flat.reserve(expected * (n + 1));
    std::vector<std::size_t> objs(n + 1);
    std::vector<std::uint32_t> word(n + 1);
    const std::size_t no = c.num_objects();

    std::function<void(std::size_t)> morphs = [&](std::size_t i) {
        if (i == n + 1) {
            b.push(word);
            return;
        }
        const std::size_t to = i == n ? objs[0] : objs[i + 1];
        for (std::size_t f : c.hom(objs[i], to)) {
            word[i] = static_cast<std::uint32_t>(f);
            morphs(i + 1);
        }
    };
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n + 1) {
            if (!c.hom(objs[n], objs[0]).empty()) morphs(0);
            return;
        }
        for (std::size_t x = 0; x < no; ++x) {
            if (i > 0 && c.hom(objs[i - 1], x).empty()) continue;
            objs[i] = x;
            walk(i + 1);
        }
    };
    walk(0);
    return b;
}

/// "f_n⊗...⊗f_0" for witnesses.
template <Field F>
std::string format_chain(const LinCat<F>& c, std::span<const std::uint32_t> w)
{
    std::string s;
    for (std::size_t i = w.size(); i-- > 0;) {
        s += c.name(w[i]);
        if (i) s += "⊗";
    }
    return s;
}

/// Dimensions and differentials of a finite slice of a complex.
/// Chains: map[n] : C_n → C_{n-1} (map[0] has no rows).
/// Cochains: map[n] : C^n → C^{n+1}.
template <class K>
struct Complex {
    bool cochain = false;
    std::vector<std::size_t> dim;
    std::vector<Matrix<K>> map;
};

/// dim H_n (or H^n) for n = 0..top, where the slice must reach top+1.
template <class K>
std::vector<std::size_t> homology_dims(const Complex<K>& cx, std::size_t top)
{
    std::vector<std::size_t> ranks(cx.map.size());
    parallel_for(cx.map.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ranks[i] = rank(cx.map[i]);
    });
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= top; ++n) {
        std::size_t h = cx.dim.at(n);
        if (!cx.cochain) {
            h -= ranks.at(n);
            h -= ranks.at(n + 1);
        } else {
            h -= ranks.at(n);
            if (n > 0) h -= ranks.at(n - 1);
        }
        out.push_back(h);
    }
    return out;
}

/// Degree of the first failure of map∘map = 0, or nullopt.
template <class K>
std::optional<std::size_t> first_nonzero_square(const Complex<K>& cx)
{
    for (std::size_t n = 0; n + 1 < cx.map.size(); ++n) {
        const auto& a = cx.map[n];
        const auto& b = cx.map[n + 1];
        if (!cx.cochain) {
            if (a.cols() != b.rows()) throw InternalCheckFailed("chain maps do not compose");
            if (!(a * b).is_zero()) return n + 1;
        } else {
            if (b.cols() != a.rows()) throw InternalCheckFailed("cochain maps do not compose");
            if (!(b * a).is_zero()) return n;
        }
    }
    return std::nullopt;
}

template <Field F>
struct ChainComplex {
    using K = typename F::element_type;
    std::vector<WordBasis> basis; // degrees 0..top+1
    Complex<K> cx;
};

namespace detail {

/// Columns of d_n on C_n → C_{n-1}.
template <Field F>
Matrix<typename F::element_type> chain_boundary(const LinCat<F>& c, const WordBasis& cn, const WordBasis& cm)
{
    using K = typename F::element_type;
    const std::size_t n = cn.width - 1;
    const K one = c.field().one();
    std::vector<SparseVec<K>> cols(cn.size());
    parallel_for(cn.size(), [&](std::size_t b, std::size_t e) {
        std::vector<std::uint32_t> w(n);
        for (std::size_t k = b; k < e; ++k) {
            auto t = cn.word(k);
            SparseVec<K>& col = cols[k];
            auto emit = [&](std::size_t slot, const SparseVec<K>& comp, const K& sign) {
                for (const auto& x : comp) {
                    w[slot] = static_cast<std::uint32_t>(x.index);
                    auto idx = cm.find(w);
                    if (!idx) throw InternalCheckFailed("boundary left the chain basis");
                    col.push_back({*idx, sign * x.value});
                }
            };
            for (std::size_t i = 0; i < n; ++i) {
                const K sign = ((n - 1 - i) % 2 == 0) ? one : -one;
                for (std::size_t j = 0; j < i; ++j) w[j] = t[j];
                for (std::size_t j = i + 1; j < n; ++j) w[j] = t[j + 1];
                emit(i, c.composite(t[i + 1], t[i]), sign);
            }
            const K sign = (n % 2 == 0) ? one : -one;
            for (std::size_t j = 0; j + 1 < n; ++j) w[j] = t[j + 1];
            emit(n - 1, c.composite(t[0], t[n]), sign);
            normalize(col);
        }
    });
    return Matrix<K>::from_columns(cm.size(), std::move(cols));
}

} // namespace detail

/// Bases in degrees 0..top+1, boundaries d_1..d_{top+1}; d∘d = 0 is asserted.
template <Field F>
ChainComplex<F> build_chain_complex(const LinCat<F>& c, std::size_t top, const Budget& budget = {})
{
    ChainComplex<F> out;
    for (std::size_t n = 0; n <= top + 1; ++n) out.basis.push_back(chain_basis(c, n, budget));
    out.cx.cochain = false;
    for (auto& b : out.basis) out.cx.dim.push_back(b.size());
    out.cx.map.emplace_back(0, out.basis[0].size());
    for (std::size_t n = 1; n <= top + 1; ++n)
        out.cx.map.push_back(detail::chain_boundary(c, out.basis[n], out.basis[n - 1]));
    if (auto bad = first_nonzero_square(out.cx))
        throw InternalCheckFailed("d∘d != 0 on chains at degree " + std::to_string(*bad));
    return out;
}

/// Indices (per degree) of chain tuples whose degree product s_n⋯s_1s_0 lies in the class.
template <Field F>
std::vector<std::vector<std::size_t>> chain_class_indices(const GradedLinCat<F>& b, const ChainComplex<F>& cc,
                                                          const ConjClass& d)
{
    const FinGroup& g = b.group;
    std::vector<char> in(g.order(), 0);
    for (auto x : d.members) in[x] = 1;
    std::vector<std::vector<std::size_t>> out;
    for (const auto& basis : cc.basis) {
        out.emplace_back();
        for (std::size_t k = 0; k < basis.size(); ++k) {
            auto w = basis.word(k);
            std::size_t p = g.identity();
            for (std::size_t i = w.size(); i-- > 0;) p = g.mul(p, b.degree[w[i]]);
            if (in[p]) out.back().push_back(k);
        }
    }
    return out;
}

/// Restriction of a complex to index subsets. Throws LeakError when a
/// differential maps a kept basis element outside the kept set.
template <class K>
Complex<K> restrict_complex(const Complex<K>& cx, const std::vector<std::vector<std::size_t>>& keep,
                            const std::string& what = "class")
{
    Complex<K> out{cx.cochain, {}, {}};
    for (const auto& k : keep) out.dim.push_back(k.size());
    for (std::size_t n = 0; n < cx.map.size(); ++n) {
        const std::size_t src = n, dst = cx.cochain ? n + 1 : (n == 0 ? 0 : n - 1);
        const auto& m = cx.map[n];
        if (!cx.cochain && n == 0) {
            out.map.emplace_back(0, keep[0].size());
            continue;
        }
        std::vector<char> kept(m.rows(), 0);
        for (auto r : keep.at(dst)) kept[r] = 1;
        for (auto col : keep.at(src))
            for (const auto& e : m.column(col))
                if (!kept[e.index])
                    throw LeakError(what + " filter: differential from degree " + std::to_string(n) + " maps basis " +
                                    std::to_string(col) + " to excluded basis " + std::to_string(e.index));
        out.map.push_back(m.select_columns(keep[src]).select_rows(keep[dst]));
    }
    return out;
}

/// Matrices of s acting on C_n, s·(f_n⊗...⊗f_0) = sf_n⊗...⊗sf_0; [s][n].
template <Field F>
std::vector<std::vector<Matrix<typename F::element_type>>> chain_g_action(const LinCat<F>& c, const GActionOnCat<F>& a,
                                                                         const ChainComplex<F>& cc)
{
    using K = typename F::element_type;
    std::vector<std::vector<Matrix<K>>> out(a.group.order());
    for (std::size_t s = 0; s < a.group.order(); ++s)
        for (const auto& basis : cc.basis) {
            std::vector<SparseVec<K>> cols(basis.size());
            parallel_for(basis.size(), [&](std::size_t b, std::size_t e) {
                std::vector<const SparseVec<K>*> fac(basis.width);
                for (std::size_t k = b; k < e; ++k) {
                    auto w = basis.word(k);
                    for (std::size_t i = 0; i < w.size(); ++i) fac[i] = &a.mor[s][w[i]];
                    detail::expand_tensor(fac, c.field().one(), [&](std::span<const std::uint32_t> t, const K& coef) {
                        auto idx = basis.find(t);
                        if (!idx) throw InternalCheckFailed("group action left the chain basis");
                        cols[k].push_back({*idx, coef});
                    });
                    normalize(cols[k]);
                }
            });
            out[s].push_back(Matrix<K>::from_columns(basis.size(), std::move(cols)));
        }
    return out;
}

/// Columns s·b − b (s ≠ 1, b a basis vector) in degree n.
template <Field F>
Matrix<typename F::element_type> coinvariant_relations(const F& field,
                                                      const std::vector<std::vector<Matrix<typename F::element_type>>>& act,
                                                      std::size_t n, std::size_t identity)
{
    using K = typename F::element_type;
    const std::size_t dim = act.at(0).at(n).rows();
    std::vector<SparseVec<K>> cols;
    for (std::size_t s = 0; s < act.size(); ++s) {
        if (s == identity) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            SparseVec<K> v = act[s][n].column(j);
            v.push_back({j, -field.one()});
            normalize(v);
            cols.push_back(std::move(v));
        }
    }
    return Matrix<K>::from_columns(dim, std::move(cols));
}

/// C_G = C / ⟨s·b − b⟩ presented on the complement of the pivot positions
/// of the relation span; the induced boundary is read off normal forms.
template <class K>
struct QuotientComplex {
    std::vector<Matrix<K>> relations;
    std::vector<std::vector<std::size_t>> basis; // surviving positions per degree
    Complex<K> cx;
};

template <Field F>
QuotientComplex<typename F::element_type> coinvariants_complex(
    const F& field, const Complex<typename F::element_type>& cx,
    const std::vector<std::vector<Matrix<typename F::element_type>>>& act, std::size_t identity)
{
    using K = typename F::element_type;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    QuotientComplex<K> out;
    out.cx.cochain = false;
    std::vector<Echelon<K>> ech;
    std::vector<std::vector<std::size_t>> pos;
    for (std::size_t n = 0; n < cx.dim.size(); ++n) {
        out.relations.push_back(coinvariant_relations(field, act, n, identity));
        ech.emplace_back(cx.dim[n]);
        for (const auto& col : out.relations.back().columns()) ech.back().insert(col);
        out.basis.emplace_back();
        pos.emplace_back(cx.dim[n], none);
        for (std::size_t i = 0; i < cx.dim[n]; ++i)
            if (!ech.back().is_pivot(i)) {
                pos.back()[i] = out.basis.back().size();
                out.basis.back().push_back(i);
            }
        out.cx.dim.push_back(out.basis.back().size());
    }
    out.cx.map.emplace_back(0, out.cx.dim[0]);
    for (std::size_t n = 1; n < cx.map.size(); ++n) {
        const auto& d = cx.map[n];
        for (const auto& r : out.relations[n].columns())
            if (!ech[n - 1].reduce(d.apply(r)).empty())
                throw InternalCheckFailed("boundary does not preserve the coinvariant relations in degree " +
                                          std::to_string(n));
        std::vector<SparseVec<K>> cols;
        for (std::size_t i : out.basis[n]) {
            SparseVec<K> v;
            for (const auto& e : ech[n - 1].reduce(d.column(i))) v.push_back({pos[n - 1][e.index], e.value});
            cols.push_back(std::move(v));
        }
        out.cx.map.push_back(Matrix<K>::from_columns(out.cx.dim[n - 1], std::move(cols)));
    }
    return out;
}

/// C_n(F): f_n⊗...⊗f_0 ↦ F f_n⊗...⊗F f_0, per degree.
template <Field F>
std::vector<Matrix<typename F::element_type>> chain_pushforward(const LinCat<F>& c, const LinFunctor<F>& fn,
                                                               const ChainComplex<F>& from, const ChainComplex<F>& to)
{
    using K = typename F::element_type;
    std::vector<Matrix<K>> out;
    for (std::size_t n = 0; n < from.basis.size() && n < to.basis.size(); ++n) {
        const auto& src = from.basis[n];
        std::vector<SparseVec<K>> cols(src.size());
        parallel_for(src.size(), [&](std::size_t b, std::size_t e) {
            std::vector<const SparseVec<K>*> fac(src.width);
            for (std::size_t k = b; k < e; ++k) {
                auto w = src.word(k);
                for (std::size_t i = 0; i < w.size(); ++i) fac[i] = &fn.mor_map[w[i]];
                detail::expand_tensor(fac, c.field().one(), [&](std::span<const std::uint32_t> t, const K& coef) {
                    auto idx = to.basis[n].find(t);
                    if (!idx) throw InternalCheckFailed("functor image left the chain basis");
                    cols[k].push_back({*idx, coef});
                });
                normalize(cols[k]);
            }
        });
        out.push_back(Matrix<K>::from_columns(to.basis[n].size(), std::move(cols)));
    }
    return out;
}

/// Outcome of one asserted identity.
struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};

/// Index of the first column where a and b differ, if any.
template <class K>
std::optional<std::size_t> first_differing_column(const Matrix<K>& a, const Matrix<K>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::size_t{0};
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (a.column(j) != b.column(j)) return j;
    return std::nullopt;
}

/// Chain maps A : C_•(C)_G → C^{1}_•(C_T[G]) and B back, as matrices on
/// the full chain bases (A on C_n(C), B on the class-{1} sub-basis).
template <Field F>
struct ChainIso {
    using K = typename F::element_type;
    std::vector<Matrix<K>> A, B;
    std::vector<Check> checks;
    std::vector<std::size_t> coinvariant_dims;  // dim H_n(C_•(C)_G)
    std::vector<std::size_t> trivial_class_dims; // dim HH_n^{1}(C_T[G])

    bool ok() const
    {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

template <Field F>
ChainIso<F> transversal_chain_iso(const LinCat<F>& c, const GActionOnCat<F>& a, const Transversal& t, std::size_t top,
                                  const Budget& budget = {})
{
    using K = typename F::element_type;
    using Vec = SparseVec<K>;
    if (!t.free) throw NonFreeAction("transversal chain isomorphism needs a free action on objects");
    const FinGroup& g = a.group;
    const K one = c.field().one();
    const auto sk = skew(c, a);
    const auto sub = transversal_subcategory(c, a, sk, t);
    const auto ccC = build_chain_complex(c, top, budget);
    const auto ccT = build_chain_complex(sub.cat.cat, top, budget);
    const auto cls = conjugacy_classes(g);
    const auto keep = chain_class_indices(sub.cat, ccT, cls[0]);
    const auto cx1 = restrict_complex(ccT.cx, keep);
    const auto act = chain_g_action(c, a, ccC);
    const auto coinv = coinvariants_complex(c.field(), ccC.cx, act, g.identity());

    ChainIso<F> out;
    out.coinvariant_dims = homology_dims(coinv.cx, top);
    out.trivial_class_dims = homology_dims(cx1, top);

    // C-morphism m of hom(r·u_i, u_{i+1}) as the sub morphism [m]^r
    auto sub_id = [&](std::size_t m, std::size_t r) {
        const std::size_t j = sub.from_skew[sk.id(m, r)];
        if (j == TransversalSub<F>::npos) throw InternalCheckFailed("A left the transversal subcategory");
        return j;
    };

    for (std::size_t n = 0; n <= top + 1; ++n) {
        const auto& bc = ccC.basis[n];
        const auto& bt = ccT.basis[n];
        std::vector<std::size_t> row_of(bt.size(), TransversalSub<F>::npos);
        for (std::size_t r = 0; r < keep[n].size(); ++r) row_of[keep[n][r]] = r;

        std::vector<Vec> acols(bc.size());
        parallel_for(bc.size(), [&](std::size_t b, std::size_t e) {
            std::vector<const Vec*> fac(n + 1);
            std::vector<Vec> factors(n + 1);
            std::vector<const Vec*> inner(n + 1);
            for (std::size_t k = b; k < e; ++k) {
                auto w = bc.word(k);
                const std::size_t s = g.inv(t.witness[c.morphism(w[0]).src]);
                for (std::size_t i = 0; i <= n; ++i) fac[i] = &a.mor[s][w[i]];
                detail::expand_tensor(fac, one, [&](std::span<const std::uint32_t> tw, const K& coef) {
                    // x_i = s_i·u_i; factor i becomes [s_{i+1}⁻¹ f_i]^{s_{i+1}⁻¹ s_i}
                    for (std::size_t i = 0; i <= n; ++i) {
                        const std::size_t si = t.witness[c.morphism(tw[i]).src];
                        const std::size_t snext = i == n ? g.identity() : t.witness[c.morphism(tw[i]).tgt];
                        const std::size_t r = g.mul(g.inv(snext), si);
                        factors[i].clear();
                        for (const auto& x : a.mor[g.inv(snext)][tw[i]]) factors[i].push_back({sub_id(x.index, r), x.value});
                        inner[i] = &factors[i];
                    }
                    detail::expand_tensor(inner, coef, [&](std::span<const std::uint32_t> sw, const K& c2) {
                        auto idx = bt.find(sw);
                        if (!idx || row_of[*idx] == TransversalSub<F>::npos)
                            throw InternalCheckFailed("A left the trivial-class chains");
                        acols[k].push_back({row_of[*idx], c2});
                    });
                });
                normalize(acols[k]);
            }
        });
        out.A.push_back(Matrix<K>::from_columns(keep[n].size(), std::move(acols)));

        std::vector<Vec> bcols(keep[n].size());
        parallel_for(keep[n].size(), [&](std::size_t b, std::size_t e) {
            std::vector<const Vec*> fac(n + 1);
            for (std::size_t k = b; k < e; ++k) {
                auto w = bt.word(keep[n][k]);
                // factor i is (t_n ⋯ t_{i+1})·c_i
                std::size_t r = g.identity();
                for (std::size_t i = n + 1; i-- > 0;) {
                    const auto [ci, ti] = sk.origin[sub.to_skew[w[i]]];
                    fac[i] = &a.mor[r][ci];
                    r = g.mul(r, ti);
                }
                detail::expand_tensor(fac, one, [&](std::span<const std::uint32_t> cw, const K& coef) {
                    auto idx = bc.find(cw);
                    if (!idx) throw InternalCheckFailed("B left the chain basis");
                    bcols[k].push_back({*idx, coef});
                });
                normalize(bcols[k]);
            }
        });
        out.B.push_back(Matrix<K>::from_columns(bc.size(), std::move(bcols)));
    }

    auto describe = [&](std::size_t n, std::size_t col) { return format_chain(c, ccC.basis[n].word(col)); };
    for (std::size_t n = 0; n <= top + 1; ++n) {
        const auto& A = out.A[n];
        Check inv{"A(s·b) = A(b), degree " + std::to_string(n), true, {}};
        for (std::size_t s = 0; s < g.order() && inv.pass; ++s)
            if (auto j = first_differing_column(Matrix<K>(A * act[s][n]), A)) {
                inv.pass = false;
                inv.witness = "s=" + g.name(s) + ", b=" + describe(n, *j);
            }
        out.checks.push_back(inv);

        if (n >= 1) {
            Check chain{"A∘d = d∘A, degree " + std::to_string(n), true, {}};
            if (auto j = first_differing_column(Matrix<K>(out.A[n - 1] * ccC.cx.map[n]), Matrix<K>(cx1.map[n] * A))) {
                chain.pass = false;
                chain.witness = describe(n, *j);
            }
            out.checks.push_back(chain);
        }

        Check ab{"A∘B = id, degree " + std::to_string(n), true, {}};
        if (auto j = first_differing_column(Matrix<K>(A * out.B[n]), Matrix<K>::identity(keep[n].size(), one))) {
            ab.pass = false;
            ab.witness = format_chain(sub.cat.cat, ccT.basis[n].word(keep[n][*j]));
        }
        out.checks.push_back(ab);

        Check ba{"B∘A = id on coinvariants, degree " + std::to_string(n), true, {}};
        const Matrix<K> diff = out.B[n] * A - Matrix<K>::identity(A.cols(), one);
        Echelon<K> rel(A.cols());
        for (const auto& col : coinv.relations[n].columns()) rel.insert(col);
        for (std::size_t j = 0; j < diff.cols(); ++j)
            if (!rel.contains(diff.column(j))) {
                ba.pass = false;
                ba.witness = describe(n, j);
                break;
            }
        out.checks.push_back(ba);
    }
    Check dims{"dim H_n(C_G) = dim HH_n^{1}(C_T[G])", true, {}};
    for (std::size_t n = 0; n <= top; ++n)
        if (out.coinvariant_dims[n] != out.trivial_class_dims[n]) {
            dims.pass = false;
            dims.witness = "degree " + std::to_string(n) + ": " + std::to_string(out.coinvariant_dims[n]) + " vs " +
                           std::to_string(out.trivial_class_dims[n]);
            break;
        }
    out.checks.push_back(dims);
    return out;
}

} // namespace skewcat
