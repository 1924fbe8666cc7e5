#pragma once

/**
 * Truncated Hochschild-Mitchell cochain complexes.
 *
 * An elementary cochain E(f_n, ..., f_1; h) sends the basis tensor
 * f_n⊗...⊗f_1 (f_i : x_i → x_{i+1}) to the basis morphism
 * h : x_1 → x_{n+1} and every other basis tensor to 0. It is stored as the
 * word (f_1, ..., f_n, h); in degree 0 the word is (h) with h ∈ end(x).
 *
 * Coboundary, with f_{n+1} the leftmost argument:
 *   dφ(f_{n+1}..f_1) = f_{n+1}φ(f_n..f_1) + Σ_{i=1}^n (-1)^{n+1-i} φ(..f_{i+1}f_i..)
 *                      + (-1)^{n+1} φ(f_{n+1}..f_2) f_1.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "skewcat/constructions.hpp"
#include "skewcat/error.hpp"
#include "skewcat/group.hpp"
#include "skewcat/hochschild.hpp"
#include "skewcat/lincat.hpp"
#include "skewcat/linalg.hpp"
#include "skewcat/parallel.hpp"

namespace skewcat {

namespace detail {

/// Σ over paths x_1 → ... → x_{n+1} of Π dim hom · dim hom(x_1, x_{n+1}).
template <Field F>
std::uint64_t count_cochains(const LinCat<F>& c, std::size_t n)
{
    const std::size_t no = c.num_objects();
    constexpr std::uint64_t cap = std::uint64_t(1) << 62;
    auto sat_mul = [](std::uint64_t a, std::uint64_t b) { return (a != 0 && b > cap / a) ? cap : a * b; };
    std::uint64_t total = 0;
    for (std::size_t x1 = 0; x1 < no; ++x1) {
        std::vector<std::uint64_t> cur(no, 0);
        cur[x1] = 1;
        for (std::size_t step = 0; step < n; ++step) {
            std::vector<std::uint64_t> nxt(no, 0);
            for (std::size_t x = 0; x < no; ++x)
                for (std::size_t y = 0; y < no; ++y) nxt[y] = std::min(cap, nxt[y] + sat_mul(cur[x], c.hom(x, y).size()));
            cur = std::move(nxt);
        }
        for (std::size_t y = 0; y < no; ++y) total = std::min(cap, total + sat_mul(cur[y], c.hom(x1, y).size()));
    }
    return total;
}

} // namespace detail

/// Degree-n elementary cochains, words (f_1, ..., f_n, h).
template <Field F>
WordBasis cochain_basis(const LinCat<F>& c, std::size_t n, const Budget& budget = {})
{
    const std::uint64_t expected = detail::count_cochains(c, n);
    if (expected > budget.max_tuples)
        throw BudgetExceeded("cochain degree " + std::to_string(n) + " needs " + std::to_string(expected) +
                             " elementary cochains (budget " + std::to_string(budget.max_tuples) + ")");
    WordBasis b{n + 1, {}, WordIndex(c.num_morphisms(), n + 1)};
    b.flat.reserve(expected * (n + 1));
    std::vector<std::size_t> objs(n + 1);
    std::vector<std::uint32_t> word(n + 1);
    const std::size_t no = c.num_objects();

    std::function<void(std::size_t)> morphs = [&](std::size_t i) {
        if (i == n) {
            for (std::size_t h : c.hom(objs[0], objs[n])) {
                word[n] = static_cast<std::uint32_t>(h);
                b.push(word);
            }
            return;
        }
        for (std::size_t f : c.hom(objs[i], objs[i + 1])) {
            word[i] = static_cast<std::uint32_t>(f);
            morphs(i + 1);
        }
    };
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n + 1) {
            if (!c.hom(objs[0], objs[n]).empty()) morphs(0);
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

/// "f_n⊗...⊗f_1 ↦ h" for witnesses.
template <Field F>
std::string format_cochain(const LinCat<F>& c, std::span<const std::uint32_t> w)
{
    std::string s;
    const std::size_t n = w.size() - 1;
    if (n == 0) s = "()";
    for (std::size_t i = n; i-- > 0;) {
        s += c.name(w[i]);
        if (i) s += "⊗";
    }
    return s + " ↦ " + c.name(w[n]);
}

template <Field F>
struct CochainComplex {
    using K = typename F::element_type;
    std::vector<WordBasis> basis; // degrees 0..top+1
    Complex<K> cx;
};

namespace detail {

/// factorizations[f] = all (g, k, [g∘k]_f) with nonzero coefficient.
template <Field F>
std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, typename F::element_type>>>
factorizations(const LinCat<F>& c)
{
    using K = typename F::element_type;
    const std::size_t m = c.num_morphisms();
    std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, K>>> out(m);
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t k = 0; k < m; ++k)
            for (const auto& e : c.composite(g, k))
                out[e.index].emplace_back(static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(k), e.value);
    return out;
}

/// Columns of d^n : C^n → C^{n+1}, one per elementary cochain.
template <Field F>
Matrix<typename F::element_type> coboundary(const LinCat<F>& c, const WordBasis& cn, const WordBasis& cm,
                                            const std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t,
                                                                                     typename F::element_type>>>& fact)
{
    using K = typename F::element_type;
    const std::size_t n = cn.width - 1;
    const K one = c.field().one();
    std::vector<SparseVec<K>> cols(cn.size());
    parallel_for(cn.size(), [&](std::size_t b, std::size_t e) {
        std::vector<std::uint32_t> w(n + 2);
        for (std::size_t k = b; k < e; ++k) {
            auto p = cn.word(k);
            const std::uint32_t h = p[n];
            const std::size_t x1 = c.morphism(h).src, xn1 = c.morphism(h).tgt;
            SparseVec<K>& col = cols[k];
            auto emit = [&](const SparseVec<K>& value, const K& coef) {
                for (const auto& x : value) {
                    w[n + 1] = static_cast<std::uint32_t>(x.index);
                    auto idx = cm.find(w);
                    if (!idx) throw InternalCheckFailed("coboundary left the cochain basis");
                    col.push_back({*idx, coef * x.value});
                }
            };
            // f_{n+1} φ(f_n..f_1)
            for (std::size_t j = 0; j < n; ++j) w[j] = p[j];
            for (std::size_t z = 0; z < c.num_objects(); ++z)
                for (std::size_t g : c.hom(xn1, z)) {
                    w[n] = static_cast<std::uint32_t>(g);
                    emit(c.composite(g, h), one);
                }
            // (-1)^{n+1} φ(f_{n+1}..f_2) f_1
            const K last = (n % 2 == 0) ? -one : one;
            for (std::size_t j = 0; j < n; ++j) w[j + 1] = p[j];
            for (std::size_t z = 0; z < c.num_objects(); ++z)
                for (std::size_t g : c.hom(z, x1)) {
                    w[0] = static_cast<std::uint32_t>(g);
                    emit(c.composite(h, g), last);
                }
            // (-1)^{n+1-i} φ(..f_{i+1}f_i..): f_i of p is replaced by a factorization
            for (std::size_t i = 1; i <= n; ++i) {
                const K sign = ((n + 1 - i) % 2 == 0) ? one : -one;
                for (std::size_t j = 0; j < i - 1; ++j) w[j] = p[j];
                for (std::size_t j = i; j < n; ++j) w[j + 1] = p[j];
                w[n + 1] = h;
                for (const auto& [gg, kk, coef] : fact[p[i - 1]]) {
                    w[i - 1] = kk;
                    w[i] = gg;
                    auto idx = cm.find(w);
                    if (!idx) throw InternalCheckFailed("coboundary left the cochain basis");
                    col.push_back({*idx, sign * coef});
                }
            }
            normalize(col);
        }
    });
    return Matrix<K>::from_columns(cm.size(), std::move(cols));
}

} // namespace detail

/// Bases in degrees 0..top+1 and coboundaries d^0..d^top; d∘d = 0 is asserted.
template <Field F>
CochainComplex<F> build_cochain_complex(const LinCat<F>& c, std::size_t top, const Budget& budget = {})
{
    CochainComplex<F> out;
    for (std::size_t n = 0; n <= top + 1; ++n) out.basis.push_back(cochain_basis(c, n, budget));
    out.cx.cochain = true;
    for (auto& b : out.basis) out.cx.dim.push_back(b.size());
    const auto fact = detail::factorizations(c);
    for (std::size_t n = 0; n <= top; ++n)
        out.cx.map.push_back(detail::coboundary(c, out.basis[n], out.basis[n + 1], fact));
    if (auto bad = first_nonzero_square(out.cx))
        throw InternalCheckFailed("d∘d != 0 on cochains at degree " + std::to_string(*bad));
    return out;
}

/// dim H^n for n = 0..top; the slice must carry d^0..d^top.
template <class K>
std::vector<std::size_t> cohomology_dims(const Complex<K>& cx, std::size_t top)
{
    if (!cx.cochain || cx.map.size() < top + 1) throw InternalCheckFailed("cochain slice too short for requested degree");
    return homology_dims(cx, top);
}

/// Σ_x id_x as a degree-0 cochain.
template <Field F>
SparseVec<typename F::element_type> unit_cochain(const LinCat<F>& c, const CochainComplex<F>& cc)
{
    using K = typename F::element_type;
    SparseVec<K> out;
    for (std::size_t x = 0; x < c.num_objects(); ++x)
        for (const auto& e : c.identity(x)) {
            const std::uint32_t w = static_cast<std::uint32_t>(e.index);
            auto idx = cc.basis[0].find(std::span<const std::uint32_t>(&w, 1));
            if (!idx) throw InternalCheckFailed("identity missing from degree-0 cochains");
            out.push_back({*idx, e.value});
        }
    normalize(out);
    return out;
}

/// The degree-0 cocycle space computed directly: families (φ_x) with
/// g φ_x = φ_y g for every basis g : x → y.
template <Field F>
std::size_t center_dim(const LinCat<F>& c)
{
    using K = typename F::element_type;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
        offset.push_back(total);
        total += c.hom(x, x).size();
    }
    std::vector<SparseVec<K>> eqs;
    for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
        const std::size_t x = c.morphism(g).src, y = c.morphism(g).tgt;
        // one equation per basis element of hom(x, y)
        std::map<std::size_t, SparseVec<K>> rows;
        for (std::size_t i = 0; i < c.hom(x, x).size(); ++i)
            for (const auto& e : c.composite(g, c.hom(x, x)[i])) rows[e.index].push_back({offset[x] + i, e.value});
        for (std::size_t i = 0; i < c.hom(y, y).size(); ++i)
            for (const auto& e : c.composite(c.hom(y, y)[i], g)) rows[e.index].push_back({offset[y] + i, -e.value});
        for (auto& [_, r] : rows) {
            normalize(r);
            if (!r.empty()) eqs.push_back(std::move(r));
        }
    }
    return total - rank_of_vectors<K>(total, eqs);
}

/// Cup of two cochain vectors of degrees n and m in the same complex.
template <Field F>
SparseVec<typename F::element_type> cup(const LinCat<F>& c, const CochainComplex<F>& cc, std::size_t n,
                                        const SparseVec<typename F::element_type>& psi, std::size_t m,
                                        const SparseVec<typename F::element_type>& phi)
{
    using K = typename F::element_type;
    if (n + m >= cc.basis.size()) throw std::out_of_range("cup lands above the built degrees");
    const auto& bn = cc.basis.at(n);
    const auto& bm = cc.basis.at(m);
    const auto& out_b = cc.basis[n + m];
    SparseVec<K> out;
    std::vector<std::uint32_t> w(n + m + 1);
    for (const auto& a : psi) {
        auto p = bn.word(a.index);
        const std::uint32_t h1 = p[n];
        for (const auto& b : phi) {
            auto r = bm.word(b.index);
            const std::uint32_t h2 = r[m];
            if (c.morphism(h1).src != c.morphism(h2).tgt) continue;
            for (std::size_t j = 0; j < m; ++j) w[j] = r[j];
            for (std::size_t j = 0; j < n; ++j) w[m + j] = p[j];
            const K coef = a.value * b.value;
            for (const auto& e : c.composite(h1, h2)) {
                w[n + m] = static_cast<std::uint32_t>(e.index);
                auto idx = out_b.find(w);
                if (!idx) throw InternalCheckFailed("cup left the cochain basis");
                out.push_back({*idx, coef * e.value});
            }
        }
    }
    normalize(out);
    return out;
}

/// Leibniz rule and unit law on `samples` random elementary pairs (ψ, φ)
/// with |ψ| + |φ| + 1 inside the built degrees.
template <Field F>
std::vector<Check> cup_law_checks(const LinCat<F>& c, const CochainComplex<F>& cc, std::size_t samples,
                                  std::uint64_t seed)
{
    using K = typename F::element_type;
    const K one = c.field().one();
    const std::size_t top = cc.cx.map.size(); // d^0..d^{top-1}
    Check leibniz{"d(ψ⌣φ) = dψ⌣φ + (-1)^|ψ| ψ⌣dφ", true, {}};
    Check unit{"1⌣ψ = ψ = ψ⌣1", true, {}};
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < top; ++p)
        for (std::size_t q = 0; p + q < top; ++q)
            if (cc.basis[p].size() && cc.basis[q].size()) pairs.emplace_back(p, q);
    const SparseVec<K> u = unit_cochain(c, cc);
    for (std::size_t k = 0; k < samples && !pairs.empty(); ++k) {
        const auto [p, q] = pairs[rng() % pairs.size()];
        const std::size_t i = rng() % cc.basis[p].size(), j = rng() % cc.basis[q].size();
        const SparseVec<K> psi{{i, one}}, phi{{j, one}};
        const SparseVec<K> lhs = cc.cx.map[p + q].apply(cup(c, cc, p, psi, q, phi));
        SparseVec<K> rhs = cup(c, cc, p + 1, cc.cx.map[p].apply(psi), q, phi);
        axpy(p % 2 == 0 ? one : -one, cup(c, cc, p, psi, q + 1, cc.cx.map[q].apply(phi)), rhs);
        if (leibniz.pass && lhs != rhs) {
            leibniz.pass = false;
            leibniz.witness = "ψ=" + format_cochain(c, cc.basis[p].word(i)) + ", φ=" + format_cochain(c, cc.basis[q].word(j));
        }
        if (unit.pass && (cup(c, cc, 0, u, p, psi) != psi || cup(c, cc, p, psi, 0, u) != psi)) {
            unit.pass = false;
            unit.witness = "ψ=" + format_cochain(c, cc.basis[p].word(i));
        }
    }
    return {leibniz, unit};
}

/// For sampled cocycles ψ, φ of degrees ≤ 2: ψ⌣φ − (−1)^{|ψ||φ|} φ⌣ψ is a coboundary.
template <Field F>
Check graded_commutativity_check(const LinCat<F>& c, const CochainComplex<F>& cc, std::size_t samples,
                                 std::uint64_t seed)
{
    using K = typename F::element_type;
    const K one = c.field().one();
    const std::size_t top = cc.cx.map.size();
    Check out{"ψ⌣φ − (−1)^{|ψ||φ|} φ⌣ψ ∈ im d on cocycles", true, {}};
    std::vector<KernelBasis<K>> cocycles;
    for (std::size_t n = 0; n < top && n <= 2; ++n) cocycles.push_back(kernel_basis(c.field(), cc.cx.map[n]));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < cocycles.size(); ++p)
        for (std::size_t q = 0; q < cocycles.size(); ++q)
            if (p + q < top && cocycles[p].dim() && cocycles[q].dim()) pairs.emplace_back(p, q);
    std::vector<std::optional<Echelon<K>>> images(top);
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples && !pairs.empty() && out.pass; ++k) {
        const auto [p, q] = pairs[rng() % pairs.size()];
        const std::size_t i = rng() % cocycles[p].dim(), j = rng() % cocycles[q].dim();
        const SparseVec<K> psi = cocycles[p].vectors.column(i), phi = cocycles[q].vectors.column(j);
        SparseVec<K> diff = cup(c, cc, p, psi, q, phi);
        axpy((p * q) % 2 == 0 ? -one : one, cup(c, cc, q, phi, p, psi), diff);
        bool ok = diff.empty();
        if (!ok && p + q > 0) {
            auto& e = images[p + q];
            if (!e) {
                e.emplace(cc.cx.dim[p + q]);
                for (const auto& col : cc.cx.map[p + q - 1].columns()) e->insert(col);
            }
            ok = e->contains(diff);
        }
        if (!ok) {
            out.pass = false;
            out.witness = "degrees " + std::to_string(p) + "," + std::to_string(q) + ", cocycles #" + std::to_string(i) +
                          ", #" + std::to_string(j);
        }
    }
    return out;
}

/// Per degree, elementary cochains whose type class s_n⋯s_1·s_0⁻¹ lies in d.
template <Field F>
std::vector<std::vector<std::size_t>> cochain_class_indices(const GradedLinCat<F>& b, const CochainComplex<F>& cc,
                                                            const ConjClass& d)
{
    const FinGroup& g = b.group;
    std::vector<char> in(g.order(), 0);
    for (auto x : d.members) in[x] = 1;
    std::vector<std::vector<std::size_t>> out;
    for (const auto& basis : cc.basis) {
        out.emplace_back();
        const std::size_t n = basis.width - 1;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            auto w = basis.word(k);
            std::size_t p = g.identity();
            for (std::size_t i = n; i-- > 0;) p = g.mul(p, b.degree[w[i]]);
            p = g.mul(p, g.inv(b.degree[w[n]]));
            if (in[p]) out.back().push_back(k);
        }
    }
    return out;
}

/// (s.φ)(f_n..f_1) = s[φ(s⁻¹f_n..s⁻¹f_1)] as matrices [s][n].
template <Field F>
std::vector<std::vector<Matrix<typename F::element_type>>> cochain_g_action(const LinCat<F>& c,
                                                                           const GActionOnCat<F>& a,
                                                                           const CochainComplex<F>& cc)
{
    using K = typename F::element_type;
    const FinGroup& g = a.group;
    std::vector<std::vector<Matrix<K>>> out(g.order());
    for (std::size_t s = 0; s < g.order(); ++s) {
        const std::size_t si = g.inv(s);
        for (const auto& basis : cc.basis) {
            const std::size_t n = basis.width - 1;
            std::vector<std::vector<Triplet<K>>> parts(basis.size());
            parallel_for(basis.size(), [&](std::size_t b, std::size_t e) {
                std::vector<const SparseVec<K>*> fac(n);
                std::vector<std::uint32_t> col(n + 1);
                for (std::size_t row = b; row < e; ++row) {
                    auto w = basis.word(row);
                    const std::uint32_t target = w[n];
                    for (std::size_t i = 0; i < n; ++i) fac[i] = &a.mor[si][w[i]];
                    // objects of the preimage path: s⁻¹x_1 → s⁻¹x_{n+1}
                    const std::size_t y1 = a.act_object(si, c.morphism(target).src);
                    const std::size_t yn = a.act_object(si, c.morphism(target).tgt);
                    std::vector<std::pair<std::uint32_t, K>> outputs;
                    for (std::size_t h : c.hom(y1, yn)) {
                        const K coef = coefficient(a.mor[s][h], target);
                        if (!coef.is_zero()) outputs.emplace_back(static_cast<std::uint32_t>(h), coef);
                    }
                    if (outputs.empty()) continue;
                    detail::expand_tensor(fac, c.field().one(), [&](std::span<const std::uint32_t> p, const K& pc) {
                        for (std::size_t i = 0; i < n; ++i) col[i] = p[i];
                        for (const auto& [h, hc] : outputs) {
                            col[n] = h;
                            auto idx = basis.find(col);
                            if (!idx) throw InternalCheckFailed("group action left the cochain basis");
                            parts[row].push_back({row, *idx, pc * hc});
                        }
                    });
                }
            });
            std::vector<Triplet<K>> ts;
            for (auto& p : parts) ts.insert(ts.end(), p.begin(), p.end());
            out[s].push_back(Matrix<K>::from_triplets(basis.size(), basis.size(), ts));
        }
    }
    return out;
}

/// (C^•)^G: per degree a basis V_n of the joint kernel of all S_s − I
/// and the coboundary in those coordinates.
template <class K>
struct InvariantComplex {
    std::vector<KernelBasis<K>> basis;
    Complex<K> cx;
};

template <Field F>
InvariantComplex<typename F::element_type> invariants_complex(
    const F& field, const Complex<typename F::element_type>& cx,
    const std::vector<std::vector<Matrix<typename F::element_type>>>& act, std::size_t identity)
{
    using K = typename F::element_type;
    InvariantComplex<K> out;
    out.cx.cochain = true;
    for (std::size_t n = 0; n < cx.dim.size(); ++n) {
        Matrix<K> stack(0, cx.dim[n]);
        for (std::size_t s = 0; s < act.size(); ++s)
            if (s != identity) stack = vstack(stack, Matrix<K>(act[s][n] - Matrix<K>::identity(cx.dim[n], field.one())));
        out.basis.push_back(kernel_basis(field, stack));
        out.cx.dim.push_back(out.basis.back().dim());
    }
    for (std::size_t n = 0; n < cx.map.size(); ++n) {
        const Matrix<K> image = cx.map[n] * out.basis[n].vectors;
        std::vector<SparseVec<K>> cols;
        for (std::size_t j = 0; j < image.cols(); ++j) {
            auto coords = out.basis[n + 1].coordinates(image.column(j));
            if (out.basis[n + 1].vectors.apply(coords) != image.column(j))
                throw InternalCheckFailed("coboundary of an invariant cochain is not invariant (degree " +
                                          std::to_string(n) + ")");
            cols.push_back(std::move(coords));
        }
        out.cx.map.push_back(Matrix<K>::from_columns(out.cx.dim[n + 1], std::move(cols)));
    }
    return out;
}

/// Matrices of C^n(D) → C^n(C), φ ↦ (f ↦ F⁻¹ φ(F f_n ⊗ ... ⊗ F f_1)),
/// for a fully faithful functor F : C → D.
template <Field F>
std::vector<Matrix<typename F::element_type>> restrict_along_functor(const LinCat<F>& c, const LinCat<F>& d,
                                                                    const LinFunctor<F>& fn,
                                                                    const CochainComplex<F>& cc,
                                                                    const CochainComplex<F>& dd)
{
    using K = typename F::element_type;
    const std::size_t no = c.num_objects();
    std::vector<Matrix<K>> inv(no * no);
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y) {
            auto m = hom_matrix(c, d, fn, x, y);
            if (m.rows() != m.cols())
                throw NotFullyFaithful("hom(" + c.object_name(x) + "," + c.object_name(y) + ") has dimension " +
                                       std::to_string(m.cols()) + " but its image hom has dimension " +
                                       std::to_string(m.rows()));
            try {
                inv[x * no + y] = inverse(c.field(), m);
            } catch (const std::domain_error&) {
                throw NotFullyFaithful("F is not bijective on hom(" + c.object_name(x) + "," + c.object_name(y) + ")");
            }
        }
    std::vector<Matrix<K>> out;
    for (std::size_t n = 0; n < cc.basis.size() && n < dd.basis.size(); ++n) {
        const auto& rows = cc.basis[n];
        const auto& cols = dd.basis[n];
        std::vector<std::vector<Triplet<K>>> parts(rows.size());
        parallel_for(rows.size(), [&](std::size_t b, std::size_t e) {
            std::vector<const SparseVec<K>*> fac(n);
            std::vector<std::uint32_t> key(n + 1);
            for (std::size_t r = b; r < e; ++r) {
                auto w = rows.word(r);
                const std::size_t h = w[n];
                const std::size_t x1 = c.morphism(h).src, xn = c.morphism(h).tgt;
                const auto& fi = inv[x1 * no + xn];
                const std::size_t hl = c.local_index(h);
                const auto& targets = d.hom(fn.obj_map[x1], fn.obj_map[xn]);
                for (std::size_t i = 0; i < n; ++i) fac[i] = &fn.mor_map[w[i]];
                detail::expand_tensor(fac, c.field().one(), [&](std::span<const std::uint32_t> q, const K& qc) {
                    for (std::size_t i = 0; i < n; ++i) key[i] = q[i];
                    for (std::size_t kl = 0; kl < targets.size(); ++kl) {
                        const K coef = coefficient(fi.column(kl), hl);
                        if (coef.is_zero()) continue;
                        key[n] = static_cast<std::uint32_t>(targets[kl]);
                        auto idx = cols.find(key);
                        if (!idx) throw InternalCheckFailed("restriction left the cochain basis");
                        parts[r].push_back({r, *idx, qc * coef});
                    }
                });
            }
        });
        std::vector<Triplet<K>> ts;
        for (auto& p : parts) ts.insert(ts.end(), p.begin(), p.end());
        out.push_back(Matrix<K>::from_triplets(rows.size(), cols.size(), ts));
    }
    return out;
}

/// Cochain maps A : (C^•(C))^G → C^•_{1}(C_T[G]) and B back, as matrices
/// on the full bases of C^n(C) and the class-{1} sub-basis of C^n(C_T[G]).
template <Field F>
struct CochainIso {
    using K = typename F::element_type;
    std::vector<Matrix<K>> A, B;
    std::vector<Check> checks;
    std::vector<std::size_t> invariant_dims;     // dim H^n((C^•(C))^G)
    std::vector<std::size_t> trivial_class_dims; // dim HH^n_{1}(C_T[G])

    bool ok() const
    {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

template <Field F>
CochainIso<F> transversal_cochain_iso(const LinCat<F>& c, const GActionOnCat<F>& a, const Transversal& t,
                                      std::size_t top, const Budget& budget = {}, std::size_t cup_samples = 100,
                                      std::uint64_t seed = 1)
{
    using K = typename F::element_type;
    using Vec = SparseVec<K>;
    if (!t.free) throw NonFreeAction("transversal cochain isomorphism needs a free action on objects");
    const FinGroup& g = a.group;
    const K one = c.field().one();
    const auto sk = skew(c, a);
    const auto sub = transversal_subcategory(c, a, sk, t);
    const auto& tc = sub.cat.cat;
    const auto ccC = build_cochain_complex(c, top, budget);
    const auto ccT = build_cochain_complex(tc, top, budget);
    const auto cls = conjugacy_classes(g);
    const auto keep = cochain_class_indices(sub.cat, ccT, cls[0]);
    const auto cx1 = restrict_complex(ccT.cx, keep);
    const auto act = cochain_g_action(c, a, ccC);
    const auto inv = invariants_complex(c.field(), ccC.cx, act, g.identity());

    CochainIso<F> out;
    out.invariant_dims = homology_dims(inv.cx, top);
    out.trivial_class_dims = homology_dims(cx1, top);

    auto sub_id = [&](std::size_t m, std::size_t r) {
        const std::size_t j = sub.from_skew[sk.id(m, r)];
        if (j == TransversalSub<F>::npos) throw InternalCheckFailed("cochain map left the transversal subcategory");
        return static_cast<std::uint32_t>(j);
    };
    auto origin = [&](std::size_t j) { return sk.origin[sub.to_skew[j]]; };

    std::vector<std::vector<std::size_t>> row_of(ccT.basis.size());
    for (std::size_t n = 0; n < ccT.basis.size(); ++n) {
        row_of[n].assign(ccT.basis[n].size(), TransversalSub<F>::npos);
        for (std::size_t r = 0; r < keep[n].size(); ++r) row_of[n][keep[n][r]] = r;
    }

    for (std::size_t n = 0; n <= top + 1; ++n) {
        const auto& bc = ccC.basis[n];
        const auto& bt = ccT.basis[n];

        // (Aψ)([c_n]^{s_n} ⊗ ... ⊗ [c_1]^{s_1}) = [ψ(c_n ⊗ s_n c_{n-1} ⊗ ... ⊗ (s_n⋯s_2) c_1)]^{s_n⋯s_1}
        std::vector<std::vector<Triplet<K>>> aparts(keep[n].size());
        parallel_for(keep[n].size(), [&](std::size_t b, std::size_t e) {
            std::vector<const Vec*> fac(n);
            std::vector<std::uint32_t> key(n + 1);
            for (std::size_t r = b; r < e; ++r) {
                auto w = bt.word(keep[n][r]);
                std::size_t acc = g.identity();
                for (std::size_t i = n; i-- > 0;) {
                    const auto [ci, si] = origin(w[i]);
                    fac[i] = &a.mor[acc][ci];
                    acc = g.mul(acc, si);
                }
                const auto [h, rh] = origin(w[n]);
                if (rh != acc) throw InternalCheckFailed("class-{1} cochain with mismatched output degree");
                key[n] = static_cast<std::uint32_t>(h);
                detail::expand_tensor(fac, one, [&](std::span<const std::uint32_t> p, const K& coef) {
                    for (std::size_t i = 0; i < n; ++i) key[i] = p[i];
                    auto idx = bc.find(key);
                    if (!idx) throw InternalCheckFailed("A left the cochain basis of C");
                    aparts[r].push_back({r, *idx, coef});
                });
            }
        });
        std::vector<Triplet<K>> ats;
        for (auto& p : aparts) ats.insert(ats.end(), p.begin(), p.end());
        out.A.push_back(Matrix<K>::from_triplets(keep[n].size(), bc.size(), ats));

        // (Bφ)(g_n ⊗ ... ⊗ g_1) = s_{n+1}·φ(s_{n+1}⁻¹g_n ⊗ ... ⊗ s_2⁻¹g_1), x_i = s_i·u_i
        std::vector<std::vector<Triplet<K>>> bparts(bc.size());
        parallel_for(bc.size(), [&](std::size_t b, std::size_t e) {
            std::vector<Vec> factors(n);
            std::vector<const Vec*> fac(n);
            std::vector<std::uint32_t> key(n + 1);
            for (std::size_t r = b; r < e; ++r) {
                auto w = bc.word(r);
                const std::size_t h = w[n];
                const std::size_t x1 = c.morphism(h).src, xn = c.morphism(h).tgt;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t s_i = t.witness[c.morphism(w[i]).src];
                    const std::size_t s_next = t.witness[c.morphism(w[i]).tgt];
                    const std::size_t rr = g.mul(g.inv(s_next), s_i);
                    factors[i].clear();
                    for (const auto& x : a.mor[g.inv(s_next)][w[i]]) factors[i].push_back({sub_id(x.index, rr), x.value});
                    fac[i] = &factors[i];
                }
                const std::size_t s1 = t.witness[x1], sn1 = t.witness[xn];
                const std::size_t deg = g.mul(g.inv(sn1), s1);
                // outputs: k ∈ hom_C(deg·u_1, u_{n+1}) as [k]^deg, weighted by [s_{n+1}·k]_h
                std::vector<std::pair<std::uint32_t, K>> outputs;
                for (std::size_t k : c.hom(a.act_object(deg, t.rep_of(x1)), t.rep_of(xn))) {
                    const K coef = coefficient(a.mor[sn1][k], h);
                    if (!coef.is_zero()) outputs.emplace_back(sub_id(k, deg), coef);
                }
                if (outputs.empty()) continue;
                detail::expand_tensor(fac, one, [&](std::span<const std::uint32_t> q, const K& qc) {
                    for (std::size_t i = 0; i < n; ++i) key[i] = q[i];
                    for (const auto& [hk, hc] : outputs) {
                        key[n] = hk;
                        auto idx = bt.find(key);
                        if (!idx || row_of[n][*idx] == TransversalSub<F>::npos)
                            throw InternalCheckFailed("B left the class-{1} cochains");
                        bparts[r].push_back({r, row_of[n][*idx], qc * hc});
                    }
                });
            }
        });
        std::vector<Triplet<K>> bts;
        for (auto& p : bparts) bts.insert(bts.end(), p.begin(), p.end());
        out.B.push_back(Matrix<K>::from_triplets(bc.size(), keep[n].size(), bts));
    }

    auto describe_c = [&](std::size_t n, std::size_t j) { return format_cochain(c, ccC.basis[n].word(j)); };
    auto describe_t = [&](std::size_t n, std::size_t j) { return format_cochain(tc, ccT.basis[n].word(keep[n][j])); };
    auto first_nonzero_column = [](const Matrix<K>& m) -> std::optional<std::size_t> {
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.column(j).empty()) return j;
        return std::nullopt;
    };
    // invariant basis vectors are described by their free coordinate
    auto describe_v = [&](std::size_t n, std::size_t j) { return describe_c(n, inv.basis[n].free_columns[j]); };

    for (std::size_t n = 0; n <= top + 1; ++n) {
        const auto& V = inv.basis[n].vectors;
        if (n <= top) {
            Check chain{"A∘d = d∘A on invariants, degree " + std::to_string(n), true, {}};
            const Matrix<K> diff = Matrix<K>(out.A[n + 1] * ccC.cx.map[n] * V) - Matrix<K>(cx1.map[n] * out.A[n] * V);
            if (auto j = first_nonzero_column(diff)) {
                chain.pass = false;
                chain.witness = describe_v(n, *j);
            }
            out.checks.push_back(chain);
        }

        Check binv{"B lands in invariants, degree " + std::to_string(n), true, {}};
        for (std::size_t s = 0; s < g.order() && binv.pass; ++s)
            if (auto j = first_differing_column(Matrix<K>(act[s][n] * out.B[n]), out.B[n])) {
                binv.pass = false;
                binv.witness = "s=" + g.name(s) + ", φ=" + describe_t(n, *j);
            }
        out.checks.push_back(binv);

        Check ab{"A∘B = id, degree " + std::to_string(n), true, {}};
        if (auto j = first_differing_column(Matrix<K>(out.A[n] * out.B[n]), Matrix<K>::identity(keep[n].size(), one))) {
            ab.pass = false;
            ab.witness = describe_t(n, *j);
        }
        out.checks.push_back(ab);

        Check ba{"B∘A = id on invariants, degree " + std::to_string(n), true, {}};
        if (auto j = first_differing_column(Matrix<K>(out.B[n] * out.A[n] * V), V)) {
            ba.pass = false;
            ba.witness = describe_v(n, *j);
        }
        out.checks.push_back(ba);
    }

    // A(ψ′⌣ψ) = Aψ′ ⌣ Aψ on sampled invariant basis pairs with |ψ′| + |ψ| ≤ top + 1
    Check mult{"A multiplicative over cup", true, {}};
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::size_t, std::size_t>> degree_pairs;
    for (std::size_t p = 0; p <= top + 1; ++p)
        for (std::size_t q = 0; p + q <= top + 1; ++q)
            if (inv.basis[p].dim() && inv.basis[q].dim()) degree_pairs.emplace_back(p, q);
    auto lift = [&](std::size_t n, const Vec& v) {
        Vec out_v;
        for (const auto& e : v) out_v.push_back({keep[n][e.index], e.value});
        return out_v;
    };
    auto class1 = [&](std::size_t n, const Vec& v) -> std::optional<Vec> {
        Vec out_v;
        for (const auto& e : v) {
            if (row_of[n][e.index] == TransversalSub<F>::npos) return std::nullopt;
            out_v.push_back({row_of[n][e.index], e.value});
        }
        normalize(out_v);
        return out_v;
    };
    for (std::size_t k = 0; k < cup_samples && !degree_pairs.empty() && mult.pass; ++k) {
        const auto [p, q] = degree_pairs[rng() % degree_pairs.size()];
        const std::size_t i = rng() % inv.basis[p].dim(), j = rng() % inv.basis[q].dim();
        const Vec psi1 = inv.basis[p].vectors.column(i), psi = inv.basis[q].vectors.column(j);
        const Vec lhs = out.A[p + q].apply(cup(c, ccC, p, psi1, q, psi));
        const auto rhs = class1(p + q, cup(tc, ccT, p, lift(p, out.A[p].apply(psi1)), q, lift(q, out.A[q].apply(psi))));
        if (!rhs || *rhs != lhs) {
            mult.pass = false;
            mult.witness = "ψ′=" + describe_v(p, i) + " (invariant basis), ψ=" + describe_v(q, j);
        }
    }
    out.checks.push_back(mult);

    Check dims{"dim H^n((C^•)^G) = dim HH^n_{1}(C_T[G])", true, {}};
    for (std::size_t n = 0; n <= top; ++n)
        if (out.invariant_dims[n] != out.trivial_class_dims[n]) {
            dims.pass = false;
            dims.witness = "degree " + std::to_string(n) + ": " + std::to_string(out.invariant_dims[n]) + " vs " +
                           std::to_string(out.trivial_class_dims[n]);
            break;
        }
    out.checks.push_back(dims);
    return out;
}

} // namespace skewcat
