#pragma once

// Subcommand orchestration and structured reports.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "skewcat/cohomology.hpp"
#include "skewcat/constructions.hpp"
#include "skewcat/hochschild.hpp"
#include "skewcat/io.hpp"
#include "skewcat/parallel.hpp"

namespace skewcat {

struct Job {
    std::string command;
    std::string input;                   // path, used when `document` is empty
    std::optional<io::Document> document;
    std::size_t max_degree = 2;
    bool classes = false;
    std::string variant = "plain";       // plain | coinvariants | invariants
    std::optional<std::string> field;    // overrides the document
    std::optional<std::vector<std::string>> transversal;
    std::size_t threads = 1;
    Budget budget;
    std::size_t cup_samples = 100;
    std::uint64_t seed = 1;
};

struct Report {
    io::json doc;
    std::string text; // human-readable summary
    int exit_code = 0;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failed = 1;
inline constexpr int input = 2;
inline constexpr int budget = 3;
} // namespace exit_code

namespace detail {

using io::json;

inline json check_json(const Check& c)
{
    json j{{"name", c.name}, {"pass", c.pass}};
    if (!c.pass) j["witness"] = c.witness;
    return j;
}

inline json violations_json(const ValidationResult& v)
{
    json out = json::array();
    for (const auto& x : v.violations) out.push_back({{"axiom", x.axiom}, {"witness", x.witness}});
    return out;
}

inline std::string dims_text(const std::vector<std::size_t>& d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
    return s + ")";
}

inline Check equal_dims(const std::string& name, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    Check c{name, a == b, {}};
    if (!c.pass) c.witness = dims_text(a) + " vs " + dims_text(b);
    return c;
}

/// m∘x = y∘m for every degree; commutation of a map with differentials or actions.
template <class K>
Check commutes(const std::string& name, const std::vector<Matrix<K>>& lhs_a, const std::vector<Matrix<K>>& lhs_b,
               const std::vector<Matrix<K>>& rhs_a, const std::vector<Matrix<K>>& rhs_b)
{
    Check c{name, true, {}};
    for (std::size_t n = 0; n < lhs_a.size(); ++n)
        if (auto j = first_differing_column(Matrix<K>(lhs_a[n] * lhs_b[n]), Matrix<K>(rhs_a[n] * rhs_b[n]))) {
            c.pass = false;
            c.witness = "degree " + std::to_string(n) + ", basis column " + std::to_string(*j);
            break;
        }
    return c;
}

/// Every column of maps[n] indexed by src[n] is supported on dst[n].
template <class K>
bool preserves(const std::vector<Matrix<K>>& maps, const std::vector<std::vector<std::size_t>>& src,
               const std::vector<std::vector<std::size_t>>& dst, std::string& witness)
{
    for (std::size_t n = 0; n < maps.size(); ++n) {
        std::vector<char> ok(maps[n].rows(), 0);
        for (auto r : dst[n]) ok[r] = 1;
        for (auto j : src[n])
            for (const auto& e : maps[n].column(j))
                if (!ok[e.index]) {
                    witness = "degree " + std::to_string(n) + ", basis column " + std::to_string(j);
                    return false;
                }
    }
    return true;
}

template <Field F>
class Runner {
  public:
    using K = typename F::element_type;

    Runner(const Job& job, const io::Document& doc, const F& field, Report& rep)
        : job_(job), doc_(doc), field_(field), rep_(rep)
    {
    }

    void run()
    {
        const auto& cmd = job_.command;
        if (!validate()) {
            status(false);
            return;
        }
        if (cmd == "validate") return status(true);
        if (cmd == "skew") return skew_cmd();
        if (cmd == "mg") return mg_cmd();
        if (cmd == "quotient") return quotient_cmd();
        if (cmd == "hh") return hh_cmd();
        if (cmd == "hhc") return hhc_cmd();
        if (cmd == "oracle") return oracle_cmd();
        if (cmd == "verify") return verify_cmd();
        throw InputError("unknown subcommand \"" + cmd + "\"");
    }

  private:
    const Job& job_;
    const io::Document& doc_;
    F field_;
    Report& rep_;
    std::optional<io::Instance<F>> inst_;
    std::ostringstream text_;
    std::vector<Check> checks_;

    std::size_t top() const { return job_.max_degree; }

    void status(bool pass)
    {
        for (const auto& c : checks_) pass = pass && c.pass;
        if (!checks_.empty()) {
            json arr = json::array();
            for (const auto& c : checks_) {
                arr.push_back(check_json(c));
                text_ << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << (c.pass ? "" : "  [" + c.witness + "]") << "\n";
            }
            rep_.doc["checks"] = arr;
        }
        rep_.doc["status"] = pass ? "pass" : "fail";
        text_ << "status: " << (pass ? "pass" : "fail") << "\n";
        rep_.text = text_.str();
        rep_.exit_code = pass ? exit_code::ok : exit_code::failed;
    }

    /// Group first (a broken table cannot be instantiated), then the rest.
    bool validate()
    {
        ValidationResult all;
        json sections = json::object();
        auto record = [&](const char* what, const ValidationResult& v) {
            sections[what] = {{"ok", v.ok()}, {"violations", violations_json(v)}};
            text_ << what << ": " << (v.ok() ? "ok" : "FAILED") << "\n";
            for (const auto& x : v.violations) text_ << "  " << x.axiom << ": " << x.witness << "\n";
            all.merge(v);
        };
        const auto gv = io::validate_document_group(doc_);
        record("group", gv);
        if (gv.ok()) {
            inst_.emplace(io::instantiate(doc_, field_));
            const auto cv = validate_category(inst_->cat);
            record("category", cv);
            if (cv.ok()) {
                record("action", validate_action(inst_->cat, inst_->action));
                if (inst_->graded) record("grading", validate_grading(*inst_->graded));
            }
        }
        rep_.doc["validation"] = sections;
        return all.ok();
    }

    const LinCat<F>& cat() const { return inst_->cat; }
    const GActionOnCat<F>& action() const { return inst_->action; }
    const FinGroup& group() const { return inst_->group; }

    Transversal transversal() const
    {
        std::optional<std::vector<std::size_t>> prefer = inst_->transversal;
        if (job_.transversal) {
            std::vector<std::size_t> t;
            for (const auto& n : *job_.transversal) {
                if (auto x = cat().find_object(n)) {
                    t.push_back(*x);
                    continue;
                }
                std::size_t i = 0;
                try {
                    std::size_t used = 0;
                    i = std::stoul(n, &used);
                    if (used != n.size()) throw std::invalid_argument(n);
                } catch (const std::exception&) {
                    throw InputError("--transversal: unknown object \"" + n + "\"");
                }
                if (i >= cat().num_objects()) throw InputError("--transversal: object index " + n + " out of range");
                t.push_back(i);
            }
            prefer = std::move(t);
        }
        return orbits_transversal(group(), action().objects, prefer);
    }

    void require_exactness() const
    {
        if (!invertible_in(field_, group().order()))
            throw InputError("characteristic " + std::to_string(field_.characteristic()) + " divides |G| = " +
                             std::to_string(group().order()) + "; (co)invariants are not exact");
    }

    json homology_entry(std::size_t n, const std::string& cls, std::size_t dc, std::size_t dh, const char* variant,
                        bool cochain)
    {
        text_ << "  " << (cochain ? "H^" : "H_") << n << "  class " << cls << "  dim " << (cochain ? "C^" : "C_") << n
              << " = " << dc << "  dim H = " << dh << "  (" << variant << ")\n";
        return cochain ? json{{"degree", n}, {"class", cls}, {"dim_cochain", dc}, {"dim_cohomology", dh},
                              {"variant", variant}}
                       : json{{"degree", n}, {"class", cls}, {"dim_chain", dc}, {"dim_homology", dh}, {"variant", variant}};
    }

    /// The graded category whose classes are reported: the document's
    /// grading if present, else C[G].
    GradedLinCat<F> graded_for_classes() const
    {
        if (inst_->graded) return *inst_->graded;
        return skew(cat(), action()).cat;
    }

    json category_summary(const LinCat<F>& c, const std::vector<std::size_t>* degree)
    {
        json homs = json::array();
        for (std::size_t x = 0; x < c.num_objects(); ++x)
            for (std::size_t y = 0; y < c.num_objects(); ++y) {
                const auto& h = c.hom(x, y);
                if (h.empty()) continue;
                json e{{"src", c.object_name(x)}, {"tgt", c.object_name(y)}, {"dim", h.size()}};
                if (degree) {
                    json by = json::object();
                    for (auto m : h) {
                        const auto& nm = group().name((*degree)[m]);
                        by[nm] = by.contains(nm) ? by[nm].template get<std::size_t>() + 1 : 1;
                    }
                    e["by_degree"] = by;
                }
                homs.push_back(e);
            }
        text_ << "objects: " << c.num_objects() << ", morphisms: " << c.num_morphisms() << "\n";
        return {{"objects", c.num_objects()}, {"morphisms", c.num_morphisms()}, {"homs", homs}};
    }

    void skew_cmd()
    {
        const auto sk = skew(cat(), action());
        checks_.push_back({"skew category axioms", validate_category(sk.cat.cat).ok(), {}});
        checks_.push_back({"skew category grading", validate_grading(sk.cat).ok(), {}});
        rep_.doc["summary"] = category_summary(sk.cat.cat, &sk.cat.degree);
        rep_.doc["output"] = io::to_document(group(), sk.cat.cat, &sk.cat.degree);
        status(true);
    }

    void mg_cmd()
    {
        const auto mg = matrix_category(cat(), action());
        checks_.push_back({"M_G(C) axioms", validate_category(mg.cat).ok(), {}});
        checks_.push_back({"M_G(C) action axioms", validate_action(mg.cat, mg.action).ok(), {}});
        checks_.push_back({"L is a functor", validate_functor(mg.cat, cat(), mg.functor_L).ok(), {}});
        checks_.push_back({"L fully faithful", mg.functor_L.fully_faithful, {}});
        checks_.push_back({"L dense", mg.functor_L.dense, {}});
        checks_.push_back({"G acts freely on objects of M_G(C)", orbits_transversal(group(), mg.action.objects).free, {}});
        rep_.doc["summary"] = category_summary(mg.cat, nullptr);
        rep_.doc["output"] = io::to_document(group(), mg.cat, nullptr, &mg.action);
        status(true);
    }

    void quotient_cmd()
    {
        const auto t = transversal();
        const auto q = quotient_category(cat(), action(), t);
        const auto sk = skew(cat(), action());
        const auto sub = transversal_subcategory(cat(), action(), sk, t);
        const std::string diff = compare_quotient_transversal(q, sub, sk);
        checks_.push_back({"C/G axioms", validate_category(q.cat.cat).ok(), {}});
        checks_.push_back({"C/G grading", validate_grading(q.cat).ok(), {}});
        checks_.push_back({"C/G ≅ C_T[G]", diff.empty(), diff});
        checks_.push_back({"C_T[G] ⊂ C[G] fully faithful", sub.inclusion.fully_faithful, {}});
        checks_.push_back({"C_T[G] ⊂ C[G] dense", sub.inclusion.dense, {}});
        rep_.doc["summary"] = category_summary(q.cat.cat, &q.cat.degree);
        rep_.doc["output"] = io::to_document(group(), q.cat.cat, &q.cat.degree);
        status(true);
    }

    void hh_cmd()
    {
        json rows = json::array();
        if (job_.classes) {
            const auto gr = graded_for_classes();
            const auto cc = build_chain_complex(gr.cat, top(), job_.budget);
            for (const auto& cl : conjugacy_classes(group())) {
                const auto part = restrict_complex(cc.cx, chain_class_indices(gr, cc, cl));
                const auto h = homology_dims(part, top());
                for (std::size_t n = 0; n <= top(); ++n)
                    rows.push_back(homology_entry(n, class_label(group(), cl), part.dim[n], h[n], "plain", false));
            }
            const auto h = homology_dims(cc.cx, top());
            for (std::size_t n = 0; n <= top(); ++n)
                rows.push_back(homology_entry(n, "ALL", cc.cx.dim[n], h[n], "plain", false));
        } else if (job_.variant == "coinvariants") {
            const auto cc = build_chain_complex(cat(), top(), job_.budget);
            const auto q = coinvariants_complex(field_, cc.cx, chain_g_action(cat(), action(), cc), group().identity());
            const auto h = homology_dims(q.cx, top());
            for (std::size_t n = 0; n <= top(); ++n)
                rows.push_back(homology_entry(n, "ALL", q.cx.dim[n], h[n], "coinvariants", false));
        } else {
            const auto cc = build_chain_complex(cat(), top(), job_.budget);
            const auto h = homology_dims(cc.cx, top());
            for (std::size_t n = 0; n <= top(); ++n)
                rows.push_back(homology_entry(n, "ALL", cc.cx.dim[n], h[n], "plain", false));
        }
        rep_.doc["homology"] = rows;
        status(true);
    }

    void hhc_cmd()
    {
        json rows = json::array();
        if (job_.classes) {
            const auto gr = graded_for_classes();
            const auto cc = build_cochain_complex(gr.cat, top(), job_.budget);
            for (const auto& cl : conjugacy_classes(group())) {
                const auto part = restrict_complex(cc.cx, cochain_class_indices(gr, cc, cl));
                const auto h = cohomology_dims(part, top());
                for (std::size_t n = 0; n <= top(); ++n)
                    rows.push_back(homology_entry(n, class_label(group(), cl), part.dim[n], h[n], "plain", true));
            }
            const auto h = cohomology_dims(cc.cx, top());
            for (std::size_t n = 0; n <= top(); ++n)
                rows.push_back(homology_entry(n, "ALL", cc.cx.dim[n], h[n], "plain", true));
        } else if (job_.variant == "invariants") {
            const auto cc = build_cochain_complex(cat(), top(), job_.budget);
            const auto inv = invariants_complex(field_, cc.cx, cochain_g_action(cat(), action(), cc), group().identity());
            const auto h = cohomology_dims(inv.cx, top());
            for (std::size_t n = 0; n <= top(); ++n)
                rows.push_back(homology_entry(n, "ALL", inv.cx.dim[n], h[n], "invariants", true));
        } else {
            const auto cc = build_cochain_complex(cat(), top(), job_.budget);
            const auto h = cohomology_dims(cc.cx, top());
            for (std::size_t n = 0; n <= top(); ++n)
                rows.push_back(homology_entry(n, "ALL", cc.cx.dim[n], h[n], "plain", true));
        }
        rep_.doc["cohomology"] = rows;
        status(true);
    }

    /// Category complex against the Hochschild complex of a(C).
    void oracle_checks(std::size_t n_max)
    {
        const auto alg = algebra_of(cat());
        const auto hc = homology_dims(build_chain_complex(cat(), n_max, job_.budget).cx, n_max);
        const auto ha = homology_dims(build_chain_complex(alg, n_max, job_.budget).cx, n_max);
        const auto cc = cohomology_dims(build_cochain_complex(cat(), n_max, job_.budget).cx, n_max);
        const auto ca = cohomology_dims(build_cochain_complex(alg, n_max, job_.budget).cx, n_max);
        rep_.doc["oracle"] = {{"max_degree", n_max},
                              {"homology", {{"category", hc}, {"algebra", ha}}},
                              {"cohomology", {{"category", cc}, {"algebra", ca}}}};
        text_ << "oracle (n ≤ " << n_max << "): HH_* " << dims_text(hc) << " vs a(C) " << dims_text(ha) << ", HH^* "
              << dims_text(cc) << " vs a(C) " << dims_text(ca) << "\n";
        checks_.push_back(equal_dims("oracle: HH_n(C) = HH_n(a(C))", hc, ha));
        checks_.push_back(equal_dims("oracle: HH^n(C) = HH^n(a(C))", cc, ca));
    }

    void oracle_cmd()
    {
        oracle_checks(top());
        status(true);
    }

    std::vector<std::size_t> class_dims_chain(const GradedLinCat<F>& gr, const ChainComplex<F>& cc, const ConjClass& cl)
    {
        return homology_dims(restrict_complex(cc.cx, chain_class_indices(gr, cc, cl)), top());
    }
    std::vector<std::size_t> class_dims_cochain(const GradedLinCat<F>& gr, const CochainComplex<F>& cc,
                                                const ConjClass& cl)
    {
        return cohomology_dims(restrict_complex(cc.cx, cochain_class_indices(gr, cc, cl)), top());
    }

    /// Σ_D dims of the class pieces against the whole complex, and the
    /// leak check that makes the differentials block diagonal.
    template <class Indices>
    void decomposition_checks(const std::string& what, const Complex<K>& cx, const std::vector<ConjClass>& cls,
                              Indices&& indices, json& table)
    {
        std::vector<std::size_t> chain_sum(cx.dim.size(), 0), hom_sum(top() + 1, 0);
        Check block{what + ": differentials block diagonal over classes", true, {}};
        for (const auto& cl : cls) {
            const auto keep = indices(cl);
            for (std::size_t n = 0; n < keep.size(); ++n) chain_sum[n] += keep[n].size();
            try {
                const auto part = restrict_complex(cx, keep, class_label(group(), cl));
                const auto h = homology_dims(part, top());
                for (std::size_t n = 0; n <= top(); ++n) {
                    hom_sum[n] += h[n];
                    table.push_back(homology_entry(n, class_label(group(), cl), part.dim[n], h[n], "plain", cx.cochain));
                }
                if (auto bad = first_nonzero_square(part)) {
                    block.pass = false;
                    block.witness = "d∘d != 0 on class " + class_label(group(), cl) + " at degree " + std::to_string(*bad);
                }
            } catch (const LeakError& e) {
                block.pass = false;
                block.witness = e.what();
            }
        }
        checks_.push_back(block);
        checks_.push_back(equal_dims(what + ": Σ_D dim C_D = dim C", chain_sum, cx.dim));
        checks_.push_back(equal_dims(what + ": Σ_D dim H_D = dim H", hom_sum, homology_dims(cx, top())));
    }

    void verify_cmd()
    {
        require_exactness();
        const FinGroup& g = group();
        const auto cls = conjugacy_classes(g);
        const auto t = transversal();
        rep_.doc["free"] = t.free;
        text_ << "action on objects is " << (t.free ? "free" : "not free") << "\n";

        const auto sk = skew(cat(), action());
        const auto ccC = build_chain_complex(cat(), top(), job_.budget);
        const auto ccS = build_chain_complex(sk.cat.cat, top(), job_.budget);
        const auto cocC = build_cochain_complex(cat(), top(), job_.budget);
        const auto cocS = build_cochain_complex(sk.cat.cat, top(), job_.budget);
        {
            Check dd{"d∘d = 0 on every built complex", true, {}};
            for (const auto* cx : {&ccC.cx, &ccS.cx, &cocC.cx, &cocS.cx})
                if (auto bad = first_nonzero_square(*cx)) {
                    dd.pass = false;
                    dd.witness = "degree " + std::to_string(*bad);
                }
            checks_.push_back(dd);
        }

        // class decomposition of C[G]
        json hom_rows = json::array(), coh_rows = json::array();
        decomposition_checks("C_•(C[G])", ccS.cx, cls,
                             [&](const ConjClass& cl) { return chain_class_indices(sk.cat, ccS, cl); }, hom_rows);
        decomposition_checks("C^•(C[G])", cocS.cx, cls,
                             [&](const ConjClass& cl) { return cochain_class_indices(sk.cat, cocS, cl); }, coh_rows);

        // (co)invariants of C
        const auto actC = chain_g_action(cat(), action(), ccC);
        const auto coinv = coinvariants_complex(field_, ccC.cx, actC, g.identity());
        const auto coinv_dims = homology_dims(coinv.cx, top());
        const auto cactC = cochain_g_action(cat(), action(), cocC);
        const auto inv = invariants_complex(field_, cocC.cx, cactC, g.identity());
        const auto inv_dims = cohomology_dims(inv.cx, top());
        for (std::size_t n = 0; n <= top(); ++n) {
            hom_rows.push_back(homology_entry(n, "ALL", coinv.cx.dim[n], coinv_dims[n], "coinvariants", false));
            coh_rows.push_back(homology_entry(n, "ALL", inv.cx.dim[n], inv_dims[n], "invariants", true));
        }
        const auto triv_h = class_dims_chain(sk.cat, ccS, cls[0]);
        const auto triv_c = class_dims_cochain(sk.cat, cocS, cls[0]);
        checks_.push_back(equal_dims("dim H_n(C_•(C)_G) = dim HH_n^{1}(C[G])", coinv_dims, triv_h));
        checks_.push_back(equal_dims("dim H^n(C^•(C)^G) = dim HH^n_{1}(C[G])", inv_dims, triv_c));

        if (t.free) {
            const auto ci = transversal_chain_iso(cat(), action(), t, top(), job_.budget);
            for (const auto& c : ci.checks) checks_.push_back(prefixed("chain A/B: ", c));
            const auto co = transversal_cochain_iso(cat(), action(), t, top(), job_.budget, job_.cup_samples, job_.seed);
            for (const auto& c : co.checks) checks_.push_back(prefixed("cochain A/B: ", c));
            inclusion_checks(sk, t, cocS, cls);
        } else {
            non_free_pipelines(sk, ccS, cocS, cls, coinv_dims, inv_dims);
        }

        // cup laws on C and on C[G]
        struct Target {
            const char* label;
            const LinCat<F>* cat;
            const CochainComplex<F>* cc;
        };
        for (const Target& tg : {Target{"C", &cat(), &cocC}, Target{"C[G]", &sk.cat.cat, &cocS}}) {
            const std::string p = std::string("cup on ") + tg.label + ": ";
            for (const auto& ch : cup_law_checks(*tg.cat, *tg.cc, job_.cup_samples, job_.seed))
                checks_.push_back(prefixed(p, ch));
            checks_.push_back(prefixed(p, graded_commutativity_check(*tg.cat, *tg.cc, job_.cup_samples / 2, job_.seed + 1)));
        }
        checks_.push_back(class1_cup_closure(sk, cocS, cls[0]));

        oracle_checks(std::min<std::size_t>(top(), 1));
        rep_.doc["homology"] = hom_rows;
        rep_.doc["cohomology"] = coh_rows;
        status(true);
    }

    static Check prefixed(const std::string& p, Check c)
    {
        c.name = p + c.name;
        return c;
    }

    /// Class {1} of C^•(C[G]) is closed under cup, on sampled pairs.
    Check class1_cup_closure(const SkewOutput<F>& sk, const CochainComplex<F>& cc, const ConjClass& one)
    {
        Check c{"class-{1} cochains of C[G] closed under cup", true, {}};
        const auto keep = cochain_class_indices(sk.cat, cc, one);
        std::vector<std::vector<char>> in(keep.size());
        for (std::size_t n = 0; n < keep.size(); ++n) {
            in[n].assign(cc.basis[n].size(), 0);
            for (auto k : keep[n]) in[n][k] = 1;
        }
        std::mt19937_64 rng(job_.seed + 2);
        const std::size_t deg = cc.basis.size();
        for (std::size_t s = 0; s < job_.cup_samples && c.pass; ++s) {
            const std::size_t p = rng() % deg, q = rng() % (deg - p);
            if (keep[p].empty() || keep[q].empty()) continue;
            const std::size_t i = keep[p][rng() % keep[p].size()], j = keep[q][rng() % keep[q].size()];
            for (const auto& e : cup(sk.cat.cat, cc, p, SparseVec<K>{{i, field_.one()}}, q, SparseVec<K>{{j, field_.one()}}))
                if (!in[p + q][e.index]) {
                    c.pass = false;
                    c.witness = format_cochain(sk.cat.cat, cc.basis[p].word(i)) + " ⌣ " +
                                format_cochain(sk.cat.cat, cc.basis[q].word(j));
                    break;
                }
        }
        return c;
    }

    /// Restriction along C_T[G] ⊂ C[G]: class-preserving, equal class dims.
    void inclusion_checks(const SkewOutput<F>& sk, const Transversal& t, const CochainComplex<F>& cocS,
                          const std::vector<ConjClass>& cls)
    {
        const auto sub = transversal_subcategory(cat(), action(), sk, t);
        const auto cocT = build_cochain_complex(sub.cat.cat, top(), job_.budget);
        const auto r = restrict_along_functor(sub.cat.cat, sk.cat.cat, sub.inclusion, cocT, cocS);
        checks_.push_back(commutes<K>("restriction along C_T[G] ⊂ C[G] is a cochain map",
                                      std::vector<Matrix<K>>(cocT.cx.map.begin(), cocT.cx.map.end()),
                                      std::vector<Matrix<K>>(r.begin(), r.end() - 1),
                                      std::vector<Matrix<K>>(r.begin() + 1, r.end()),
                                      std::vector<Matrix<K>>(cocS.cx.map.begin(), cocS.cx.map.end())));
        Check cp{"restriction along C_T[G] ⊂ C[G] preserves classes", true, {}};
        Check dims{"dim HH^n_D(C_T[G]) = dim HH^n_D(C[G]) for every class D", true, {}};
        for (const auto& cl : cls) {
            const auto ks = cochain_class_indices(sk.cat, cocS, cl);
            const auto kt = cochain_class_indices(sub.cat, cocT, cl);
            std::string w;
            if (cp.pass && !preserves(r, ks, kt, w)) {
                cp.pass = false;
                cp.witness = "class " + class_label(group(), cl) + ", " + w;
            }
            const auto a = class_dims_cochain(sub.cat, cocT, cl), b = class_dims_cochain(sk.cat, cocS, cl);
            if (dims.pass && a != b) {
                dims.pass = false;
                dims.witness = "class " + class_label(group(), cl) + ": " + dims_text(a) + " vs " + dims_text(b);
            }
        }
        checks_.push_back(cp);
        checks_.push_back(dims);
    }

    /// Non-free actions go through M_G(C), where the action is free, and
    /// come back along L and L[G].
    void non_free_pipelines(const SkewOutput<F>& sk, const ChainComplex<F>& ccS, const CochainComplex<F>& cocS,
                            const std::vector<ConjClass>& cls, const std::vector<std::size_t>& coinv_dims,
                            const std::vector<std::size_t>& inv_dims)
    {
        const FinGroup& g = group();
        const auto mg = matrix_category(cat(), action());
        checks_.push_back({"L : M_G(C) → C fully faithful and dense", mg.functor_L.fully_faithful && mg.functor_L.dense, {}});
        const auto tm = orbits_transversal(g, mg.action.objects);
        const auto skm = skew(mg.cat, mg.action);
        const auto lg = skew_of_functor(skm, sk, mg.functor_L);
        {
            bool homogeneous = true;
            for (std::size_t m = 0; m < lg.mor_map.size(); ++m)
                for (const auto& e : lg.mor_map[m]) homogeneous = homogeneous && sk.cat.degree[e.index] == skm.cat.degree[m];
            checks_.push_back({"L[G] is homogeneous of degree 1", homogeneous, {}});
            checks_.push_back({"L[G] fully faithful", is_fully_faithful(skm.cat.cat, sk.cat.cat, lg), {}});
        }

        // chains
        const auto ci = transversal_chain_iso(mg.cat, mg.action, tm, top(), job_.budget);
        for (const auto& c : ci.checks) checks_.push_back(prefixed("chain A/B on M_G(C): ", c));
        const auto ccM = build_chain_complex(mg.cat, top(), job_.budget);
        const auto ccC = build_chain_complex(cat(), top(), job_.budget);
        const auto push = chain_pushforward(mg.cat, mg.functor_L, ccM, ccC);
        checks_.push_back(commutes<K>("C_•(L) is a chain map", std::vector<Matrix<K>>(ccC.cx.map.begin() + 1, ccC.cx.map.end()),
                                      std::vector<Matrix<K>>(push.begin() + 1, push.end()),
                                      std::vector<Matrix<K>>(push.begin(), push.end() - 1),
                                      std::vector<Matrix<K>>(ccM.cx.map.begin() + 1, ccM.cx.map.end())));
        {
            const auto am = chain_g_action(mg.cat, mg.action, ccM);
            const auto ac = chain_g_action(cat(), action(), ccC);
            Check eq{"C_•(L) is G-equivariant", true, {}};
            for (std::size_t s = 0; s < g.order() && eq.pass; ++s) {
                auto c = commutes<K>("", push, am[s], ac[s], push);
                if (!c.pass) {
                    eq.pass = false;
                    eq.witness = "s=" + g.name(s) + ", " + c.witness;
                }
            }
            checks_.push_back(eq);
        }
        const auto ccSM = build_chain_complex(skm.cat.cat, top(), job_.budget);
        const auto pushG = chain_pushforward(skm.cat.cat, lg, ccSM, ccS);
        checks_.push_back(commutes<K>("C_•(L[G]) is a chain map",
                                      std::vector<Matrix<K>>(ccS.cx.map.begin() + 1, ccS.cx.map.end()),
                                      std::vector<Matrix<K>>(pushG.begin() + 1, pushG.end()),
                                      std::vector<Matrix<K>>(pushG.begin(), pushG.end() - 1),
                                      std::vector<Matrix<K>>(ccSM.cx.map.begin() + 1, ccSM.cx.map.end())));
        {
            Check cp{"C_•(L[G]) preserves classes", true, {}};
            for (const auto& cl : cls) {
                std::string w;
                if (!preserves(pushG, chain_class_indices(skm.cat, ccSM, cl), chain_class_indices(sk.cat, ccS, cl), w)) {
                    cp.pass = false;
                    cp.witness = "class " + class_label(g, cl) + ", " + w;
                    break;
                }
            }
            checks_.push_back(cp);
        }
        const auto triv_m = class_dims_chain(skm.cat, ccSM, cls[0]);
        checks_.push_back(equal_dims("dim H_n(C_•(C)_G) = dim H_n(C_•(M_G C)_G)", coinv_dims, ci.coinvariant_dims));
        checks_.push_back(equal_dims("dim HH_n^{1}(M_G(C)_T[G]) = dim HH_n^{1}(M_G(C)[G])", ci.trivial_class_dims, triv_m));
        checks_.push_back(equal_dims("dim HH_n^{1}(M_G(C)[G]) = dim HH_n^{1}(C[G])", triv_m,
                                     class_dims_chain(sk.cat, ccS, cls[0])));

        // cochains
        const auto co = transversal_cochain_iso(mg.cat, mg.action, tm, top(), job_.budget, job_.cup_samples, job_.seed);
        for (const auto& c : co.checks) checks_.push_back(prefixed("cochain A/B on M_G(C): ", c));
        const auto cocM = build_cochain_complex(mg.cat, top(), job_.budget);
        const auto cocC = build_cochain_complex(cat(), top(), job_.budget);
        const auto r = restrict_along_functor(mg.cat, cat(), mg.functor_L, cocM, cocC);
        checks_.push_back(commutes<K>("C^•(L) is a cochain map",
                                      std::vector<Matrix<K>>(cocM.cx.map.begin(), cocM.cx.map.end()),
                                      std::vector<Matrix<K>>(r.begin(), r.end() - 1),
                                      std::vector<Matrix<K>>(r.begin() + 1, r.end()),
                                      std::vector<Matrix<K>>(cocC.cx.map.begin(), cocC.cx.map.end())));
        {
            const auto am = cochain_g_action(mg.cat, mg.action, cocM);
            const auto ac = cochain_g_action(cat(), action(), cocC);
            Check eq{"C^•(L) is G-equivariant", true, {}};
            for (std::size_t s = 0; s < g.order() && eq.pass; ++s) {
                auto c = commutes<K>("", am[s], r, r, ac[s]);
                if (!c.pass) {
                    eq.pass = false;
                    eq.witness = "s=" + g.name(s) + ", " + c.witness;
                }
            }
            checks_.push_back(eq);
            const auto invM = invariants_complex(field_, cocM.cx, am, g.identity());
            checks_.push_back(equal_dims("dim H^n(C^•(C)^G) = dim H^n(C^•(M_G C)^G)", inv_dims, cohomology_dims(invM.cx, top())));
        }
        checks_.push_back(equal_dims("dim H^n(C^•(M_G C)^G) = dim HH^n_{1}(M_G(C)_T[G])", co.invariant_dims,
                                     co.trivial_class_dims));
        const auto cocSM = build_cochain_complex(skm.cat.cat, top(), job_.budget);
        const auto rG = restrict_along_functor(skm.cat.cat, sk.cat.cat, lg, cocSM, cocS);
        checks_.push_back(commutes<K>("C^•(L[G]) is a cochain map",
                                      std::vector<Matrix<K>>(cocSM.cx.map.begin(), cocSM.cx.map.end()),
                                      std::vector<Matrix<K>>(rG.begin(), rG.end() - 1),
                                      std::vector<Matrix<K>>(rG.begin() + 1, rG.end()),
                                      std::vector<Matrix<K>>(cocS.cx.map.begin(), cocS.cx.map.end())));
        Check cp{"C^•(L[G]) preserves classes", true, {}};
        Check dims{"dim HH^n_D(M_G(C)[G]) = dim HH^n_D(C[G]) for every class D", true, {}};
        for (const auto& cl : cls) {
            std::string w;
            if (cp.pass &&
                !preserves(rG, cochain_class_indices(sk.cat, cocS, cl), cochain_class_indices(skm.cat, cocSM, cl), w)) {
                cp.pass = false;
                cp.witness = "class " + class_label(g, cl) + ", " + w;
            }
            const auto a = class_dims_cochain(skm.cat, cocSM, cl), b = class_dims_cochain(sk.cat, cocS, cl);
            if (dims.pass && a != b) {
                dims.pass = false;
                dims.witness = "class " + class_label(g, cl) + ": " + dims_text(a) + " vs " + dims_text(b);
            }
        }
        checks_.push_back(cp);
        checks_.push_back(dims);
        checks_.push_back(equal_dims("dim HH_n(M_G(C)) = dim HH_n(C)", homology_dims(ccM.cx, top()), homology_dims(ccC.cx, top())));
        checks_.push_back(
            equal_dims("dim HH^n(M_G(C)) = dim HH^n(C)", cohomology_dims(cocM.cx, top()), cohomology_dims(cocC.cx, top())));
    }
};

} // namespace detail

/// Runs one subcommand. Errors become a report with status "error" and
/// the matching exit code; nothing is thrown.
inline Report run(const Job& job)
{
    Report rep;
    rep.doc["command"] = job.command;
    rep.doc["input"] = job.input;
    rep.doc["max_degree"] = job.max_degree;
    const std::size_t saved = default_threads();
    default_threads() = std::max<std::size_t>(1, job.threads);
    auto error = [&](int code, const std::string& kind, const std::string& msg) {
        rep.doc["status"] = "error";
        rep.doc["error"] = {{"kind", kind}, {"message", msg}};
        rep.text += kind + ": " + msg + "\n";
        rep.exit_code = code;
    };
    try {
        const io::Document doc = job.document ? *job.document : io::load_document(job.input);
        const io::FieldSpec fs = io::parse_field_spec(job.field ? *job.field : doc.field.value_or("p:101"));
        rep.doc["field"] = fs.name();
        if (fs.rational) {
            detail::Runner<RationalField>(job, doc, RationalField{}, rep).run();
        } else {
            detail::Runner<PrimeField>(job, doc, PrimeField(fs.prime), rep).run();
        }
    } catch (const BudgetExceeded& e) {
        error(exit_code::budget, "budget exceeded", e.what());
    } catch (const InputError& e) {
        error(exit_code::input, "input error", e.what());
    } catch (const FieldMismatch& e) {
        error(exit_code::input, "input error", e.what());
    } catch (const NonFreeAction& e) {
        error(exit_code::input, "non-free action", e.what());
    } catch (const NotFullyFaithful& e) {
        error(exit_code::input, "not fully faithful", e.what());
    } catch (const Error& e) {
        error(exit_code::failed, "verification failure", e.what());
    }
    default_threads() = saved;
    return rep;
}

} // namespace skewcat
