#include "bitideal/selftest.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "bitideal/errors.hpp"
#include "bitideal/ideal.hpp"

namespace bitideal {

namespace {

// Exhaustive for small carriers; a fixed-seed sample of nonempty subsets
// otherwise, so that every run checks the same sets.
std::vector<Subset> subset_pool(int m, int sample = 500) {
    std::vector<Subset> out;
    if (m <= 6) {
        for (std::uint64_t bits = 1; bits < (1ull << m); ++bits) out.emplace_back(m, bits);
        return out;
    }
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<std::uint64_t> dist(1, (1ull << m) - 1);
    for (int k = 0; k < sample; ++k) out.emplace_back(m, dist(rng));
    return out;
}

struct Harness {
    SuiteResult* suite = nullptr;
    Budget* budget = nullptr;

    void check(bool ok, const std::string& what) {
        ++suite->checks;
        if (!ok) suite->failures.push_back(what);
    }
};

using SuiteFn = std::function<void(Harness&)>;

void for_each_model(const std::function<void(const VarietySpec&, const FiniteAlgebra&)>& fn) {
    for (const auto& name : builtin_names()) {
        VarietySpec spec = builtin(name);
        for (const auto& alg : spec.bundled) fn(spec, alg);
    }
}

std::string tag(const FiniteAlgebra& alg, const std::string& what) {
    return alg.name() + ": " + what;
}

// ----------------------------------------------------------------- suites

void suite_witness(Harness& h) {
    for_each_model([&](const VarietySpec& spec, const FiniteAlgebra& alg) {
        WitnessReport rep = verify_witness(alg, spec.witness, h.budget);
        h.check(rep.ok, tag(alg, "witness identities"));
    });
    // a deliberately broken witness must fail with a concrete assignment
    VarietySpec g = builtin("group");
    BitWitness bad = g.witness;
    bad.theta = parse_term("x2", g.sig);
    WitnessReport rep = verify_witness(*g.find_bundled("Z4"), bad, h.budget);
    h.check(!rep.ok && !rep.failures.empty() && !rep.failures.front().assignment.empty(),
            "broken witness rejected with counter-assignment");
}

void suite_termcore(Harness& h) {
    for (const auto& name : builtin_names()) {
        VarietySpec spec = builtin(name);
        for (Variant v : {Variant::I, Variant::II, Variant::III, Variant::IV}) {
            TermSet ts = gen_termset(spec, v, false);
            for (const auto& e : ts.entries) {
                std::string s = print_term(e.term);
                h.check(parse_term(s, spec.sig) == e.term, name + ": round-trip " + s);
                h.check(validate_term(spec.sig, e.term).empty(), name + ": validates " + s);
            }
        }
    }
}

void suite_soundness(Harness& h) {
    // every generated term is a 0-ideal term on every bundled model
    for (const auto& name : builtin_names()) {
        VarietySpec spec = builtin(name);
        std::vector<TermSet> sets;
        for (Variant v : {Variant::I, Variant::II, Variant::III, Variant::IV}) {
            sets.push_back(gen_termset(spec, v, false));
            if (spec.semiabelian) sets.push_back(gen_termset(spec, v, true));
        }
        for (const auto& alg : spec.bundled) {
            int zero = zero_element(alg, spec.witness);
            for (const auto& ts : sets)
                for (const auto& e : ts.entries)
                    h.check(is_zero_ideal_term(alg, zero, e.term, h.budget),
                            tag(alg, "0-ideal term " + print_term(e.term)));
        }
    }
}

void suite_cardinality(Harness& h) {
    VarietySpec g = builtin("group"), r = builtin("ring");
    h.check(gen_termset(g, Variant::IV, false).entries.size() == 6, "group set iv has 6 terms");
    h.check(gen_termset(r, Variant::IV, false).entries.size() == 8, "ring set iv has 8 terms");
    h.check(gen_termset(g, Variant::I, false).entries.size() == 6, "group set i has 6 terms");
    VarietySpec l = builtin("loop");
    h.check(gen_termset(l, Variant::I, false).entries.size() == 7, "loop set i has 7 terms");
    h.check(gen_termset(l, Variant::IV, false).entries.size() == 9, "loop set iv has 9 terms");
}

// Two term sets determine the same closed subsets of alg.
void same_determining_power(Harness& h, const FiniteAlgebra& alg, const TermSet& ours,
                            const TermSet& reference, const std::string& what) {
    for (const Subset& s : subset_pool(alg.size())) {
        bool a = closed_under(alg, ours, s, h.budget).ok;
        bool b = closed_under(alg, reference, s, h.budget).ok;
        if (a != b) {
            std::ostringstream os;
            os << tag(alg, what) << " differ on {";
            for (int x : s.members()) os << x << ",";
            os << "}";
            h.check(false, os.str());
            return;
        }
    }
    h.check(true, tag(alg, what));
}

void suite_termlists(Harness& h) {
    auto set_of = [](const VarietySpec& spec, std::initializer_list<const char*> terms) {
        std::vector<Term> parsed;
        for (const char* t : terms) parsed.push_back(parse_term(t, spec.sig));
        return termset_from_terms(spec.sig, parsed, "reference");
    };

    VarietySpec g = builtin("group");
    TermSet group_ref = set_of(g, {"mul(y1,y2)", "mul(mul(x1,y1),inv(x1))",
                                   "mul(mul(inv(x1),inv(y1)),x1)", "y1"});
    TermSet group_iv = gen_termset(g, Variant::IV, false);
    same_determining_power(h, *g.find_bundled("S3"), group_iv, group_ref, "group iv vs classic");
    same_determining_power(h, *g.find_bundled("D4"), group_iv, group_ref, "group iv vs classic");

    VarietySpec r = builtin("ring");
    TermSet ring_ref = set_of(r, {"add(y1,y2)", "neg(y1)", "mul(x1,y1)", "mul(y1,x1)"});
    TermSet ring_iv = gen_termset(r, Variant::IV, false);
    for (const auto& alg : r.bundled)
        same_determining_power(h, alg, ring_iv, ring_ref, "ring iv vs classic");

    VarietySpec l = builtin("loop");
    TermSet loop_i = gen_termset(l, Variant::I, false);
    TermSet loop_ref = set_of(
        l, {"mul(y1,y2)", "rdiv(y1,y2)", "rdiv(mul(mul(y1,x1),mul(y2,x2)),mul(x1,x2))",
            "rdiv(rdiv(mul(y1,x1),mul(y2,x2)),rdiv(x1,x2))",
            "rdiv(ldiv(mul(y1,x1),mul(y2,x2)),ldiv(x1,x2))"});
    TermSet bruck = set_of(
        l, {"mul(y1,y2)", "rdiv(mul(mul(y1,x1),x2),mul(x1,x2))",
            "rdiv(mul(x1,mul(y1,x2)),mul(x1,x2))", "rdiv(rdiv(mul(y1,x1),x2),rdiv(x1,x2))",
            "rdiv(ldiv(x1,mul(y1,x2)),ldiv(x1,x2))", "rdiv(y1,y2)", "ldiv(y1,y2)"});
    for (const auto& alg : l.bundled) {
        same_determining_power(h, alg, loop_i, loop_ref, "loop i vs reference list");
        same_determining_power(h, alg, loop_i, bruck, "loop i vs bruck list");
    }

    VarietySpec sl = builtin("semiloop");
    TermSet sl_i = gen_termset(sl, Variant::I, false);
    TermSet sl_ref = set_of(sl, {"mul(y1,y2)", "rdiv(y1,y2)",
                                 "rdiv(mul(x1,x2),mul(mul(y1,x1),mul(y2,x2)))",
                                 "rdiv(rdiv(x1,x2),rdiv(mul(y1,x1),mul(y2,x2)))"});
    for (const auto& alg : sl.bundled)
        same_determining_power(h, alg, sl_i, sl_ref, "semiloop i vs reference list");

    VarietySpec dg = builtin("div_inv_groupoid");
    TermSet dg_i = gen_termset(dg, Variant::I, false);
    TermSet dg_ref = set_of(dg, {"mul(y1,y2)", "rdiv(y1,y2)",
                                 "rdiv(mul(mul(y1,x1),mul(y2,x2)),mul(x1,x2))",
                                 "rdiv(rdiv(mul(y1,x1),mul(y2,x2)),rdiv(x1,x2))"});
    for (const auto& alg : dg.bundled)
        same_determining_power(h, alg, dg_i, dg_ref, "groupoid i vs reference list");
}

void suite_thm25(Harness& h) {
    for_each_model([&](const VarietySpec& spec, const FiniteAlgebra& alg) {
        int zero = zero_element(alg, spec.witness);
        std::vector<TermSet> sets;
        for (Variant v : {Variant::I, Variant::II, Variant::III, Variant::IV})
            sets.push_back(gen_termset(spec, v, false));
        for (const Subset& s : subset_pool(alg.size())) {
            bool oracle = is_ideal_oracle(alg, zero, s, h.budget);
            bool agree = true;
            for (Cond c : {Cond::I, Cond::II, Cond::III, Cond::IV, Cond::V, Cond::VI, Cond::VII})
                agree = agree &&
                        check_condition(alg, spec.witness, s, c, false, h.budget).ok == oracle;
            for (const auto& ts : sets)
                agree = agree && closed_under(alg, ts, s, h.budget).ok == oracle;
            std::ostringstream os;
            os << tag(alg, "all conditions agree on mask ") << s.mask();
            h.check(agree, os.str());
            if (!agree) return;
        }
    });
}

void suite_lemma22(Harness& h) {
    for_each_model([&](const VarietySpec& spec, const FiniteAlgebra& alg) {
        int zero = zero_element(alg, spec.witness);
        bool ok = true;
        for (const Subset& s : subset_pool(alg.size())) {
            if (!s.contains(zero)) continue;
            for (int a = 0; a < alg.size() && ok; ++a)
                ok = eq_class(alg, spec.witness, s, a, h.budget)
                         .subset_of(theta_image(alg, spec.witness, s, a, h.budget));
            if (!ok) break;
        }
        h.check(ok, tag(alg, "class within theta image whenever 0 in H"));
    });
}

void suite_lemma23(Harness& h) {
    for_each_model([&](const VarietySpec& spec, const FiniteAlgebra& alg) {
        const BitWitness& w = spec.witness;
        int zero = zero_element(alg, w);
        // hypothesis: 0 in H, H closed under theta and alpha_i(-, 0)
        std::vector<Term> hyp;
        std::vector<Term> block;
        for (int l = 1; l <= w.n + 1; ++l) block.push_back(Term::y(l));
        hyp.push_back(theta_term(w, block));
        for (int i = 0; i < w.n; ++i) hyp.push_back(alpha_term(w, i, Term::y(1), w.zero));
        TermSet hyp_set = termset_from_terms(spec.sig, hyp, "hypothesis");

        bool ok = true;
        for (const Subset& s : subset_pool(alg.size())) {
            if (!s.contains(zero)) continue;
            if (!closed_under(alg, hyp_set, s, h.budget).ok) continue;
            if (theta_image(alg, w, s, zero, h.budget) != s) {
                ok = false;
                break;
            }
        }
        h.check(ok, tag(alg, "theta(H,...,H,0) equals H under the closure hypothesis"));
    });
}

void suite_lemma24(Harness& h) {
    for_each_model([&](const VarietySpec& spec, const FiniteAlgebra& alg) {
        const BitWitness& w = spec.witness;
        int zero = zero_element(alg, w);
        bool ok = true;
        for (const Subset& s : subset_pool(alg.size())) {
            bool i_holds = inclusion_2_1(alg, w, s, h.budget);

            bool ii_holds = true;
            Partition sim = sim_relation(alg, w, s, h.budget);
            for (int a = 0; a < alg.size() && ii_holds; ++a)
                ii_holds = sim.block_of(a) == theta_image(alg, w, s, a, h.budget);
            for (int a = 0; a < alg.size() && ii_holds; ++a)
                for (int b = 0; b < alg.size() && ii_holds; ++b) {
                    if (!sim.same(a, b)) continue;
                    for (int i = 0; i < w.n; ++i) {
                        int v = eval_term(alg, alpha_term(w, i, Term::x(1), Term::x(2)),
                                          {{{VarKind::X, 1}, a}, {{VarKind::X, 2}, b}}, h.budget);
                        if (!s.contains(v)) ii_holds = false;
                    }
                }

            if (i_holds != ii_holds || (i_holds && !s.contains(zero))) {
                ok = false;
                break;
            }
        }
        h.check(ok, tag(alg, "conditions (i) and (ii) equivalent and imply 0 in H"));
    });
}

void suite_prop21(Harness& h) {
    for_each_model([&](const VarietySpec& spec, const FiniteAlgebra& alg) {
        int zero = zero_element(alg, spec.witness);
        bool ok = true;
        for (const Subset& s : list_ideals(alg, zero, h.budget))
            for (int a = 0; a < alg.size() && ok; ++a)
                for (int b = 0; b < alg.size() && ok; ++b)
                    ok = prop21_check(alg, spec.witness, s, a, b, h.budget).all_equal();
        h.check(ok, tag(alg, "four characterizations agree on every ideal"));
    });
}

void suite_counterexample(Harness& h) {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = *g.find_bundled("S3");
    Subset sub = Subset::of(6, {0, 3});
    h.check(is_subalgebra(s3, sub), "the two-element subgroup is a subalgebra");
    h.check(inclusion_2_1(s3, g.witness, sub, h.budget), "it satisfies the inclusion");
    bool rejected = !is_ideal_oracle(s3, 0, sub, h.budget);
    for (Cond c : {Cond::I, Cond::II, Cond::III, Cond::IV, Cond::V, Cond::VI, Cond::VII})
        rejected = rejected && !check_condition(s3, g.witness, sub, c, false, h.budget).ok;
    h.check(rejected, "yet every ideal condition rejects it");
}

void suite_minimality(Harness& h) {
    for_each_model([&](const VarietySpec& spec, const FiniteAlgebra& alg) {
        int zero = zero_element(alg, spec.witness);
        TermSet ts = gen_termset(spec, Variant::IV, false);
        auto ideals = list_ideals(alg, zero, h.budget);
        bool ok = true;
        for (std::uint64_t bits = 0; bits < (1ull << std::min(alg.size(), 6)) && ok; ++bits) {
            Subset seed(alg.size(), bits);
            Subset closure = ideal_closure(alg, ts, seed, zero, h.budget);
            Subset expect = Subset::full(alg.size());
            for (const Subset& ideal : ideals)
                if (seed.subset_of(ideal))
                    expect = Subset(alg.size(), expect.mask() & ideal.mask());
            ok = closure == expect;
        }
        h.check(ok, tag(alg, "closure equals intersection of covering ideals"));
    });
}

void suite_census(Harness& h) {
    VarietySpec g = builtin("group"), r = builtin("ring");
    auto count = [&](const VarietySpec& spec, const std::string& name) {
        const FiniteAlgebra& alg = *spec.find_bundled(name);
        return list_ideals(alg, zero_element(alg, spec.witness), h.budget).size();
    };
    h.check(count(g, "S3") == 3, "S3 has 3 ideals");
    h.check(count(g, "Z4") == 3, "Z4 has 3 ideals");
    h.check(count(g, "V4") == 5, "V4 has 5 ideals");
    h.check(count(g, "D4") == 6, "D4 has 6 ideals");
    h.check(count(r, "Z4ring") == 3, "Z4 ring has 3 ideals");
    h.check(count(r, "Z6ring") == 4, "Z6 ring has 4 ideals");
}

void suite_cor29(Harness& h) {
    struct Case {
        const char* base;
        const char* ext;
    };
    for (const Case& c : {Case{"group", "omega_group_demo"}, Case{"loop", "omega_loop_demo"}}) {
        VarietySpec base = builtin(c.base);
        VarietySpec ext = builtin(c.ext);
        TermSet ext_a = extend_termset(gen_termset(base, Variant::I, false), ext, 'a');
        TermSet ext_b = extend_termset(gen_termset(base, Variant::IV, false), ext, 'b');
        TermSet direct_i = gen_termset(ext, Variant::I, false);
        TermSet direct_iv = gen_termset(ext, Variant::IV, false);
        for (const auto& alg : ext.bundled) {
            int zero = zero_element(alg, ext.witness);
            bool ok = true;
            for (const Subset& s : subset_pool(alg.size())) {
                bool oracle = is_ideal_oracle(alg, zero, s, h.budget);
                ok = ok && closed_under(alg, ext_a, s, h.budget).ok == oracle &&
                     closed_under(alg, ext_b, s, h.budget).ok == oracle &&
                     closed_under(alg, direct_i, s, h.budget).ok == oracle &&
                     closed_under(alg, direct_iv, s, h.budget).ok == oracle;
                if (!ok) break;
            }
            h.check(ok, tag(alg, "extended sets match direct verdicts"));
        }
    }
}

void suite_rightcancel(Harness& h) {
    for (const char* name : {"group", "ring", "omega_group_demo"}) {
        VarietySpec spec = builtin(name);
        for (const auto& alg : spec.bundled)
            h.check(right_cancellable(alg, spec.witness, h.budget), tag(alg, "right cancellable"));
    }
}

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"witness", suite_witness},
        {"termcore", suite_termcore},
        {"soundness", suite_soundness},
        {"cardinality", suite_cardinality},
        {"termlists", suite_termlists},
        {"thm25", suite_thm25},
        {"lemma22", suite_lemma22},
        {"lemma23", suite_lemma23},
        {"lemma24", suite_lemma24},
        {"prop21", suite_prop21},
        {"counterexample", suite_counterexample},
        {"minimality", suite_minimality},
        {"census", suite_census},
        {"cor29", suite_cor29},
        {"rightcancel", suite_rightcancel},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& selftest_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : suite_table()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<SuiteResult> run_selftest(const std::string& filter, Budget* budget) {
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : suite_table()) {
        if (!filter.empty() && name.find(filter) == std::string::npos) continue;
        SuiteResult result;
        result.name = name;
        Harness h{&result, budget};
        fn(h);
        out.push_back(std::move(result));
    }
    if (out.empty()) throw InputError("no selftest suite matches '" + filter + "'");
    return out;
}

}  // namespace bitideal
