#include <set>

#include "bitideal/errors.hpp"
#include "bitideal/ideal.hpp"
#include "doctest.h"

using namespace bitideal;

TEST_CASE("theta_image and eq_class on S3") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = *g.find_bundled("S3");
    Subset h = Subset::of(6, {0, 3});  // the subgroup {e,(12)}
    // theta(H, a) = H a, the right coset
    CHECK(theta_image(s3, g.witness, h, 0) == h);
    Subset coset1 = theta_image(s3, g.witness, h, 1);
    CHECK(coset1.size() == 2);
    CHECK(coset1.contains(1));
    CHECK(eq_class(s3, g.witness, h, 0) == sim_relation(s3, g.witness, h).block_of(0));
}

TEST_CASE("sim_relation partitions into right cosets") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = *g.find_bundled("S3");
    Partition p = sim_relation(s3, g.witness, Subset::of(6, {0, 3}));
    CHECK(p.block_count() == 3);
    for (const auto& blk : p.blocks()) CHECK(blk.size() == 2);
    // A3 gives the two cosets even/odd
    Partition a3 = sim_relation(s3, g.witness, Subset::of(6, {0, 1, 2}));
    CHECK(a3 == Partition({0, 0, 0, 3, 3, 3}));
    CHECK_THROWS_AS(sim_relation(s3, g.witness, Subset(6)), InputError);
}

TEST_CASE("closed_under and its failure witness") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = *g.find_bundled("S3");
    TermSet iv = gen_termset(g, Variant::IV, false);

    CHECK(closed_under(s3, iv, Subset::of(6, {0, 1, 2})).ok);

    CheckResult r = closed_under(s3, iv, Subset::of(6, {0, 3}));
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.failure.has_value());
    // the recorded assignment really does escape H
    const FailureWitness& fw = *r.failure;
    Term t = parse_term(fw.term, s3.sig());
    std::map<VarKey, int> assign;
    for (const auto& [name, val] : fw.assignment) {
        VarKind k = name[0] == 'x' ? VarKind::X : VarKind::Y;
        assign[{k, std::stoi(name.substr(1))}] = val;
    }
    CHECK(eval_term(s3, t, assign) == fw.value);
    CHECK_FALSE(Subset::of(6, {0, 3}).contains(*fw.value));

    CHECK_FALSE(closed_under(s3, iv, Subset(6)).ok);  // empty set is never an ideal
}

TEST_CASE("ideal_closure") {
    VarietySpec g = builtin("group");
    VarietySpec r = builtin("ring");
    const FiniteAlgebra& z4 = *g.find_bundled("Z4");
    const FiniteAlgebra& z6 = *r.find_bundled("Z6ring");
    TermSet gz = gen_termset(g, Variant::IV, false);
    TermSet rz = gen_termset(r, Variant::IV, false);

    CHECK(ideal_closure(z4, gz, Subset::of(4, {2}), 0) == Subset::of(4, {0, 2}));
    CHECK(ideal_closure(z4, gz, Subset::of(4, {1}), 0) == Subset::full(4));
    CHECK(ideal_closure(z4, gz, Subset(4), 0) == Subset::of(4, {0}));
    CHECK(ideal_closure(z6, rz, Subset::of(6, {3}), 0) == Subset::of(6, {0, 3}));
    CHECK(ideal_closure(z6, rz, Subset::of(6, {2}), 0) == Subset::of(6, {0, 2, 4}));
    CHECK(ideal_closure(z6, rz, Subset::of(6, {1}), 0) == Subset::full(6));
}

TEST_CASE("closure is the least ideal containing the seed") {
    for (const auto& name : builtin_names()) {
        VarietySpec spec = builtin(name);
        TermSet ts = gen_termset(spec, Variant::IV, false);
        for (const auto& alg : spec.bundled) {
            CAPTURE(name);
            CAPTURE(alg.name());
            int zero = zero_element(alg, spec.witness);
            auto ideals = list_ideals(alg, zero);
            for (int a = 0; a < alg.size(); ++a) {
                Subset cl = ideal_closure(alg, ts, Subset::of(alg.size(), {a}), zero);
                CHECK(is_ideal_oracle(alg, zero, cl));
                for (const Subset& ideal : ideals)
                    if (ideal.contains(a)) CHECK(cl.subset_of(ideal));
            }
        }
    }
}

TEST_CASE("ideal censuses") {
    VarietySpec g = builtin("group");
    VarietySpec r = builtin("ring");
    CHECK(list_ideals(*g.find_bundled("S3"), 0).size() == 3);
    CHECK(list_ideals(*g.find_bundled("Z4"), 0).size() == 3);
    CHECK(list_ideals(*g.find_bundled("V4"), 0).size() == 5);
    CHECK(list_ideals(*g.find_bundled("D4"), 0).size() == 6);
    CHECK(list_ideals(*r.find_bundled("Z4ring"), 0).size() == 3);
    CHECK(list_ideals(*r.find_bundled("Z6ring"), 0).size() == 4);

    auto s3_ideals = list_ideals(*g.find_bundled("S3"), 0);
    CHECK(s3_ideals == std::vector<Subset>{Subset::of(6, {0}), Subset::of(6, {0, 1, 2}),
                                           Subset::full(6)});
}

TEST_CASE("subgroup that satisfies the inclusion but is no ideal") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = *g.find_bundled("S3");
    Subset h = Subset::of(6, {0, 3});
    CHECK(is_subalgebra(s3, h));
    CHECK(inclusion_2_1(s3, g.witness, h));
    CHECK_FALSE(is_ideal_oracle(s3, 0, h));
    for (Cond c : {Cond::I, Cond::II, Cond::III, Cond::IV, Cond::V, Cond::VI, Cond::VII})
        CHECK_FALSE(check_condition(s3, g.witness, h, c, false).ok);
}

TEST_CASE("the seven conditions agree with the oracle everywhere") {
    for (const auto& name : builtin_names()) {
        VarietySpec spec = builtin(name);
        for (const auto& alg : spec.bundled) {
            CAPTURE(name);
            CAPTURE(alg.name());
            int zero = zero_element(alg, spec.witness);
            for (std::uint64_t bits = 1; bits < (1ull << alg.size()); ++bits) {
                Subset h(alg.size(), bits);
                bool oracle = is_ideal_oracle(alg, zero, h);
                for (Cond c : {Cond::I, Cond::II, Cond::III, Cond::IV, Cond::V, Cond::VI,
                               Cond::VII}) {
                    CAPTURE(bits);
                    CAPTURE(cond_name(c));
                    CHECK(check_condition(alg, spec.witness, h, c, false).ok == oracle);
                }
                // semi-abelian variants of (ii)-(v) must agree as well
                for (Cond c : {Cond::II, Cond::III, Cond::IV, Cond::V})
                    CHECK(check_condition(alg, spec.witness, h, c, true).ok == oracle);
            }
        }
    }
}

TEST_CASE("the four term sets determine the same ideals") {
    for (const auto& name : builtin_names()) {
        VarietySpec spec = builtin(name);
        std::vector<TermSet> sets;
        for (Variant v : {Variant::I, Variant::II, Variant::III, Variant::IV}) {
            sets.push_back(gen_termset(spec, v, false));
            sets.push_back(gen_termset(spec, v, true));
        }
        for (const auto& alg : spec.bundled) {
            CAPTURE(name);
            CAPTURE(alg.name());
            int zero = zero_element(alg, spec.witness);
            for (std::uint64_t bits = 1; bits < (1ull << alg.size()); ++bits) {
                Subset h(alg.size(), bits);
                bool oracle = is_ideal_oracle(alg, zero, h);
                for (const TermSet& ts : sets) {
                    CAPTURE(variant_name(ts.variant));
                    CAPTURE(ts.semiabelian);
                    CAPTURE(bits);
                    CHECK(closed_under(alg, ts, h).ok == oracle);
                }
            }
        }
    }
}

TEST_CASE("prop21 equivalences hold on ideals") {
    for (const auto& name : builtin_names()) {
        VarietySpec spec = builtin(name);
        for (const auto& alg : spec.bundled) {
            int zero = zero_element(alg, spec.witness);
            for (const Subset& h : list_ideals(alg, zero))
                for (int a = 0; a < alg.size(); ++a)
                    for (int b = 0; b < alg.size(); ++b) {
                        CAPTURE(alg.name());
                        Prop21Result r = prop21_check(alg, spec.witness, h, a, b);
                        CHECK(r.all_equal());
                        if (a == b) CHECK(r.congruent);
                    }
        }
    }
    // not an ideal -> the precondition is enforced
    VarietySpec g = builtin("group");
    CHECK_THROWS_AS(
        prop21_check(*g.find_bundled("S3"), g.witness, Subset::of(6, {0, 3}), 0, 1),
        InputError);
}

TEST_CASE("right cancellability") {
    VarietySpec g = builtin("group");
    VarietySpec r = builtin("ring");
    for (const auto& alg : g.bundled) CHECK(right_cancellable(alg, g.witness));
    for (const auto& alg : r.bundled) CHECK(right_cancellable(alg, r.witness));
    // restricting the a-tuples to a subset can only weaken the requirement
    const FiniteAlgebra& s3 = *g.find_bundled("S3");
    Subset a3 = Subset::of(6, {0, 1, 2});
    CHECK(right_cancellable(s3, g.witness, nullptr, &a3));
}

TEST_CASE("ideal context reports") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = *g.find_bundled("S3");
    IdealContext ctx(s3, g);
    CHECK(ctx.zero() == 0);
    CHECK(ctx.ideals().size() == 3);
    CHECK(ctx.congruences().size() == 3);
    CHECK(IdealContext::method_names().size() == 12);

    IdealReport rep = ctx.report(Subset::of(6, {0, 1, 2}), "all", false);
    CHECK(rep.algebra == "S3");
    CHECK(rep.subset == std::vector<int>{0, 1, 2});
    CHECK(rep.verdicts.size() == 12);
    CHECK(rep.agreement);
    for (const auto& [key, verdict] : rep.verdicts) CHECK(verdict);

    IdealReport neg = ctx.report(Subset::of(6, {0, 3}), "all", false);
    CHECK(neg.agreement);  // all methods agree: not an ideal
    for (const auto& [key, verdict] : neg.verdicts) CHECK_FALSE(verdict);
    CHECK_FALSE(neg.failures.empty());

    IdealReport single = ctx.report(Subset::of(6, {0}), "oracle", false);
    CHECK(single.verdicts.size() == 1);
    CHECK(single.verdicts[0] == std::pair<std::string, bool>{"oracle", true});

    CHECK_THROWS_AS(ctx.report(Subset::of(6, {0}), "cond-viii", false), InputError);
}
