#include <algorithm>

#include "bitideal/algebra.hpp"
#include "bitideal/errors.hpp"
#include "bitideal/witness.hpp"
#include "doctest.h"

using namespace bitideal;

namespace {

const FiniteAlgebra& bundled(const VarietySpec& spec, const std::string& name) {
    const FiniteAlgebra* a = spec.find_bundled(name);
    REQUIRE(a != nullptr);
    return *a;
}

}  // namespace

TEST_CASE("subset basics") {
    Subset h = Subset::of(6, {0, 3});
    CHECK(h.size() == 2);
    CHECK(h.contains(3));
    CHECK_FALSE(h.contains(1));
    CHECK(h.members() == std::vector<int>{0, 3});
    CHECK(h.subset_of(Subset::full(6)));
    CHECK_FALSE(Subset::full(6).subset_of(h));
    // ordering: size first, then member list
    CHECK(Subset::of(6, {5}) < Subset::of(6, {0, 1}));
    CHECK(Subset::of(6, {0, 1}) < Subset::of(6, {0, 2}));
}

TEST_CASE("partition normalization and refinement") {
    Partition p({1, 1, 2, 2});  // blocks {0,1},{2,3} with non-least reps
    CHECK(p.reps() == std::vector<int>{0, 0, 2, 2});
    CHECK(p.same(0, 1));
    CHECK_FALSE(p.same(1, 2));
    CHECK(p.block_count() == 2);
    CHECK(p.block_of(3) == Subset::of(4, {2, 3}));
    CHECK(Partition::discrete(4).refines(p));
    CHECK(p.refines(Partition::indiscrete(4)));
    CHECK_FALSE(p.refines(Partition::discrete(4)));
    CHECK_THROWS_AS(Partition({0, 5, 2}), InputError);  // rep out of range
}

TEST_CASE("table validation") {
    Signature sig("Group", {{"e", 0}, {"mul", 2}, {"inv", 1}});
    std::vector<std::vector<int>> ok = {{0}, {0, 1, 1, 0}, {0, 1}};
    CHECK_NOTHROW(FiniteAlgebra("Z2", sig, 2, ok));

    auto bad_len = ok;
    bad_len[1].pop_back();  // mul table must have 4 entries
    CHECK_THROWS_AS(FiniteAlgebra("Z2", sig, 2, bad_len), InputError);

    auto bad_entry = ok;
    bad_entry[2][1] = 7;  // out of carrier range
    CHECK_THROWS_AS(FiniteAlgebra("Z2", sig, 2, bad_entry), InputError);

    std::vector<std::vector<int>> missing = {{0}, {0, 1, 1, 0}};
    CHECK_THROWS_AS(FiniteAlgebra("Z2", sig, 2, missing), InputError);
}

TEST_CASE("evaluation on Z4") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& z4 = bundled(g, "Z4");
    Term t = parse_term("mul(x1,inv(x2))", z4.sig());

    std::map<VarKey, int> assign{{{VarKind::X, 1}, 1}, {{VarKind::X, 2}, 3}};
    CHECK(eval_term(z4, t, assign) == 2);  // 1 - 3 mod 4

    CompiledTerm ct(z4, t);
    int xs[] = {1, 3};
    CHECK(ct.eval(xs, {}) == 2);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            int args[] = {a, b};
            CHECK(ct.eval(args, {}) == ((a - b) % 4 + 4) % 4);
        }
}

TEST_CASE("budget exhaustion") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& z4 = bundled(g, "Z4");
    CompiledTerm ct(z4, parse_term("mul(x1,x2)", z4.sig()));
    Budget tight(3);
    int args[] = {1, 2};
    CHECK(ct.eval(args, {}, &tight) == 3);
    CHECK(ct.eval(args, {}, &tight) == 3);
    CHECK(ct.eval(args, {}, &tight) == 3);
    CHECK_THROWS_AS(ct.eval(args, {}, &tight), BudgetExceeded);
}

TEST_CASE("holds_identity") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& z4 = bundled(g, "Z4");
    const FiniteAlgebra& s3 = bundled(g, "S3");
    const Signature& sig = z4.sig();

    Term ab = parse_term("mul(x1,x2)", sig);
    Term ba = parse_term("mul(x2,x1)", sig);
    CHECK(holds_identity(z4, ab, ba).holds);

    IdentityResult r = holds_identity(s3, ab, ba);
    CHECK_FALSE(r.holds);
    // the witness really is a counterexample
    int a = r.counter.at("x1"), b = r.counter.at("x2");
    int args1[] = {a, b}, args2[] = {b, a};
    CHECK(s3.apply(sig.index_of("mul"), args1) == r.lhs_value);
    CHECK(s3.apply(sig.index_of("mul"), args2) == r.rhs_value);
    CHECK(r.lhs_value != r.rhs_value);

    // associativity holds in both
    Term al = parse_term("mul(mul(x1,x2),x3)", sig);
    Term ar = parse_term("mul(x1,mul(x2,x3))", sig);
    CHECK(holds_identity(z4, al, ar).holds);
    CHECK(holds_identity(s3, al, ar).holds);
}

TEST_CASE("is_zero_ideal_term") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& z4 = bundled(g, "Z4");
    // x y x^{-1} with y grounded to 0 is constantly 0
    Term conj = parse_term("mul(mul(x1,y1),inv(x1))", z4.sig());
    CHECK(is_zero_ideal_term(z4, 0, conj));
    CHECK_FALSE(is_zero_ideal_term(z4, 0, parse_term("mul(x1,y1)", z4.sig())));
}

TEST_CASE("subuniverse and subalgebra on S3") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = bundled(g, "S3");
    // a transposition generates a 2-element subgroup
    CHECK(subuniverse(s3, Subset::of(6, {3})) == Subset::of(6, {0, 3}));
    // a 3-cycle generates A3
    CHECK(subuniverse(s3, Subset::of(6, {1})) == Subset::of(6, {0, 1, 2}));
    // constants enter even from the empty seed
    CHECK(subuniverse(s3, Subset(6)) == Subset::of(6, {0}));
    CHECK(is_subalgebra(s3, Subset::of(6, {0, 1, 2})));
    CHECK_FALSE(is_subalgebra(s3, Subset::of(6, {1, 2})));
}

TEST_CASE("principal congruences on Z4") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& z4 = bundled(g, "Z4");
    CHECK(principal_congruence(z4, 0, 2) == Partition({0, 1, 0, 1}));
    CHECK(principal_congruence(z4, 0, 1) == Partition::indiscrete(4));
    CHECK(principal_congruence(z4, 2, 2) == Partition::discrete(4));
}

TEST_CASE("congruence lattices") {
    VarietySpec g = builtin("group");
    auto cz4 = all_congruences(bundled(g, "Z4"));
    CHECK(cz4.size() == 3);
    auto cs3 = all_congruences(bundled(g, "S3"));
    CHECK(cs3.size() == 3);  // Delta, A3-partition, Nabla
    for (const auto& p : cs3) CHECK(is_congruence(bundled(g, "S3"), p));
    auto cv4 = all_congruences(bundled(g, "V4"));
    CHECK(cv4.size() == 5);
    auto cd4 = all_congruences(bundled(g, "D4"));
    CHECK(cd4.size() == 6);

    Signature one("One", {{"e", 0}});
    FiniteAlgebra trivial("One", one, 1, {{0}});
    CHECK(all_congruences(trivial).size() == 1);
}

TEST_CASE("is_congruence failure witness") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = bundled(g, "S3");
    Partition p({0, 0, 2, 2, 4, 4});  // blocks {0,1},{2,3},{4,5}: not a congruence of S3
    CongruenceFailure f;
    REQUIRE_FALSE(is_congruence(s3, p, &f));
    int op = s3.sig().index_of(f.symbol);
    CHECK(p.same(s3.apply(op, f.lhs_args), s3.apply(op, f.rhs_args)) == false);
}

TEST_CASE("kernel_of") {
    CHECK(kernel_of(Partition({0, 1, 0, 1}), 0) == Subset::of(4, {0, 2}));
    CHECK(kernel_of(Partition::discrete(4), 0) == Subset::of(4, {0}));
    CHECK(kernel_of(Partition::indiscrete(4), 0) == Subset::full(4));
}

TEST_CASE("alg file round-trip") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& s3 = bundled(g, "S3");
    std::string text = render_alg_file(s3);
    FiniteAlgebra back = parse_alg_file(text, s3.sig());
    CHECK(back.name() == s3.name());
    CHECK(back.size() == s3.size());
    for (std::size_t op = 0; op < s3.sig().ops().size(); ++op)
        CHECK(back.table(static_cast<int>(op)) == s3.table(static_cast<int>(op)));
}

TEST_CASE("alg file errors") {
    Signature sig("Group", {{"e", 0}, {"mul", 2}, {"inv", 1}});
    CHECK_THROWS_AS(parse_alg_file("size 2\n", sig), InputError);  // missing header
    CHECK_THROWS_AS(parse_alg_file("algebra A : Ring\nsize 2\n", sig), InputError);
    std::string missing_table =
        "algebra A : Group\nsize 2\ntable e\n0\ntable mul\n0 1\n1 0\n";
    CHECK_THROWS_AS(parse_alg_file(missing_table, sig), InputError);  // no inv table
    std::string bad_entry =
        "algebra A : Group\nsize 2\ntable e\n0\ntable mul\n0 1\n1 7\ntable inv\n0 1\n";
    CHECK_THROWS_AS(parse_alg_file(bad_entry, sig), InputError);
}
