#include <vector>

#include "bitideal/errors.hpp"
#include "bitideal/termset.hpp"
#include "doctest.h"

using namespace bitideal;

namespace {

std::vector<std::string> printed(const TermSet& ts) {
    std::vector<std::string> out;
    for (const auto& e : ts.entries) out.push_back(print_term(e.term));
    return out;
}

std::vector<std::string> provs(const TermSet& ts) {
    std::vector<std::string> out;
    for (const auto& e : ts.entries) out.push_back(e.prov.to_string());
    return out;
}

}  // namespace

TEST_CASE("variant parsing") {
    CHECK(parse_variant("IV") == Variant::IV);
    CHECK(parse_variant("2") == Variant::II);
    CHECK(variant_name(Variant::III) == "iii");
    CHECK_THROWS_AS(parse_variant("v"), InputError);
}

TEST_CASE("group variant IV golden set") {
    TermSet ts = gen_termset(builtin("group"), Variant::IV, false);
    CHECK(printed(ts) == std::vector<std::string>{
                             "mul(mul(y1,x1),inv(mul(y2,x1)))",
                             "mul(y1,y2)",
                             "mul(y1,inv(e))",
                             "mul(mul(mul(y1,x1),x2),inv(mul(x1,x2)))",
                             "mul(mul(x1,mul(y1,x2)),inv(mul(x1,x2)))",
                             "mul(inv(mul(y1,x1)),inv(inv(x1)))",
                         });
    CHECK(provs(ts) == std::vector<std::string>{
                           "clause=(2.18) i=1",
                           "clause=(2.19) tau=theta",
                           "clause=(2.19) i=1",
                           "clause=(2.20) tau=mul i=1 j=1",
                           "clause=(2.20) tau=mul i=1 j=2",
                           "clause=(2.20) tau=inv i=1 j=1",
                       });
    for (const auto& e : ts.entries) CHECK_FALSE(e.ignorable);
}

TEST_CASE("group variant I golden set") {
    TermSet ts = gen_termset(builtin("group"), Variant::I, false);
    CHECK(printed(ts) == std::vector<std::string>{
                             "mul(y1,y2)",
                             "mul(y1,inv(y2))",
                             "mul(e,inv(e))",
                             "mul(mul(mul(y1,x1),mul(y2,x2)),inv(mul(x1,x2)))",
                             "mul(inv(mul(y1,x1)),inv(inv(x1)))",
                             "mul(mul(mul(y1,x1),mul(y2,x2)),inv(mul(x1,x2)))",
                         });
    CHECK(ts.entries[0].prov.to_string() == "clause=(2.14) tau=theta");
    CHECK(ts.entries[5].prov.to_string() == "clause=(2.15) tau=theta i=1");
}

TEST_CASE("ring variant IV has eight terms") {
    TermSet ts = gen_termset(builtin("ring"), Variant::IV, false);
    REQUIRE(ts.entries.size() == 8);
    // one (2.18), two (2.19), five (2.20): add j=1,2; neg j=1; mul j=1,2
    CHECK(ts.entries[0].prov.clause == "(2.18)");
    CHECK(ts.entries[1].prov.clause == "(2.19)");
    CHECK(ts.entries[2].prov.clause == "(2.19)");
    int twenty = 0;
    for (const auto& e : ts.entries)
        if (e.prov.clause == "(2.20)") ++twenty;
    CHECK(twenty == 5);
    CHECK(printed(ts)[0] == "add(add(y1,x1),neg(add(y2,x1)))");
}

TEST_CASE("semiabelian replacement") {
    VarietySpec g = builtin("group");
    TermSet ts = gen_termset(g, Variant::I, true);
    // (2.21) contributes e, mul(y1,y2), inv(y1); (2.15) contributes four
    REQUIRE(ts.entries.size() == 7);
    CHECK(ts.entries[0].prov.to_string() == "clause=(2.21) tau=e");
    CHECK(printed(ts)[1] == "mul(y1,y2)");
    CHECK(printed(ts)[2] == "inv(y1)");
    CHECK(ts.semiabelian);

    VarietySpec not_sa = g;
    not_sa.semiabelian = false;
    CHECK_THROWS_AS(gen_termset(not_sa, Variant::II, true), InputError);
}

TEST_CASE("variant counts are stable across variants") {
    VarietySpec g = builtin("group");
    CHECK(gen_termset(g, Variant::I, false).entries.size() == 6);
    CHECK(gen_termset(g, Variant::II, false).entries.size() == 8);
    CHECK(gen_termset(g, Variant::III, false).entries.size() == 6);
    CHECK(gen_termset(g, Variant::IV, false).entries.size() == 6);
}

TEST_CASE("double-index flattening for n=2") {
    // a synthetic 2-alpha witness over the group signature
    VarietySpec g = builtin("group");
    VarietySpec two = g;
    two.witness.n = 2;
    two.witness.alphas = {parse_term("mul(x1,inv(x2))", g.sig), Term::app("e")};
    two.witness.theta = parse_term("mul(x1,x3)", g.sig);
    two.bundled.clear();

    TermSet ts = gen_termset(two, Variant::I, false);
    // (2.15) tau=mul i=1: theta blocks use y1,y2 for j=1 and y3,y4 for j=2
    const TermSetEntry* entry = nullptr;
    for (const auto& e : ts.entries)
        if (e.prov.to_string() == "clause=(2.15) tau=mul i=1") entry = &e;
    REQUIRE(entry != nullptr);
    VarSet vs = vars_of(entry->term);
    CHECK(vs.yvars == std::set<int>{1, 3});  // theta(x1,x2,x3)=mul(x1,x3) drops y2,y4
    CHECK(print_term(entry->term) ==
          "mul(mul(mul(y1,x1),mul(y3,x2)),inv(mul(x1,x2)))");
}

TEST_CASE("extend_termset adds clauses only for new symbols") {
    VarietySpec g = builtin("group");
    VarietySpec ext = extend_signature(g, {{"omega", 2}}, "omega_group");
    TermSet base = gen_termset(g, Variant::IV, false);

    TermSet b = extend_termset(base, ext, 'b');
    REQUIRE(b.entries.size() == base.entries.size() + 2);
    CHECK(b.entries[6].prov.to_string() == "clause=(2.20) tau=omega i=1 j=1");
    CHECK(printed(b)[6] == "mul(omega(mul(y1,x1),x2),inv(omega(x1,x2)))");

    TermSet a = extend_termset(gen_termset(g, Variant::I, false), ext, 'a');
    CHECK(a.entries.back().prov.to_string() == "clause=(2.15) tau=omega i=1");

    VarietySpec unrelated = builtin("ring");
    CHECK_THROWS_AS(extend_termset(base, unrelated, 'b'), InputError);
    CHECK_THROWS_AS(extend_termset(base, ext, 'z'), InputError);
}

TEST_CASE("dedupe_syntactic keeps first occurrence") {
    TermSet ts = gen_termset(builtin("group"), Variant::I, false);
    TermSet dd = dedupe_syntactic(ts);
    // the (2.15) theta instance duplicates the (2.15) mul instance
    CHECK(dd.entries.size() == 5);
    CHECK(dd.entries[3].prov.clause == "(2.15)");
    CHECK(dd.entries[3].prov.tau == "mul");
}

TEST_CASE("dedupe_semantic merges equal functions on a model") {
    VarietySpec g = builtin("group");
    const FiniteAlgebra& z4 = *g.find_bundled("Z4");
    // mul(y1,inv(e)) is the identity function, same as bare y1
    TermSet ts = termset_from_terms(
        g.sig, {parse_term("y1", g.sig), parse_term("mul(y1,inv(e))", g.sig),
                parse_term("mul(y1,y2)", g.sig)},
        "user");
    DedupeReport rep = dedupe_semantic(ts, z4);
    CHECK(rep.set.entries.size() == 2);
    REQUIRE(rep.merges.size() == 1);
    CHECK(rep.merges[0].find("mul(y1,inv(e))") != std::string::npos);
    CHECK(rep.merges[0].find("Z4") != std::string::npos);
}

TEST_CASE("render_termset format") {
    VarietySpec g = builtin("group");
    TermSet ts = termset_from_terms(g.sig, {parse_term("y1", g.sig)}, "user");
    CHECK(ts.entries[0].ignorable);
    CHECK(render_termset(ts) == "# clause=user ignorable\ny1\n");

    TermSet iv = gen_termset(g, Variant::IV, false);
    std::string text = render_termset(iv);
    CHECK(text.find("# clause=(2.20) tau=mul i=1 j=2\n"
                     "mul(mul(x1,mul(y1,x2)),inv(mul(x1,x2)))\n") != std::string::npos);
}

TEST_CASE("termset_from_terms validates") {
    VarietySpec g = builtin("group");
    CHECK_THROWS_AS(termset_from_terms(g.sig, {Term::app("add", {Term::y(1), Term::y(2)})}, "u"),
                    InputError);
}
