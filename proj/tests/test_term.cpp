#include <random>

#include "bitideal/errors.hpp"
#include "bitideal/term.hpp"
#include "doctest.h"

using namespace bitideal;

namespace {

Signature group_sig() { return Signature("Group", {{"e", 0}, {"mul", 2}, {"inv", 1}}); }

// Random valid term over a signature, for round-trip properties.
Term random_term(std::mt19937& rng, const Signature& sig, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 3);
    int what = pick(rng);
    if (what <= 1) {
        std::uniform_int_distribution<int> idx(1, 4);
        return Term::var(what == 0 ? VarKind::X : VarKind::Y, idx(rng));
    }
    std::uniform_int_distribution<int> op(0, static_cast<int>(sig.ops().size()) - 1);
    const OpSym& sym = sig.ops()[static_cast<std::size_t>(op(rng))];
    std::vector<Term> kids;
    for (int i = 0; i < sym.arity; ++i) kids.push_back(random_term(rng, sig, depth - 1));
    return Term::app(sym.name, std::move(kids));
}

}  // namespace

TEST_CASE("parse basic terms") {
    Signature sig = group_sig();
    Term t = parse_term("mul(x1, inv(y1))", sig);
    CHECK(t == Term::app("mul", {Term::x(1), Term::app("inv", {Term::y(1)})}));
    CHECK(validate_term(sig, t).empty());

    CHECK(parse_term("e", sig) == Term::app("e"));
    CHECK(parse_term("e()", sig) == Term::app("e"));
    CHECK(parse_term("  mul ( y1 , y2 ) ", sig) ==
          Term::app("mul", {Term::y(1), Term::y(2)}));
}

TEST_CASE("parse errors") {
    Signature sig = group_sig();
    CHECK_THROWS_AS(parse_term("mul(x1)", sig), ParseError);       // arity mismatch
    CHECK_THROWS_AS(parse_term("add(x1,x2)", sig), ParseError);    // unknown symbol
    CHECK_THROWS_AS(parse_term("mul(x1,,x2)", sig), ParseError);   // syntax
    CHECK_THROWS_AS(parse_term("mul(x1,x2) x", sig), ParseError);  // trailing input
    CHECK_THROWS_AS(parse_term("x0", sig), ParseError);            // not a var, not a symbol
}

TEST_CASE("print canonical forms") {
    CHECK(print_term(Term::app("mul", {Term::y(1), Term::y(2)})) == "mul(y1,y2)");
    CHECK(print_term(Term::app("e")) == "e");
    CHECK(print_term(Term::x(12)) == "x12");
}

TEST_CASE("round-trip property") {
    Signature sig = group_sig();
    std::mt19937 rng(20240817);
    for (int i = 0; i < 500; ++i) {
        Term t = random_term(rng, sig, 4);
        CHECK(parse_term(print_term(t), sig) == t);
    }
}

TEST_CASE("validate_term reports violations without throwing") {
    Signature sig = group_sig();
    CHECK(validate_term(sig, Term::app("mul", {Term::y(1), Term::y(2)})).empty());

    auto v1 = validate_term(sig, Term::app("add", {Term::x(1)}));
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].find("unknown symbol 'add'") != std::string::npos);

    auto v2 = validate_term(sig, Term::app("inv", {Term::x(1), Term::x(2)}));
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].find("arity") != std::string::npos);
}

TEST_CASE("substitute") {
    Signature sig = group_sig();
    Term t = parse_term("mul(y1,y2)", sig);
    Binding all_zero{{{VarKind::Y, 1}, Term::app("e")}, {{VarKind::Y, 2}, Term::app("e")}};
    CHECK(print_term(substitute(t, all_zero)) == "mul(e,e)");

    Term u = parse_term("mul(x1,inv(y1))", sig);
    Binding b{{{VarKind::Y, 1}, Term::app("e")}};
    CHECK(print_term(substitute(u, b)) == "mul(x1,inv(e))");

    // composing theta with alphas builds the (2.15)-style nesting
    Term theta = parse_term("mul(x1,x2)", sig);
    Binding c{{{VarKind::X, 1}, Term::y(1)}, {{VarKind::X, 2}, Term::x(1)}};
    CHECK(print_term(substitute(theta, c)) == "mul(y1,x1)");
}

TEST_CASE("substitution composition property") {
    Signature sig = group_sig();
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Term t = random_term(rng, sig, 3);
        // sigma binds y1, introducing only x-variables; rho binds x-variables
        Binding sigma{{{VarKind::Y, 1}, parse_term("inv(x5)", sig)}};
        Binding rho{{{VarKind::X, 5}, Term::app("e")}};
        // rho o sigma applied to the domain of sigma, plus rho itself
        Binding comp = rho;
        for (auto& [k, v] : sigma) comp[k] = substitute(v, rho);
        CHECK(substitute(substitute(t, sigma), rho) == substitute(t, comp));
    }
}

TEST_CASE("vars_of") {
    Signature sig = group_sig();
    VarSet vs = vars_of(parse_term("mul(x1,inv(y1))", sig));
    CHECK(vs.xvars == std::set<int>{1});
    CHECK(vs.yvars == std::set<int>{1});

    CHECK(vars_of(Term::app("e")) == VarSet{});

    // group clause (2.18): mul(mul(y1,x1),inv(mul(y2,x1)))
    VarSet v18 = vars_of(parse_term("mul(mul(y1,x1),inv(mul(y2,x1)))", sig));
    CHECK(v18.xvars == std::set<int>{1});
    CHECK(v18.yvars == std::set<int>{1, 2});

    // grounding the y-variables empties the y-set
    Term t = parse_term("mul(y1,inv(y2))", sig);
    Binding ground{{{VarKind::Y, 1}, Term::app("e")}, {{VarKind::Y, 2}, Term::app("e")}};
    CHECK(vars_of(substitute(t, ground)).yvars.empty());
}

TEST_CASE("signature validation") {
    CHECK_THROWS_AS(Signature("S", {{"mul", 2}, {"mul", 1}}), InputError);
    CHECK_THROWS_AS(Signature("S", {{"2bad", 1}}), InputError);
    CHECK_THROWS_AS(Signature("S", {{"f", -1}}), InputError);
    CHECK(group_sig().has_constant());
}
