#pragma once

#include <map>
#include <string>
#include <vector>

#include "bitideal/algebra.hpp"
#include "bitideal/term.hpp"

namespace bitideal {

// The defining data of a BIT speciale theory: a ground zero term, binary
// terms alpha_1..alpha_n in x1,x2, and an (n+1)-ary term theta whose last
// position receives the base element.
struct BitWitness {
    int n = 1;
    Term zero = Term::x(1);
    std::vector<Term> alphas;
    Term theta = Term::x(1);
};

// Shape and signature checks; empty result means ok.
std::vector<std::string> validate_witness(const Signature& sig, const BitWitness& w);

// theta(args[0],...,args[n]) with the witness body inlined (args.size() must
// be n+1).
Term theta_term(const BitWitness& w, const std::vector<Term>& args);

// alpha_{i+1}(a, b) with the witness body inlined; i is zero-based.
Term alpha_term(const BitWitness& w, int i, const Term& a, const Term& b);

struct IdentityFailure {
    std::string identity;  // e.g. "(1.1) i=1"
    std::map<std::string, int> assignment;
    int lhs = 0;
    int rhs = 0;
};

struct WitnessReport {
    bool ok = true;
    std::vector<IdentityFailure> failures;
};

// Checks alpha_i(x,x)=0, theta(alpha_1(x,y),...,alpha_n(x,y),y)=x, and the
// derived theta(0,...,0,a)=a on the given finite algebra.
WitnessReport verify_witness(const FiniteAlgebra& alg, const BitWitness& w,
                             Budget* budget = nullptr);

// Value of the ground zero term in alg.
int zero_element(const FiniteAlgebra& alg, const BitWitness& w);

struct VarietySpec {
    std::string name;
    Signature sig;
    BitWitness witness;
    bool semiabelian = false;
    std::vector<FiniteAlgebra> bundled;

    const FiniteAlgebra* find_bundled(const std::string& algname) const;
};

const std::vector<std::string>& builtin_names();
VarietySpec builtin(const std::string& name);

// Enlarged signature, identical witness. Throws on symbol clash.
VarietySpec extend_signature(const VarietySpec& base, const std::vector<OpSym>& extra,
                             const std::string& name);

// .sig file format:
//   signature <Name>
//   op <sym> <arity>       (one line per symbol)
//   witness n=<n>
//   zero: <term>
//   alpha<i>: <term>       (i = 1..n)
//   theta: <term>
struct SigFile {
    Signature sig;
    BitWitness witness;
};

SigFile parse_sig_file(const std::string& text);
std::string render_sig_file(const Signature& sig, const BitWitness& w);

}  // namespace bitideal
