#pragma once

#include <string>
#include <vector>

#include "bitideal/witness.hpp"

namespace bitideal {

enum class Variant { I, II, III, IV };

Variant parse_variant(const std::string& s);  // "i".."iv", case-insensitive
std::string variant_name(Variant v);

struct Provenance {
    std::string clause;  // "(2.14)", "(2.15)", ..., "(2.21)", or a user label
    std::string tau;     // symbol, "theta", or "alpha<j>" when applicable
    int i = 0;           // 1-based alpha index, 0 when not applicable
    int j = 0;           // 1-based argument position, 0 when not applicable
    std::string to_string() const;
};

struct TermSetEntry {
    Term term;
    Provenance prov;
    // Identity-function terms (a bare y-variable) are sound but vacuous.
    bool ignorable = false;
};

struct TermSet {
    Variant variant = Variant::I;
    bool semiabelian = false;
    Signature sig;  // the generating signature
    std::vector<TermSetEntry> entries;
};

// Clause-by-clause instantiation of one of the four determining sets, with
// deterministic order: clauses first, then tau in signature order (theta and
// the alphas after the signature), then i, then j ascending.
TermSet gen_termset(const VarietySpec& spec, Variant variant, bool use_semiabelian);

// Union with the new-operation clauses only: mode 'a' adds the (2.15)
// instances for the added symbols, mode 'b' the (2.20) instances.
TermSet extend_termset(const TermSet& base, const VarietySpec& ext, char mode);

// Structural duplicates removed; order preserved by first occurrence.
TermSet dedupe_syntactic(const TermSet& ts);

struct DedupeReport {
    TermSet set;
    std::vector<std::string> merges;
};

// Merges terms that induce identical functions on the given model. A
// reporting aid only: equivalence is claimed relative to alg, nothing more.
DedupeReport dedupe_semantic(const TermSet& ts, const FiniteAlgebra& alg,
                             Budget* budget = nullptr);

// One term per line in the term grammar, preceded by a provenance comment
// line `# clause=(2.20) tau=mul i=1 j=2`.
std::string render_termset(const TermSet& ts);

// Ad-hoc set from explicit terms (used for externally given term lists).
TermSet termset_from_terms(const Signature& sig, const std::vector<Term>& terms,
                           const std::string& label);

}  // namespace bitideal
