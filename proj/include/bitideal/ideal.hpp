#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bitideal/termset.hpp"
#include "bitideal/witness.hpp"

namespace bitideal {

struct FailureWitness {
    std::string clause;  // clause or check name, e.g. "(2.8) tau=mul i=1"
    std::string term;    // offending term when the check is term-driven
    std::map<std::string, int> assignment;
    std::optional<int> value;
};

struct CheckResult {
    bool ok = true;
    std::optional<FailureWitness> failure;
};

// { theta(h_1..h_n, a) : h_i in H }
Subset theta_image(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h, int a,
                   Budget* budget = nullptr);

// a ~_H b iff theta(H,...,H,a) = theta(H,...,H,b). Throws InputError on
// empty H.
Partition sim_relation(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h,
                       Budget* budget = nullptr);

// The ~_H class of a.
Subset eq_class(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h, int a,
                Budget* budget = nullptr);

// H nonempty, and every term value (x-slots anywhere, y-slots in H) stays in
// H.
CheckResult closed_under(const FiniteAlgebra& alg, const TermSet& ts, const Subset& h,
                         Budget* budget = nullptr);

// Least superset of seed (plus zero) closed under the term set.
Subset ideal_closure(const FiniteAlgebra& alg, const TermSet& ts, const Subset& seed, int zero,
                     Budget* budget = nullptr);

// H is the kernel of some congruence.
bool is_ideal_oracle(const FiniteAlgebra& alg, int zero, const Subset& h,
                     Budget* budget = nullptr);

// Kernels of all congruences; asserts the congruence -> kernel map is
// injective (it is in a BIT variety).
std::vector<Subset> list_ideals(const FiniteAlgebra& alg, int zero, Budget* budget = nullptr);

enum class Cond { I, II, III, IV, V, VI, VII };
Cond parse_cond(const std::string& s);  // "i".."vii"
std::string cond_name(Cond c);

// One of the seven equivalent conditions, evaluated literally by finite
// enumeration (condition (i) is the congruence-kernel oracle). When
// semiabelian is set the closure clauses of (ii)-(v) are replaced by the
// subalgebra test.
CheckResult check_condition(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h,
                            Cond cond, bool semiabelian, Budget* budget = nullptr);

struct Prop21Result {
    bool congruent = false;      // a ~=_H b
    bool alphas_in_h = false;    // alpha_i(a,b) in H for every i
    bool a_in_theta_b = false;   // a in theta(H,...,H,b)
    bool b_in_theta_a = false;   // b in theta(H,...,H,a)
    bool all_equal() const {
        return congruent == alphas_in_h && congruent == a_in_theta_b && congruent == b_in_theta_a;
    }
};

// Requires H to be an ideal (checked against the oracle).
Prop21Result prop21_check(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h, int a,
                          int b, Budget* budget = nullptr);

// Inclusion (2.1): alpha_i(theta(H..H,a), theta(H..H,a)) within H for all a, i.
bool inclusion_2_1(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h,
                   Budget* budget = nullptr);

// alpha_i(theta(a_vec,b), theta(a'_vec,b)) is independent of b. The literal
// reading quantifies the a-tuples over the whole carrier; restrict_h, when
// given, restricts them to that subset instead.
bool right_cancellable(const FiniteAlgebra& alg, const BitWitness& w, Budget* budget = nullptr,
                       const Subset* restrict_h = nullptr);

struct ReportFailure {
    std::string condition;
    FailureWitness fw;
};

struct IdealReport {
    std::string algebra;
    std::vector<int> subset;
    // key -> verdict, in fixed key order
    std::vector<std::pair<std::string, bool>> verdicts;
    bool agreement = true;
    std::vector<ReportFailure> failures;
};

// Precomputed per-algebra state for repeated subset queries.
class IdealContext {
public:
    IdealContext(const FiniteAlgebra& alg, const VarietySpec& spec, Budget* budget = nullptr);

    const FiniteAlgebra& alg() const { return alg_; }
    int zero() const { return zero_; }
    const TermSet& termset(Variant v) const { return sets_[static_cast<std::size_t>(v)]; }
    const std::vector<Partition>& congruences() const { return congruences_; }
    const std::vector<Subset>& ideals() const { return ideals_; }

    bool oracle_verdict(const Subset& h) const;

    static const std::vector<std::string>& method_names();  // the 12 verdict keys

    // method is one of method_names() or "all".
    IdealReport report(const Subset& h, const std::string& method, bool semiabelian,
                       Budget* budget = nullptr) const;

private:
    const FiniteAlgebra& alg_;
    const VarietySpec& spec_;
    int zero_;
    std::array<TermSet, 4> sets_;
    std::vector<Partition> congruences_;
    std::vector<Subset> ideals_;
};

}  // namespace bitideal
