#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bitideal/budget.hpp"
#include "bitideal/term.hpp"

namespace bitideal {

// Subset of a carrier {0..m-1}, stored as a bitmask. Carriers here stay small
// (m <= 64).
class Subset {
public:
    Subset() = default;
    explicit Subset(int universe, std::uint64_t bits = 0);
    static Subset full(int universe);
    static Subset of(int universe, std::initializer_list<int> xs);
    static Subset from_members(int universe, const std::vector<int>& xs);

    int universe() const { return universe_; }
    bool contains(int a) const { return a >= 0 && a < universe_ && (bits_ >> a & 1u); }
    void add(int a);
    int size() const;
    bool empty() const { return bits_ == 0; }
    std::uint64_t mask() const { return bits_; }
    std::vector<int> members() const;
    bool subset_of(const Subset& o) const { return (bits_ & ~o.bits_) == 0; }

    bool operator==(const Subset&) const = default;
    bool operator<(const Subset& o) const;

private:
    int universe_ = 0;
    std::uint64_t bits_ = 0;
};

// Partition of {0..m-1}, normalized so that rep(i) is the least element of
// i's block. Canonical form gives deterministic equality and output.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> rep);
    static Partition discrete(int m);
    static Partition indiscrete(int m);

    int universe() const { return static_cast<int>(rep_.size()); }
    bool same(int a, int b) const { return rep_[a] == rep_[b]; }
    int rep(int a) const { return rep_[a]; }
    const std::vector<int>& reps() const { return rep_; }
    std::vector<std::vector<int>> blocks() const;
    Subset block_of(int a) const;
    int block_count() const;
    // True when every block of this partition sits inside a block of o.
    bool refines(const Partition& o) const;

    bool operator==(const Partition&) const = default;
    bool operator<(const Partition& o) const { return rep_ < o.rep_; }

private:
    std::vector<int> rep_;
};

// Finite algebra: carrier {0..m-1} with one full operation table per symbol.
// Tables are row-major in lexicographic order of argument tuples (first
// argument most significant).
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    // Validates table shapes and entry ranges; throws InputError.
    FiniteAlgebra(std::string name, Signature sig, int size,
                  std::vector<std::vector<int>> tables);

    const std::string& name() const { return name_; }
    const Signature& sig() const { return sig_; }
    int size() const { return size_; }
    const std::vector<int>& table(int op) const { return tables_[op]; }

    int apply(int op, std::span<const int> args) const;

private:
    std::string name_;
    Signature sig_;
    int size_ = 1;
    std::vector<std::vector<int>> tables_;
};

// Postorder program for fast repeated evaluation of one term on one algebra.
class CompiledTerm {
public:
    CompiledTerm(const FiniteAlgebra& alg, const Term& t);

    // xs[i-1] is the value of xi, ys[j-1] of yj; arrays must cover the
    // maximal occurring indices. Charges one budget unit per call.
    int eval(std::span<const int> xs, std::span<const int> ys, Budget* budget = nullptr) const;

    const VarSet& vars() const { return vars_; }

private:
    enum class Op { PushX, PushY, Apply };
    struct Instr {
        Op op;
        int a;      // variable slot or op index
        int arity;  // for Apply
    };
    const FiniteAlgebra* alg_;
    std::vector<Instr> code_;
    VarSet vars_;
    mutable std::vector<int> stack_;
};

int eval_term(const FiniteAlgebra& alg, const Term& t, const std::map<VarKey, int>& assign,
              Budget* budget = nullptr);

struct IdentityResult {
    bool holds = false;
    // Set on failure: variable name -> element, plus the two sides' values.
    std::map<std::string, int> counter;
    int lhs_value = 0;
    int rhs_value = 0;
};

// Both x- and y-kind variables range over the whole carrier.
IdentityResult holds_identity(const FiniteAlgebra& alg, const Term& lhs, const Term& rhs,
                              Budget* budget = nullptr);

// t(x1..xm, 0,...,0) = 0 for every x-assignment.
bool is_zero_ideal_term(const FiniteAlgebra& alg, int zero, const Term& t,
                        Budget* budget = nullptr);

// Least subset containing seed and closed under all operations (constants
// enter the closure unconditionally).
Subset subuniverse(const FiniteAlgebra& alg, const Subset& seed);

bool is_subalgebra(const FiniteAlgebra& alg, const Subset& h);

struct CongruenceFailure {
    std::string symbol;
    std::vector<int> lhs_args;
    std::vector<int> rhs_args;
};

// True iff p is compatible with every operation of alg.
bool is_congruence(const FiniteAlgebra& alg, const Partition& p,
                   CongruenceFailure* failure = nullptr);

// Least congruence identifying a and b (fixpoint of merge-and-propagate).
Partition principal_congruence(const FiniteAlgebra& alg, int a, int b,
                               Budget* budget = nullptr);

// The whole congruence lattice: join-closure of the principal congruences
// together with the discrete partition. Sorted deterministically.
std::vector<Partition> all_congruences(const FiniteAlgebra& alg, Budget* budget = nullptr);

// The block of p containing zero.
Subset kernel_of(const Partition& p, int zero);

// .alg file format, line-oriented:
//   algebra <Name> : <SignatureName>
//   size <m>
//   table <sym>
//   <m^arity entries, whitespace separated, row-major>
// '#' starts a comment.
FiniteAlgebra parse_alg_file(const std::string& text, const Signature& sig);
std::string render_alg_file(const FiniteAlgebra& alg);

}  // namespace bitideal
