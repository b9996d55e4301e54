#include "bitideal/termset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "bitideal/errors.hpp"

namespace bitideal {

Variant parse_variant(const std::string& s) {
    std::string t;
    for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "i" || t == "1") return Variant::I;
    if (t == "ii" || t == "2") return Variant::II;
    if (t == "iii" || t == "3") return Variant::III;
    if (t == "iv" || t == "4") return Variant::IV;
    throw InputError("unknown term-set variant '" + s + "'");
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::I: return "i";
        case Variant::II: return "ii";
        case Variant::III: return "iii";
        case Variant::IV: return "iv";
    }
    return "?";
}

std::string Provenance::to_string() const {
    std::string out = "clause=" + clause;
    if (!tau.empty()) out += " tau=" + tau;
    if (i > 0) out += " i=" + std::to_string(i);
    if (j > 0) out += " j=" + std::to_string(j);
    return out;
}

namespace {

struct Tau {
    std::string label;
    int arity;
    std::function<Term(std::vector<Term>)> apply;
};

Tau sig_tau(const OpSym& op) {
    return {op.name, op.arity,
            [name = op.name](std::vector<Term> args) { return Term::app(name, std::move(args)); }};
}

Tau theta_tau(const BitWitness& w) {
    return {"theta", w.n + 1, [&w](std::vector<Term> args) { return theta_term(w, args); }};
}

Tau alpha_tau(const BitWitness& w, int j) {
    return {"alpha" + std::to_string(j + 1), 2,
            [&w, j](std::vector<Term> args) { return alpha_term(w, j, args[0], args[1]); }};
}

class Generator {
public:
    Generator(const VarietySpec& spec) : spec_(spec), w_(spec.witness) {}

    std::vector<TermSetEntry> out;

    void emit(Term t, Provenance prov) {
        bool ignorable = t.is_var() && t.kind() == VarKind::Y;
        out.push_back({std::move(t), std::move(prov), ignorable});
    }

    // theta(y_{off+1},...,y_{off+n}, last)
    Term theta_block(int off, const Term& last) {
        std::vector<Term> args;
        for (int l = 1; l <= w_.n; ++l) args.push_back(Term::y(off + l));
        args.push_back(last);
        return theta_term(w_, args);
    }

    // (2.14): theta(y_1..y_{n+1}) and alpha_i(y_1, y_2)
    void clause_2_14() {
        emit(theta_block(0, Term::y(w_.n + 1)), {"(2.14)", "theta"});
        for (int i = 0; i < w_.n; ++i)
            emit(alpha_term(w_, i, Term::y(1), Term::y(2)), {"(2.14)", "", i + 1});
    }

    // (2.15) for one tau and one i; double indices y_{jl} flattened to
    // y_{(j-1)n+l}. Arity-0 tau degenerates to the ground term alpha_i(tau,tau).
    void clause_2_15(const Tau& tau, int i) {
        std::vector<Term> inner, xs;
        for (int j = 1; j <= tau.arity; ++j) {
            inner.push_back(theta_block((j - 1) * w_.n, Term::x(j)));
            xs.push_back(Term::x(j));
        }
        Term lhs = tau.apply(inner);
        Term rhs = tau.apply(xs);
        emit(alpha_term(w_, i, lhs, rhs), {"(2.15)", tau.label, i + 1});
    }

    // (2.16): 0, theta(y_1..y_{n+1}), alpha_i(y_1, 0)
    void clause_2_16() {
        emit(w_.zero, {"(2.16)", "zero"});
        emit(theta_block(0, Term::y(w_.n + 1)), {"(2.16)", "theta"});
        for (int i = 0; i < w_.n; ++i)
            emit(alpha_term(w_, i, Term::y(1), w_.zero), {"(2.16)", "", i + 1});
    }

    // (2.17)/(2.19): theta(y_1..y_{n+1}), alpha_i(y_1, 0)
    void clause_theta_alpha0(const std::string& label) {
        emit(theta_block(0, Term::y(w_.n + 1)), {label, "theta"});
        for (int i = 0; i < w_.n; ++i)
            emit(alpha_term(w_, i, Term::y(1), w_.zero), {label, "", i + 1});
    }

    // (2.18): alpha_i(theta(y_1..y_n,x1), theta(y_{n+1}..y_{2n},x1))
    void clause_2_18() {
        for (int i = 0; i < w_.n; ++i)
            emit(alpha_term(w_, i, theta_block(0, Term::x(1)), theta_block(w_.n, Term::x(1))),
                 {"(2.18)", "", i + 1});
    }

    // (2.20) for one tau from the signature; arity-0 tau has no j position
    // and contributes nothing.
    void clause_2_20(const Tau& tau) {
        for (int i = 0; i < w_.n; ++i)
            for (int j = 1; j <= tau.arity; ++j) {
                std::vector<Term> lhs_args, xs;
                for (int p = 1; p <= tau.arity; ++p) {
                    xs.push_back(Term::x(p));
                    lhs_args.push_back(p == j ? theta_block(0, Term::x(p)) : Term::x(p));
                }
                emit(alpha_term(w_, i, tau.apply(lhs_args), tau.apply(xs)),
                     {"(2.20)", tau.label, i + 1, j});
            }
    }

    // (2.21): tau(y_1..y_k) for every signature symbol, constants included.
    void clause_2_21() {
        for (const OpSym& op : spec_.sig.ops()) {
            std::vector<Term> args;
            for (int l = 1; l <= op.arity; ++l) args.push_back(Term::y(l));
            emit(Term::app(op.name, std::move(args)), {"(2.21)", op.name});
        }
    }

    std::vector<Tau> taus_f() const {
        std::vector<Tau> out;
        for (const OpSym& op : spec_.sig.ops()) out.push_back(sig_tau(op));
        return out;
    }

    const VarietySpec& spec_;
    const BitWitness& w_;
};

}  // namespace

TermSet gen_termset(const VarietySpec& spec, Variant variant, bool use_semiabelian) {
    if (use_semiabelian && !spec.semiabelian)
        throw InputError("variety '" + spec.name + "' is not flagged semi-abelian");

    Generator g(spec);
    const BitWitness& w = spec.witness;
    std::vector<Tau> taus = g.taus_f();

    switch (variant) {
        case Variant::I: {
            if (use_semiabelian)
                g.clause_2_21();
            else
                g.clause_2_14();
            std::vector<Tau> with_theta = taus;
            with_theta.push_back(theta_tau(w));
            for (const Tau& tau : with_theta)
                for (int i = 0; i < w.n; ++i) g.clause_2_15(tau, i);
            break;
        }
        case Variant::II: {
            if (use_semiabelian)
                g.clause_2_21();
            else
                g.clause_2_16();
            std::vector<Tau> all = taus;
            all.push_back(theta_tau(w));
            for (int j = 0; j < w.n; ++j) all.push_back(alpha_tau(w, j));
            for (const Tau& tau : all)
                for (int i = 0; i < w.n; ++i) g.clause_2_15(tau, i);
            break;
        }
        case Variant::III: {
            if (use_semiabelian)
                g.clause_2_21();
            else
                g.clause_theta_alpha0("(2.17)");
            g.clause_2_18();
            for (const Tau& tau : taus)
                for (int i = 0; i < w.n; ++i) g.clause_2_15(tau, i);
            break;
        }
        case Variant::IV: {
            g.clause_2_18();
            if (use_semiabelian)
                g.clause_2_21();
            else
                g.clause_theta_alpha0("(2.19)");
            for (const Tau& tau : taus) g.clause_2_20(tau);
            break;
        }
    }

    TermSet ts;
    ts.variant = variant;
    ts.semiabelian = use_semiabelian;
    ts.sig = spec.sig;
    ts.entries = std::move(g.out);
    return ts;
}

TermSet extend_termset(const TermSet& base, const VarietySpec& ext, char mode) {
    for (const OpSym& op : base.sig.ops()) {
        const OpSym* found = ext.sig.find(op.name);
        if (!found || found->arity != op.arity)
            throw InputError("'" + ext.name + "' does not extend the set's signature (symbol '" +
                             op.name + "')");
    }
    Generator g(ext);
    for (const OpSym& op : ext.sig.ops()) {
        if (base.sig.find(op.name)) continue;
        Tau tau = sig_tau(op);
        if (mode == 'a') {
            for (int i = 0; i < ext.witness.n; ++i) g.clause_2_15(tau, i);
        } else if (mode == 'b') {
            g.clause_2_20(tau);
        } else {
            throw InputError("extension mode must be 'a' or 'b'");
        }
    }
    TermSet out = base;
    out.sig = ext.sig;
    for (auto& e : g.out) out.entries.push_back(std::move(e));
    return out;
}

TermSet dedupe_syntactic(const TermSet& ts) {
    TermSet out = ts;
    out.entries.clear();
    std::map<std::string, bool> seen;
    for (const TermSetEntry& e : ts.entries) {
        std::string key = print_term(e.term);
        if (seen.emplace(key, true).second) out.entries.push_back(e);
    }
    return out;
}

DedupeReport dedupe_semantic(const TermSet& ts, const FiniteAlgebra& alg, Budget* budget) {
    // Two terms merge when they agree on every assignment over the union of
    // the set's variable namespaces.
    int max_x = 0, max_y = 0;
    for (const TermSetEntry& e : ts.entries) {
        VarSet vs = vars_of(e.term);
        max_x = std::max(max_x, vs.max_x());
        max_y = std::max(max_y, vs.max_y());
    }
    const int m = alg.size();

    auto function_key = [&](const Term& t) {
        CompiledTerm ct(alg, t);
        std::vector<int> xs(static_cast<std::size_t>(max_x), 0);
        std::vector<int> ys(static_cast<std::size_t>(max_y), 0);
        std::vector<int> odo(static_cast<std::size_t>(max_x + max_y), 0);
        std::vector<int> key;
        while (true) {
            for (int k = 0; k < max_x; ++k) xs[static_cast<std::size_t>(k)] = odo[static_cast<std::size_t>(k)];
            for (int k = 0; k < max_y; ++k) ys[static_cast<std::size_t>(k)] = odo[static_cast<std::size_t>(max_x + k)];
            key.push_back(ct.eval(xs, ys, budget));
            std::size_t c = 0;
            for (; c < odo.size(); ++c) {
                if (++odo[c] < m) break;
                odo[c] = 0;
            }
            if (c == odo.size()) break;
        }
        return key;
    };

    DedupeReport rep;
    rep.set = ts;
    rep.set.entries.clear();
    std::map<std::vector<int>, std::string> seen;
    for (const TermSetEntry& e : ts.entries) {
        auto key = function_key(e.term);
        auto [it, fresh] = seen.emplace(std::move(key), print_term(e.term));
        if (fresh) {
            rep.set.entries.push_back(e);
        } else {
            rep.merges.push_back("merged " + print_term(e.term) + " into " + it->second +
                                 " (equal functions on " + alg.name() + ")");
        }
    }
    return rep;
}

std::string render_termset(const TermSet& ts) {
    std::ostringstream out;
    for (const TermSetEntry& e : ts.entries) {
        out << "# " << e.prov.to_string();
        if (e.ignorable) out << " ignorable";
        out << "\n" << print_term(e.term) << "\n";
    }
    return out.str();
}

TermSet termset_from_terms(const Signature& sig, const std::vector<Term>& terms,
                           const std::string& label) {
    TermSet ts;
    ts.sig = sig;
    for (const Term& t : terms) {
        auto violations = validate_term(sig, t);
        if (!violations.empty()) throw InputError("invalid term: " + violations.front());
        bool ignorable = t.is_var() && t.kind() == VarKind::Y;
        ts.entries.push_back({t, {label, ""}, ignorable});
    }
    return ts;
}

}  // namespace bitideal
