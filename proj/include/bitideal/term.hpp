#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bitideal/signature.hpp"

namespace bitideal {

// Parameter variables (x-kind) and ideal-slot variables (y-kind) live in
// disjoint namespaces.
enum class VarKind { X, Y };

// Immutable term tree: Var(kind, index) or App(symbol, children).
// Compared structurally.
class Term {
public:
    static Term var(VarKind k, int index);
    static Term x(int index) { return var(VarKind::X, index); }
    static Term y(int index) { return var(VarKind::Y, index); }
    static Term app(std::string symbol, std::vector<Term> children = {});

    bool is_var() const { return is_var_; }
    bool is_app() const { return !is_var_; }
    VarKind kind() const { return kind_; }
    int index() const { return index_; }
    const std::string& symbol() const { return symbol_; }
    const std::vector<Term>& children() const { return children_; }

    bool operator==(const Term& o) const;
    bool operator!=(const Term& o) const { return !(*this == o); }

private:
    bool is_var_ = true;
    VarKind kind_ = VarKind::X;
    int index_ = 1;
    std::string symbol_;
    std::vector<Term> children_;
};

using VarKey = std::pair<VarKind, int>;
using Binding = std::map<VarKey, Term>;

struct VarSet {
    std::set<int> xvars;
    std::set<int> yvars;
    int max_x() const { return xvars.empty() ? 0 : *xvars.rbegin(); }
    int max_y() const { return yvars.empty() ? 0 : *yvars.rbegin(); }
    bool operator==(const VarSet&) const = default;
};

std::string var_name(VarKind k, int index);

// Grammar: term := var | sym | sym '(' term (',' term)* ')'
//          var  := ('x'|'y') [1-9][0-9]*
// Whitespace between tokens is insignificant; constants may be written with
// or without '()'. Throws ParseError / InputError.
Term parse_term(const std::string& text, const Signature& sig);

// Canonical form: constants bare, no spaces. parse_term(print_term(t)) == t.
std::string print_term(const Term& t);

// Empty result means ok; never throws.
std::vector<std::string> validate_term(const Signature& sig, const Term& t);

// Simultaneous replacement; unbound variables unchanged.
Term substitute(const Term& t, const Binding& binding);

VarSet vars_of(const Term& t);

}  // namespace bitideal
