#include "bitideal/witness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "bitideal/errors.hpp"

namespace bitideal {

// ------------------------------------------------------------- validation

std::vector<std::string> validate_witness(const Signature& sig, const BitWitness& w) {
    std::vector<std::string> out;
    if (w.n < 1) out.push_back("witness n must be positive");
    if (static_cast<int>(w.alphas.size()) != w.n)
        out.push_back("witness has " + std::to_string(w.alphas.size()) + " alphas, expected " +
                      std::to_string(w.n));
    auto check = [&](const Term& t, const std::string& which) {
        for (auto& v : validate_term(sig, t)) out.push_back(which + ": " + v);
    };
    check(w.zero, "zero");
    VarSet zv = vars_of(w.zero);
    if (!zv.xvars.empty() || !zv.yvars.empty()) out.push_back("zero term must be ground");
    for (std::size_t i = 0; i < w.alphas.size(); ++i) {
        check(w.alphas[i], "alpha" + std::to_string(i + 1));
        VarSet av = vars_of(w.alphas[i]);
        if (!av.yvars.empty() || av.max_x() > 2)
            out.push_back("alpha" + std::to_string(i + 1) + " must use only x1,x2");
    }
    check(w.theta, "theta");
    VarSet tv = vars_of(w.theta);
    if (!tv.yvars.empty() || tv.max_x() > w.n + 1)
        out.push_back("theta must use only x1..x" + std::to_string(w.n + 1));
    return out;
}

int zero_element(const FiniteAlgebra& alg, const BitWitness& w) {
    return eval_term(alg, w.zero, {});
}

// ------------------------------------------------------------ verification

Term theta_term(const BitWitness& w, const std::vector<Term>& args) {
    Binding b;
    for (std::size_t i = 0; i < args.size(); ++i) b[{VarKind::X, static_cast<int>(i) + 1}] = args[i];
    return substitute(w.theta, b);
}

Term alpha_term(const BitWitness& w, int i, const Term& a, const Term& b) {
    Binding bind;
    bind[{VarKind::X, 1}] = a;
    bind[{VarKind::X, 2}] = b;
    return substitute(w.alphas[static_cast<std::size_t>(i)], bind);
}

WitnessReport verify_witness(const FiniteAlgebra& alg, const BitWitness& w, Budget* budget) {
    auto shape = validate_witness(alg.sig(), w);
    if (!shape.empty()) throw InputError("invalid witness: " + shape.front());

    WitnessReport rep;
    auto record = [&](const std::string& which, const IdentityResult& r) {
        if (r.holds) return;
        rep.ok = false;
        rep.failures.push_back({which, r.counter, r.lhs_value, r.rhs_value});
    };

    // (1.1): alpha_i(x,x) = 0
    for (int i = 0; i < w.n; ++i) {
        Term lhs = alpha_term(w, i, Term::x(1), Term::x(1));
        record("(1.1) i=" + std::to_string(i + 1), holds_identity(alg, lhs, w.zero, budget));
    }

    // (1.2): theta(alpha_1(x,y),...,alpha_n(x,y),y) = x
    {
        std::vector<Term> args;
        for (int i = 0; i < w.n; ++i) args.push_back(alpha_term(w, i, Term::x(1), Term::x(2)));
        args.push_back(Term::x(2));
        record("(1.2)", holds_identity(alg, theta_term(w, args), Term::x(1), budget));
    }

    // (2.2): theta(0,...,0,a) = a
    {
        std::vector<Term> args(static_cast<std::size_t>(w.n), w.zero);
        args.push_back(Term::x(1));
        record("(2.2)", holds_identity(alg, theta_term(w, args), Term::x(1), budget));
    }

    return rep;
}

// -------------------------------------------------------------- registry

const FiniteAlgebra* VarietySpec::find_bundled(const std::string& algname) const {
    for (const auto& a : bundled)
        if (a.name() == algname) return &a;
    return nullptr;
}

namespace {

std::vector<int> build_table(int m, int arity, const std::function<int(std::span<const int>)>& fn) {
    std::size_t total = 1;
    for (int i = 0; i < arity; ++i) total *= static_cast<std::size_t>(m);
    std::vector<int> out(total);
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (int p = arity - 1; p >= 0; --p) {
            args[static_cast<std::size_t>(p)] = static_cast<int>(rest % static_cast<std::size_t>(m));
            rest /= static_cast<std::size_t>(m);
        }
        out[idx] = fn(args);
    }
    return out;
}

// ---- group models

FiniteAlgebra cyclic_group(const Signature& sig, const std::string& name, int m) {
    return FiniteAlgebra(
        name, sig, m,
        {build_table(m, 0, [](auto) { return 0; }),
         build_table(m, 2, [m](std::span<const int> a) { return (a[0] + a[1]) % m; }),
         build_table(m, 1, [m](std::span<const int> a) { return (m - a[0]) % m; })});
}

FiniteAlgebra klein_group(const Signature& sig) {
    return FiniteAlgebra(
        "V4", sig, 4,
        {build_table(4, 0, [](auto) { return 0; }),
         build_table(4, 2, [](std::span<const int> a) { return a[0] ^ a[1]; }),
         build_table(4, 1, [](std::span<const int> a) { return a[0]; })});
}

// S3 with A3 = {0,1,2}: 0 = id, 1 = (0 1 2), 2 = (0 2 1), then the three
// transpositions.
const std::vector<std::vector<int>>& s3_perms() {
    static const std::vector<std::vector<int>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    return perms;
}

FiniteAlgebra s3_group(const Signature& sig) {
    const auto& perms = s3_perms();
    auto index_of = [&](const std::vector<int>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        throw InputError("not a permutation");
    };
    auto compose = [&](int a, int b) {
        std::vector<int> r(3);
        for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(i)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
        return index_of(r);
    };
    auto invert = [&](int a) {
        std::vector<int> r(3);
        for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)])] = i;
        return index_of(r);
    };
    return FiniteAlgebra(
        "S3", sig, 6,
        {build_table(6, 0, [](auto) { return 0; }),
         build_table(6, 2, [&](std::span<const int> a) { return compose(a[0], a[1]); }),
         build_table(6, 1, [&](std::span<const int> a) { return invert(a[0]); })});
}

// D4 as r^i s^j, index i + 4j.
FiniteAlgebra d4_group(const Signature& sig) {
    auto mul = [](int a, int b) {
        int i = a % 4, j = a / 4, k = b % 4, l = b / 4;
        int rot = ((j == 0 ? i + k : i - k) % 4 + 4) % 4;
        return rot + 4 * ((j + l) % 2);
    };
    auto invert = [&](int a) {
        int i = a % 4, j = a / 4;
        return j == 0 ? (4 - i) % 4 : a;
    };
    return FiniteAlgebra(
        "D4", sig, 8,
        {build_table(8, 0, [](auto) { return 0; }),
         build_table(8, 2, [&](std::span<const int> a) { return mul(a[0], a[1]); }),
         build_table(8, 1, [&](std::span<const int> a) { return invert(a[0]); })});
}

// ---- ring models

FiniteAlgebra zn_ring(const Signature& sig, const std::string& name, int m) {
    return FiniteAlgebra(
        name, sig, m,
        {build_table(m, 0, [](auto) { return 0; }),
         build_table(m, 2, [m](std::span<const int> a) { return (a[0] + a[1]) % m; }),
         build_table(m, 1, [m](std::span<const int> a) { return (m - a[0]) % m; }),
         build_table(m, 2, [m](std::span<const int> a) { return (a[0] * a[1]) % m; })});
}

// ---- loop model: first nonassociative normalized Latin square of order 5.

// Backtracking over normalized Latin squares (first row/column the identity),
// accepting the lexicographically first nonassociative one.
std::vector<std::vector<int>> find_nonassoc_loop(int m) {
    std::vector<std::vector<int>> sq(static_cast<std::size_t>(m),
                                     std::vector<int>(static_cast<std::size_t>(m), -1));
    for (int i = 0; i < m; ++i) {
        sq[0][static_cast<std::size_t>(i)] = i;
        sq[static_cast<std::size_t>(i)][0] = i;
    }
    std::function<bool(int, int)> rec = [&](int r, int c) -> bool {
        if (r == m) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int d = 0; d < m; ++d)
                        if (sq[static_cast<std::size_t>(sq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])][static_cast<std::size_t>(d)] !=
                            sq[static_cast<std::size_t>(a)][static_cast<std::size_t>(sq[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)])])
                            return true;
            return false;
        }
        int nr = c + 1 == m ? r + 1 : r;
        int nc = c + 1 == m ? 0 : c + 1;
        if (sq[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] >= 0) return rec(nr, nc);
        for (int v = 0; v < m; ++v) {
            bool ok = true;
            for (int i = 0; i < m && ok; ++i)
                if (sq[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] == v ||
                    sq[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] == v)
                    ok = false;
            if (!ok) continue;
            sq[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
            if (rec(nr, nc)) return true;
            sq[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = -1;
        }
        return false;
    };
    if (!rec(1, 1)) throw InputError("no nonassociative loop of order " + std::to_string(m));
    return sq;
}

FiniteAlgebra loop_from_square(const Signature& sig, const std::string& name,
                               const std::vector<std::vector<int>>& sq, bool with_ldiv) {
    const int m = static_cast<int>(sq.size());
    auto mul = [&](int x, int y) { return sq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };
    auto rdiv = [&](int x, int y) {  // unique z with z*y = x
        for (int z = 0; z < m; ++z)
            if (mul(z, y) == x) return z;
        throw InputError("column is not a permutation");
    };
    auto ldiv = [&](int x, int y) {  // unique z with x*z = y
        for (int z = 0; z < m; ++z)
            if (mul(x, z) == y) return z;
        throw InputError("row is not a permutation");
    };
    std::vector<std::vector<int>> tables = {
        build_table(m, 0, [](auto) { return 0; }),
        build_table(m, 2, [&](std::span<const int> a) { return mul(a[0], a[1]); }),
        build_table(m, 2, [&](std::span<const int> a) { return rdiv(a[0], a[1]); })};
    if (with_ldiv)
        tables.push_back(build_table(m, 2, [&](std::span<const int> a) { return ldiv(a[0], a[1]); }));
    return FiniteAlgebra(name, sig, m, tables);
}

// Right-divisible models that need not be loops: e is a left identity and
// every right translation is a permutation. Enumerates column permutation
// choices lexicographically and returns the k-th table whose rows are not all
// permutations (so the model is not secretly a loop).
std::vector<std::vector<int>> find_semiloop_square(int m, int skip) {
    std::vector<std::vector<int>> perm_pool;
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    do {
        perm_pool.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    // choices[y] indexes a permutation sigma_y with sigma_y(0) = y
    std::vector<std::vector<int>> per_col(static_cast<std::size_t>(m));
    for (const auto& q : perm_pool)
        per_col[static_cast<std::size_t>(q[0])].push_back(static_cast<int>(&q - perm_pool.data()));

    std::vector<int> choice(static_cast<std::size_t>(m), 0);
    while (true) {
        std::vector<std::vector<int>> sq(static_cast<std::size_t>(m),
                                         std::vector<int>(static_cast<std::size_t>(m)));
        for (int y = 0; y < m; ++y) {
            const auto& sigma = perm_pool[static_cast<std::size_t>(
                per_col[static_cast<std::size_t>(y)][static_cast<std::size_t>(choice[static_cast<std::size_t>(y)])])];
            for (int x = 0; x < m; ++x) sq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = sigma[static_cast<std::size_t>(x)];
        }
        bool all_rows_perm = true;
        for (int x = 1; x < m && all_rows_perm; ++x) {
            std::vector<bool> seen(static_cast<std::size_t>(m), false);
            for (int y = 0; y < m; ++y) {
                int v = sq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
                if (seen[static_cast<std::size_t>(v)]) {
                    all_rows_perm = false;
                    break;
                }
                seen[static_cast<std::size_t>(v)] = true;
            }
        }
        if (!all_rows_perm) {
            if (skip == 0) return sq;
            --skip;
        }
        // odometer over column choices
        int y = m - 1;
        while (y >= 0) {
            if (++choice[static_cast<std::size_t>(y)] < static_cast<int>(per_col[static_cast<std::size_t>(y)].size())) break;
            choice[static_cast<std::size_t>(y)] = 0;
            --y;
        }
        if (y < 0) throw InputError("no non-loop semiloop model of order " + std::to_string(m));
    }
}

FiniteAlgebra semiloop_from_square(const Signature& sig, const std::string& name,
                                   const std::vector<std::vector<int>>& sq) {
    const int m = static_cast<int>(sq.size());
    auto mul = [&](int x, int y) { return sq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };
    auto rdiv = [&](int x, int y) {
        for (int z = 0; z < m; ++z)
            if (mul(z, y) == x) return z;
        throw InputError("column is not a permutation");
    };
    return FiniteAlgebra(
        name, sig, m,
        {build_table(m, 0, [](auto) { return 0; }),
         build_table(m, 2, [&](std::span<const int> a) { return mul(a[0], a[1]); }),
         build_table(m, 2, [&](std::span<const int> a) { return rdiv(a[0], a[1]); })});
}

// ---- witnesses

BitWitness group_style_witness(const std::string& mulsym, const std::string& divish) {
    BitWitness w;
    w.n = 1;
    w.zero = Term::app("e");
    w.alphas = {Term::app(divish, {Term::x(1), Term::x(2)})};
    w.theta = Term::app(mulsym, {Term::x(1), Term::x(2)});
    return w;
}

VarietySpec make_group() {
    Signature sig("Group", {{"e", 0}, {"mul", 2}, {"inv", 1}});
    BitWitness w;
    w.n = 1;
    w.zero = Term::app("e");
    w.alphas = {Term::app("mul", {Term::x(1), Term::app("inv", {Term::x(2)})})};
    w.theta = Term::app("mul", {Term::x(1), Term::x(2)});
    VarietySpec v{"group", sig, w, true, {}};
    v.bundled = {cyclic_group(sig, "Z4", 4), klein_group(sig), s3_group(sig), d4_group(sig)};
    return v;
}

VarietySpec make_ring() {
    Signature sig("Ring", {{"zero", 0}, {"add", 2}, {"neg", 1}, {"mul", 2}});
    BitWitness w;
    w.n = 1;
    w.zero = Term::app("zero");
    w.alphas = {Term::app("add", {Term::x(1), Term::app("neg", {Term::x(2)})})};
    w.theta = Term::app("add", {Term::x(1), Term::x(2)});
    VarietySpec v{"ring", sig, w, true, {}};
    v.bundled = {zn_ring(sig, "Z4ring", 4), zn_ring(sig, "Z6ring", 6)};
    return v;
}

VarietySpec make_loop() {
    Signature sig("Loop", {{"e", 0}, {"mul", 2}, {"rdiv", 2}, {"ldiv", 2}});
    VarietySpec v{"loop", sig, group_style_witness("mul", "rdiv"), true, {}};
    v.bundled = {loop_from_square(sig, "Loop5", find_nonassoc_loop(5), true)};
    return v;
}

VarietySpec make_semiloop() {
    Signature sig("SemiLoop", {{"e", 0}, {"mul", 2}, {"rdiv", 2}});
    VarietySpec v{"semiloop", sig, group_style_witness("mul", "rdiv"), true, {}};
    v.bundled = {semiloop_from_square(sig, "SL3", find_semiloop_square(3, 0)),
                 semiloop_from_square(sig, "SL4", find_semiloop_square(4, 0))};
    return v;
}

VarietySpec make_div_inv_groupoid() {
    Signature sig("DivInvGroupoid", {{"e", 0}, {"mul", 2}, {"rdiv", 2}});
    VarietySpec v{"div_inv_groupoid", sig, group_style_witness("mul", "rdiv"), true, {}};
    v.bundled = {semiloop_from_square(sig, "DIG3", find_semiloop_square(3, 1)),
                 semiloop_from_square(sig, "DIG4", find_semiloop_square(4, 1))};
    return v;
}

VarietySpec make_omega_group_demo() {
    VarietySpec base = make_group();
    Signature sig("OmegaGroupDemo", {{"e", 0}, {"mul", 2}, {"inv", 1}, {"omega", 2}});
    VarietySpec v{"omega_group_demo", sig, base.witness, true, {}};
    auto with_mul = [&](const std::string& name, int m) {
        return FiniteAlgebra(
            name, sig, m,
            {build_table(m, 0, [](auto) { return 0; }),
             build_table(m, 2, [m](std::span<const int> a) { return (a[0] + a[1]) % m; }),
             build_table(m, 1, [m](std::span<const int> a) { return (m - a[0]) % m; }),
             build_table(m, 2, [m](std::span<const int> a) { return (a[0] * a[1]) % m; })});
    };
    v.bundled = {with_mul("Z4omega", 4), with_mul("Z6omega", 6)};
    return v;
}

VarietySpec make_omega_loop_demo() {
    Signature sig("OmegaLoopDemo", {{"e", 0}, {"mul", 2}, {"rdiv", 2}, {"ldiv", 2}, {"omega", 1}});
    VarietySpec v{"omega_loop_demo", sig, group_style_witness("mul", "rdiv"), true, {}};
    auto sq = find_nonassoc_loop(5);
    FiniteAlgebra base = loop_from_square(Signature("Loop", {{"e", 0}, {"mul", 2}, {"rdiv", 2}, {"ldiv", 2}}),
                                          "Loop5", sq, true);
    // omega(a) = a*a keeps the identity fixed
    std::vector<std::vector<int>> tables = {base.table(0), base.table(1), base.table(2),
                                            base.table(3)};
    tables.push_back(build_table(5, 1, [&](std::span<const int> a) {
        return sq[static_cast<std::size_t>(a[0])][static_cast<std::size_t>(a[0])];
    }));
    v.bundled = {FiniteAlgebra("Loop5omega", sig, 5, tables)};
    return v;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "group", "ring", "loop", "semiloop", "div_inv_groupoid",
        "omega_group_demo", "omega_loop_demo"};
    return names;
}

VarietySpec builtin(const std::string& name) {
    if (name == "group") return make_group();
    if (name == "ring") return make_ring();
    if (name == "loop") return make_loop();
    if (name == "semiloop") return make_semiloop();
    if (name == "div_inv_groupoid") return make_div_inv_groupoid();
    if (name == "omega_group_demo") return make_omega_group_demo();
    if (name == "omega_loop_demo") return make_omega_loop_demo();
    throw InputError("unknown builtin variety '" + name + "'");
}

VarietySpec extend_signature(const VarietySpec& base, const std::vector<OpSym>& extra,
                             const std::string& name) {
    std::vector<OpSym> ops = base.sig.ops();
    for (const OpSym& op : extra) {
        if (base.sig.find(op.name)) throw InputError("symbol clash on '" + op.name + "'");
        ops.push_back(op);
    }
    bool extra_constant = std::any_of(extra.begin(), extra.end(),
                                      [](const OpSym& o) { return o.arity == 0; });
    VarietySpec v;
    v.name = name;
    v.sig = Signature(name, ops);
    v.witness = base.witness;
    v.semiabelian = base.semiabelian && !extra_constant;
    return v;
}

// ---------------------------------------------------------------- .sig io

SigFile parse_sig_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string name;
    std::vector<OpSym> ops;
    int n = -1;
    std::string zero_src, theta_src;
    std::map<int, std::string> alpha_src;

    auto strip = [](const std::string& l) {
        auto pos = l.find('#');
        return pos == std::string::npos ? l : l.substr(0, pos);
    };

    while (std::getline(in, line)) {
        std::istringstream ls(strip(line));
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "signature") {
            if (!(ls >> name)) throw InputError(".sig: malformed 'signature' line");
        } else if (word == "op") {
            OpSym op;
            if (!(ls >> op.name >> op.arity)) throw InputError(".sig: malformed 'op' line");
            ops.push_back(op);
        } else if (word == "witness") {
            std::string spec;
            if (!(ls >> spec) || spec.rfind("n=", 0) != 0)
                throw InputError(".sig: malformed 'witness' line");
            n = std::stoi(spec.substr(2));
        } else if (word == "zero:") {
            std::getline(ls, zero_src);
        } else if (word == "theta:") {
            std::getline(ls, theta_src);
        } else if (word.rfind("alpha", 0) == 0 && word.back() == ':') {
            int i = std::stoi(word.substr(5, word.size() - 6));
            std::string rest;
            std::getline(ls, rest);
            alpha_src[i] = rest;
        } else {
            throw InputError(".sig: unexpected token '" + word + "'");
        }
    }
    if (name.empty()) throw InputError(".sig: missing 'signature' line");
    if (n < 1) throw InputError(".sig: missing or invalid 'witness n=' line");

    SigFile out;
    out.sig = Signature(name, std::move(ops));
    out.witness.n = n;
    if (zero_src.empty()) throw InputError(".sig: missing 'zero:' line");
    if (theta_src.empty()) throw InputError(".sig: missing 'theta:' line");
    out.witness.zero = parse_term(zero_src, out.sig);
    out.witness.theta = parse_term(theta_src, out.sig);
    out.witness.alphas.clear();
    for (int i = 1; i <= n; ++i) {
        auto it = alpha_src.find(i);
        if (it == alpha_src.end())
            throw InputError(".sig: missing 'alpha" + std::to_string(i) + ":' line");
        out.witness.alphas.push_back(parse_term(it->second, out.sig));
    }
    auto shape = validate_witness(out.sig, out.witness);
    if (!shape.empty()) throw InputError(".sig: " + shape.front());
    return out;
}

std::string render_sig_file(const Signature& sig, const BitWitness& w) {
    std::ostringstream out;
    out << "signature " << sig.name() << "\n";
    for (const OpSym& op : sig.ops()) out << "op " << op.name << " " << op.arity << "\n";
    out << "witness n=" << w.n << "\n";
    out << "zero: " << print_term(w.zero) << "\n";
    for (int i = 0; i < w.n; ++i)
        out << "alpha" << (i + 1) << ": " << print_term(w.alphas[static_cast<std::size_t>(i)]) << "\n";
    out << "theta: " << print_term(w.theta) << "\n";
    return out.str();
}

}  // namespace bitideal
