#include "bitideal/algebra.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "bitideal/errors.hpp"

namespace bitideal {

// ---------------------------------------------------------------- Subset

Subset::Subset(int universe, std::uint64_t bits) : universe_(universe), bits_(bits) {
    if (universe < 0 || universe > 64) throw InputError("carrier size out of range");
    if (universe < 64 && (bits >> universe) != 0)
        throw InputError("subset member outside carrier");
}

Subset Subset::full(int universe) {
    return Subset(universe, universe == 64 ? ~0ull : (1ull << universe) - 1);
}

Subset Subset::of(int universe, std::initializer_list<int> xs) {
    Subset s(universe);
    for (int x : xs) s.add(x);
    return s;
}

Subset Subset::from_members(int universe, const std::vector<int>& xs) {
    Subset s(universe);
    for (int x : xs) s.add(x);
    return s;
}

void Subset::add(int a) {
    if (a < 0 || a >= universe_) throw InputError("element " + std::to_string(a) + " outside carrier");
    bits_ |= 1ull << a;
}

int Subset::size() const { return std::popcount(bits_); }

std::vector<int> Subset::members() const {
    std::vector<int> out;
    for (int i = 0; i < universe_; ++i)
        if (bits_ >> i & 1u) out.push_back(i);
    return out;
}

bool Subset::operator<(const Subset& o) const {
    if (size() != o.size()) return size() < o.size();
    return members() < o.members();
}

// -------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> rep) : rep_(std::move(rep)) {
    const int m = universe();
    // Normalize: follow representative chains, then relabel by least element.
    for (int i = 0; i < m; ++i) {
        if (rep_[i] < 0 || rep_[i] >= m) throw InputError("partition representative out of range");
        int r = i;
        while (rep_[r] != r) r = rep_[r];
        rep_[i] = r;
    }
    std::vector<int> least(m, -1);
    for (int i = 0; i < m; ++i)
        if (least[rep_[i]] < 0) least[rep_[i]] = i;
    for (int i = 0; i < m; ++i) rep_[i] = least[rep_[i]];
}

Partition Partition::discrete(int m) {
    std::vector<int> rep(m);
    std::iota(rep.begin(), rep.end(), 0);
    return Partition(std::move(rep));
}

Partition Partition::indiscrete(int m) { return Partition(std::vector<int>(m, 0)); }

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out;
    std::map<int, int> slot;
    for (int i = 0; i < universe(); ++i) {
        auto [it, fresh] = slot.emplace(rep_[i], static_cast<int>(out.size()));
        if (fresh) out.emplace_back();
        out[it->second].push_back(i);
    }
    return out;
}

Subset Partition::block_of(int a) const {
    Subset s(universe());
    for (int i = 0; i < universe(); ++i)
        if (rep_[i] == rep_[a]) s.add(i);
    return s;
}

int Partition::block_count() const {
    std::set<int> reps(rep_.begin(), rep_.end());
    return static_cast<int>(reps.size());
}

bool Partition::refines(const Partition& o) const {
    for (int i = 0; i < universe(); ++i)
        if (!o.same(i, rep_[i])) return false;
    return true;
}

// ---------------------------------------------------------- FiniteAlgebra

namespace {

std::size_t table_size(int m, int arity) {
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(m);
    return n;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::string name, Signature sig, int size,
                             std::vector<std::vector<int>> tables)
    : name_(std::move(name)), sig_(std::move(sig)), size_(size), tables_(std::move(tables)) {
    if (size_ < 1) throw InputError("algebra size must be >= 1");
    if (size_ > 64) throw InputError("algebra size must be <= 64");
    if (tables_.size() != sig_.ops().size())
        throw InputError("algebra '" + name_ + "': expected one table per symbol");
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const OpSym& op = sig_.ops()[i];
        if (tables_[i].size() != table_size(size_, op.arity))
            throw InputError("algebra '" + name_ + "': table for '" + op.name + "' has " +
                             std::to_string(tables_[i].size()) + " entries, expected " +
                             std::to_string(table_size(size_, op.arity)));
        for (int v : tables_[i])
            if (v < 0 || v >= size_)
                throw InputError("algebra '" + name_ + "': table entry " + std::to_string(v) +
                                 " for '" + op.name + "' outside carrier of size " +
                                 std::to_string(size_));
    }
}

int FiniteAlgebra::apply(int op, std::span<const int> args) const {
    std::size_t idx = 0;
    for (int a : args) idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a);
    return tables_[op][idx];
}

// ------------------------------------------------------------ CompiledTerm

CompiledTerm::CompiledTerm(const FiniteAlgebra& alg, const Term& t) : alg_(&alg) {
    auto violations = validate_term(alg.sig(), t);
    if (!violations.empty()) throw InputError("invalid term: " + violations.front());
    vars_ = vars_of(t);
    // Postorder flattening.
    std::vector<const Term*> work{&t};
    std::vector<const Term*> order;
    while (!work.empty()) {
        const Term* cur = work.back();
        work.pop_back();
        order.push_back(cur);
        for (const Term& c : cur->children()) work.push_back(&c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Term* cur = *it;
        if (cur->is_var()) {
            code_.push_back({cur->kind() == VarKind::X ? Op::PushX : Op::PushY,
                             cur->index() - 1, 0});
        } else {
            code_.push_back({Op::Apply, alg.sig().index_of(cur->symbol()),
                             static_cast<int>(cur->children().size())});
        }
    }
    stack_.reserve(code_.size());
}

int CompiledTerm::eval(std::span<const int> xs, std::span<const int> ys, Budget* budget) const {
    if (budget) budget->charge();
    stack_.clear();
    for (const Instr& ins : code_) {
        switch (ins.op) {
            case Op::PushX:
                if (ins.a >= static_cast<int>(xs.size())) throw InputError("unbound variable x" + std::to_string(ins.a + 1));
                stack_.push_back(xs[ins.a]);
                break;
            case Op::PushY:
                if (ins.a >= static_cast<int>(ys.size())) throw InputError("unbound variable y" + std::to_string(ins.a + 1));
                stack_.push_back(ys[ins.a]);
                break;
            case Op::Apply: {
                const int k = ins.arity;
                std::span<const int> args(stack_.data() + stack_.size() - k, static_cast<std::size_t>(k));
                int v = alg_->apply(ins.a, args);
                stack_.resize(stack_.size() - k);
                stack_.push_back(v);
                break;
            }
        }
    }
    return stack_.back();
}

int eval_term(const FiniteAlgebra& alg, const Term& t, const std::map<VarKey, int>& assign,
              Budget* budget) {
    CompiledTerm ct(alg, t);
    std::vector<int> xs(static_cast<std::size_t>(ct.vars().max_x()), -1);
    std::vector<int> ys(static_cast<std::size_t>(ct.vars().max_y()), -1);
    for (int i : ct.vars().xvars) {
        auto it = assign.find({VarKind::X, i});
        if (it == assign.end()) throw InputError("unbound variable x" + std::to_string(i));
        xs[i - 1] = it->second;
    }
    for (int j : ct.vars().yvars) {
        auto it = assign.find({VarKind::Y, j});
        if (it == assign.end()) throw InputError("unbound variable y" + std::to_string(j));
        ys[j - 1] = it->second;
    }
    return ct.eval(xs, ys, budget);
}

// ----------------------------------------------------------- identities

IdentityResult holds_identity(const FiniteAlgebra& alg, const Term& lhs, const Term& rhs,
                              Budget* budget) {
    CompiledTerm cl(alg, lhs), cr(alg, rhs);
    VarSet vs = vars_of(lhs);
    VarSet rv = vars_of(rhs);
    vs.xvars.insert(rv.xvars.begin(), rv.xvars.end());
    vs.yvars.insert(rv.yvars.begin(), rv.yvars.end());

    std::vector<VarKey> keys;
    for (int i : vs.xvars) keys.push_back({VarKind::X, i});
    for (int j : vs.yvars) keys.push_back({VarKind::Y, j});

    std::vector<int> xs(static_cast<std::size_t>(vs.max_x()), 0);
    std::vector<int> ys(static_cast<std::size_t>(vs.max_y()), 0);
    std::vector<int> odo(keys.size(), 0);
    const int m = alg.size();

    IdentityResult res;
    while (true) {
        for (std::size_t k = 0; k < keys.size(); ++k) {
            (keys[k].first == VarKind::X ? xs : ys)[keys[k].second - 1] = odo[k];
        }
        int a = cl.eval(xs, ys, budget);
        int b = cr.eval(xs, ys, budget);
        if (a != b) {
            res.holds = false;
            for (std::size_t k = 0; k < keys.size(); ++k)
                res.counter[var_name(keys[k].first, keys[k].second)] = odo[k];
            res.lhs_value = a;
            res.rhs_value = b;
            return res;
        }
        // odometer
        std::size_t k = 0;
        for (; k < odo.size(); ++k) {
            if (++odo[k] < m) break;
            odo[k] = 0;
        }
        if (k == odo.size()) break;
    }
    res.holds = true;
    return res;
}

bool is_zero_ideal_term(const FiniteAlgebra& alg, int zero, const Term& t, Budget* budget) {
    CompiledTerm ct(alg, t);
    const VarSet& vs = ct.vars();
    std::vector<int> xs(static_cast<std::size_t>(vs.max_x()), 0);
    std::vector<int> ys(static_cast<std::size_t>(vs.max_y()), zero);
    std::vector<int> xl(vs.xvars.begin(), vs.xvars.end());
    std::vector<int> odo(xl.size(), 0);
    const int m = alg.size();
    while (true) {
        for (std::size_t k = 0; k < xl.size(); ++k) xs[xl[k] - 1] = odo[k];
        if (ct.eval(xs, ys, budget) != zero) return false;
        std::size_t k = 0;
        for (; k < odo.size(); ++k) {
            if (++odo[k] < m) break;
            odo[k] = 0;
        }
        if (k == odo.size()) break;
    }
    return true;
}

// -------------------------------------------------------------- closures

Subset subuniverse(const FiniteAlgebra& alg, const Subset& seed) {
    const int m = alg.size();
    Subset h(m, seed.mask());
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> mem = h.members();
        for (std::size_t op = 0; op < alg.sig().ops().size(); ++op) {
            const int k = alg.sig().ops()[op].arity;
            if (k == 0) {
                int v = alg.apply(static_cast<int>(op), {});
                if (!h.contains(v)) {
                    h.add(v);
                    changed = true;
                }
                continue;
            }
            if (mem.empty()) continue;
            std::vector<int> odo(static_cast<std::size_t>(k), 0);
            std::vector<int> args(static_cast<std::size_t>(k));
            while (true) {
                for (int p = 0; p < k; ++p) args[p] = mem[odo[p]];
                int v = alg.apply(static_cast<int>(op), args);
                if (!h.contains(v)) {
                    h.add(v);
                    changed = true;
                }
                std::size_t c = 0;
                for (; c < odo.size(); ++c) {
                    if (++odo[c] < static_cast<int>(mem.size())) break;
                    odo[c] = 0;
                }
                if (c == odo.size()) break;
            }
        }
    }
    return h;
}

bool is_subalgebra(const FiniteAlgebra& alg, const Subset& h) {
    return subuniverse(alg, h) == h;
}

// ------------------------------------------------------------ congruences

bool is_congruence(const FiniteAlgebra& alg, const Partition& p, CongruenceFailure* failure) {
    const int m = alg.size();
    // Single-coordinate compatibility suffices: full compatibility follows by
    // transitivity.
    for (std::size_t op = 0; op < alg.sig().ops().size(); ++op) {
        const int k = alg.sig().ops()[op].arity;
        if (k == 0) continue;
        std::vector<int> args(static_cast<std::size_t>(k), 0);
        std::vector<int> odo(static_cast<std::size_t>(k), 0);
        while (true) {
            for (int pth = 0; pth < k; ++pth) args[pth] = odo[pth];
            int base = alg.apply(static_cast<int>(op), args);
            for (int pos = 0; pos < k; ++pos) {
                int orig = args[pos];
                for (int b = 0; b < m; ++b) {
                    if (!p.same(orig, b)) continue;
                    args[pos] = b;
                    int other = alg.apply(static_cast<int>(op), args);
                    if (!p.same(base, other)) {
                        if (failure) {
                            failure->symbol = alg.sig().ops()[op].name;
                            args[pos] = orig;
                            failure->lhs_args = args;
                            args[pos] = b;
                            failure->rhs_args = args;
                        }
                        return false;
                    }
                }
                args[pos] = orig;
            }
            std::size_t c = 0;
            for (; c < odo.size(); ++c) {
                if (++odo[c] < m) break;
                odo[c] = 0;
            }
            if (c == odo.size()) break;
        }
    }
    return true;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int m) : parent(m) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace

Partition principal_congruence(const FiniteAlgebra& alg, int a, int b, Budget* budget) {
    const int m = alg.size();
    if (a < 0 || a >= m || b < 0 || b >= m) throw InputError("element outside carrier");
    UnionFind uf(m);
    uf.merge(a, b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t op = 0; op < alg.sig().ops().size(); ++op) {
            const int k = alg.sig().ops()[op].arity;
            if (k == 0) continue;
            std::vector<int> args(static_cast<std::size_t>(k), 0);
            std::vector<int> odo(static_cast<std::size_t>(k), 0);
            while (true) {
                for (int pth = 0; pth < k; ++pth) args[pth] = odo[pth];
                int base = alg.apply(static_cast<int>(op), args);
                for (int pos = 0; pos < k; ++pos) {
                    int orig = args[pos];
                    for (int c = 0; c < m; ++c) {
                        if (uf.find(orig) != uf.find(c)) continue;
                        args[pos] = c;
                        if (budget) budget->charge();
                        int other = alg.apply(static_cast<int>(op), args);
                        if (uf.merge(base, other)) changed = true;
                    }
                    args[pos] = orig;
                }
                std::size_t c = 0;
                for (; c < odo.size(); ++c) {
                    if (++odo[c] < m) break;
                    odo[c] = 0;
                }
                if (c == odo.size()) break;
            }
        }
    }
    return Partition(std::move(uf.parent));
}

namespace {

Partition join(const Partition& p, const Partition& q) {
    UnionFind uf(p.universe());
    for (int i = 0; i < p.universe(); ++i) {
        uf.merge(i, p.rep(i));
        uf.merge(i, q.rep(i));
    }
    return Partition(std::move(uf.parent));
}

}  // namespace

std::vector<Partition> all_congruences(const FiniteAlgebra& alg, Budget* budget) {
    const int m = alg.size();
    std::set<Partition> found;
    found.insert(Partition::discrete(m));
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) found.insert(principal_congruence(alg, a, b, budget));

    // Every congruence is a join of principals, so closing under pairwise
    // joins yields the whole lattice.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Partition> cur(found.begin(), found.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                if (budget) budget->charge();
                Partition jn = join(cur[i], cur[j]);
                if (found.insert(std::move(jn)).second) changed = true;
            }
    }
    return {found.begin(), found.end()};
}

Subset kernel_of(const Partition& p, int zero) {
    if (zero < 0 || zero >= p.universe()) throw InputError("zero element outside carrier");
    return p.block_of(zero);
}

// ----------------------------------------------------------------- .alg io

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

FiniteAlgebra parse_alg_file(const std::string& text, const Signature& sig) {
    std::istringstream in(text);
    std::string line;
    std::string name;
    int size = -1;
    std::vector<std::vector<int>> tables(sig.ops().size());
    std::vector<bool> seen(sig.ops().size(), false);
    int current = -1;

    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "algebra") {
            std::string colon, signame;
            if (!(ls >> name >> colon >> signame) || colon != ":")
                throw InputError(".alg: malformed 'algebra' line");
            if (signame != sig.name())
                throw InputError(".alg: algebra declares signature '" + signame +
                                 "', expected '" + sig.name() + "'");
            current = -1;
        } else if (word == "size") {
            if (!(ls >> size)) throw InputError(".alg: malformed 'size' line");
            current = -1;
        } else if (word == "table") {
            std::string sym;
            if (!(ls >> sym)) throw InputError(".alg: malformed 'table' line");
            current = sig.index_of(sym);
            if (current < 0) throw InputError(".alg: unknown symbol '" + sym + "'");
            if (seen[current]) throw InputError(".alg: duplicate table for '" + sym + "'");
            seen[current] = true;
            int v;
            while (ls >> v) tables[current].push_back(v);
        } else {
            // continuation of the current table
            if (current < 0) throw InputError(".alg: unexpected token '" + word + "'");
            std::istringstream first(word);
            int v;
            if (!(first >> v)) throw InputError(".alg: expected integer, got '" + word + "'");
            tables[current].push_back(v);
            while (ls >> v) tables[current].push_back(v);
        }
    }
    if (name.empty()) throw InputError(".alg: missing 'algebra' line");
    if (size < 1) throw InputError(".alg: missing or invalid 'size' line");
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw InputError(".alg: missing table for '" + sig.ops()[i].name + "'");
    return FiniteAlgebra(name, sig, size, std::move(tables));
}

std::string render_alg_file(const FiniteAlgebra& alg) {
    std::ostringstream out;
    out << "algebra " << alg.name() << " : " << alg.sig().name() << "\n";
    out << "size " << alg.size() << "\n";
    for (std::size_t op = 0; op < alg.sig().ops().size(); ++op) {
        const OpSym& sym = alg.sig().ops()[op];
        out << "table " << sym.name << "\n";
        const auto& tab = alg.table(static_cast<int>(op));
        if (tab.empty()) continue;
        // one row per leading argument for arity >= 2, otherwise one line
        std::size_t row = sym.arity >= 2 ? tab.size() / static_cast<std::size_t>(alg.size())
                                         : tab.size();
        if (row == 0) row = 1;
        for (std::size_t i = 0; i < tab.size(); ++i) {
            out << tab[i];
            out << ((i + 1) % row == 0 ? '\n' : ' ');
        }
    }
    return out.str();
}

}  // namespace bitideal
