#include "bitideal/ideal.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "bitideal/errors.hpp"

namespace bitideal {

namespace {

// Odometer over fixed domains; fn receives the current tuple and returns
// false to abort. Returns false when aborted.
bool enumerate(std::size_t slots, int domain, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> odo(slots, 0);
    if (domain <= 0 && slots > 0) return true;
    while (true) {
        if (!fn(odo)) return false;
        std::size_t k = 0;
        for (; k < slots; ++k) {
            if (++odo[k] < domain) break;
            odo[k] = 0;
        }
        if (k == slots) return true;
    }
}

struct ThetaEval {
    CompiledTerm ct;
    int n;
    ThetaEval(const FiniteAlgebra& alg, const BitWitness& w)
        : ct(alg, w.theta), n(w.n) {}
    int operator()(std::span<const int> hs, int a, Budget* budget) const {
        std::vector<int> xs(hs.begin(), hs.end());
        xs.push_back(a);
        return ct.eval(xs, {}, budget);
    }
};

struct AlphaEval {
    std::vector<CompiledTerm> cts;
    AlphaEval(const FiniteAlgebra& alg, const BitWitness& w) {
        for (const Term& t : w.alphas) cts.emplace_back(alg, t);
    }
    int operator()(int i, int a, int b, Budget* budget) const {
        int xs[2] = {a, b};
        return cts[static_cast<std::size_t>(i)].eval(xs, {}, budget);
    }
};

Subset theta_image_impl(const FiniteAlgebra& alg, const ThetaEval& theta, const Subset& h, int a,
                        Budget* budget) {
    Subset out(alg.size());
    if (h.empty()) return out;
    std::vector<int> mem = h.members();
    enumerate(static_cast<std::size_t>(theta.n), static_cast<int>(mem.size()),
              [&](const std::vector<int>& odo) {
                  std::vector<int> hs(odo.size());
                  for (std::size_t k = 0; k < odo.size(); ++k) hs[k] = mem[static_cast<std::size_t>(odo[k])];
                  out.add(theta(hs, a, budget));
                  return true;
              });
    return out;
}

std::vector<Subset> all_theta_images(const FiniteAlgebra& alg, const ThetaEval& theta,
                                     const Subset& h, Budget* budget) {
    std::vector<Subset> out;
    out.reserve(static_cast<std::size_t>(alg.size()));
    for (int a = 0; a < alg.size(); ++a) out.push_back(theta_image_impl(alg, theta, h, a, budget));
    return out;
}

Partition partition_from_images(const std::vector<Subset>& images) {
    const int m = static_cast<int>(images.size());
    std::vector<int> rep(static_cast<std::size_t>(m));
    std::map<std::uint64_t, int> first;
    for (int a = 0; a < m; ++a) {
        auto [it, fresh] = first.emplace(images[static_cast<std::size_t>(a)].mask(), a);
        rep[static_cast<std::size_t>(a)] = it->second;
    }
    return Partition(std::move(rep));
}

}  // namespace

Subset theta_image(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h, int a,
                   Budget* budget) {
    ThetaEval theta(alg, w);
    return theta_image_impl(alg, theta, h, a, budget);
}

Partition sim_relation(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h,
                       Budget* budget) {
    if (h.empty()) throw InputError("sim_relation requires a nonempty subset");
    ThetaEval theta(alg, w);
    return partition_from_images(all_theta_images(alg, theta, h, budget));
}

Subset eq_class(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h, int a,
                Budget* budget) {
    if (h.empty()) throw InputError("eq_class requires a nonempty subset");
    ThetaEval theta(alg, w);
    Subset ref = theta_image_impl(alg, theta, h, a, budget);
    Subset out(alg.size());
    for (int b = 0; b < alg.size(); ++b)
        if (theta_image_impl(alg, theta, h, b, budget) == ref) out.add(b);
    return out;
}

// ------------------------------------------------------------ term closure

CheckResult closed_under(const FiniteAlgebra& alg, const TermSet& ts, const Subset& h,
                         Budget* budget) {
    if (h.empty())
        return {false, FailureWitness{"nonempty", "", {}, std::nullopt}};
    const int m = alg.size();
    std::vector<int> mem = h.members();

    for (const TermSetEntry& e : ts.entries) {
        CompiledTerm ct(alg, e.term);
        std::vector<int> xl(ct.vars().xvars.begin(), ct.vars().xvars.end());
        std::vector<int> yl(ct.vars().yvars.begin(), ct.vars().yvars.end());
        std::vector<int> xs(static_cast<std::size_t>(ct.vars().max_x()), 0);
        std::vector<int> ys(static_cast<std::size_t>(ct.vars().max_y()), 0);
        CheckResult res{true, std::nullopt};
        enumerate(xl.size() + yl.size(), std::max(m, static_cast<int>(mem.size())),
                  [&](const std::vector<int>& odo) {
                      // x-slots range over the carrier, y-slots over H
                      for (std::size_t k = 0; k < xl.size(); ++k) {
                          if (odo[k] >= m) return true;
                          xs[static_cast<std::size_t>(xl[k] - 1)] = odo[k];
                      }
                      for (std::size_t k = 0; k < yl.size(); ++k) {
                          if (odo[xl.size() + k] >= static_cast<int>(mem.size())) return true;
                          ys[static_cast<std::size_t>(yl[k] - 1)] =
                              mem[static_cast<std::size_t>(odo[xl.size() + k])];
                      }
                      int v = ct.eval(xs, ys, budget);
                      if (h.contains(v)) return true;
                      FailureWitness fw;
                      fw.clause = e.prov.to_string();
                      fw.term = print_term(e.term);
                      for (int i : ct.vars().xvars)
                          fw.assignment[var_name(VarKind::X, i)] = xs[static_cast<std::size_t>(i - 1)];
                      for (int j : ct.vars().yvars)
                          fw.assignment[var_name(VarKind::Y, j)] = ys[static_cast<std::size_t>(j - 1)];
                      fw.value = v;
                      res = {false, std::move(fw)};
                      return false;
                  });
        if (!res.ok) return res;
    }
    return {true, std::nullopt};
}

Subset ideal_closure(const FiniteAlgebra& alg, const TermSet& ts, const Subset& seed, int zero,
                     Budget* budget) {
    const int m = alg.size();
    Subset h(m, seed.mask());
    h.add(zero);

    std::vector<CompiledTerm> cts;
    for (const TermSetEntry& e : ts.entries) cts.emplace_back(alg, e.term);

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> mem = h.members();
        for (const CompiledTerm& ct : cts) {
            std::vector<int> xl(ct.vars().xvars.begin(), ct.vars().xvars.end());
            std::vector<int> yl(ct.vars().yvars.begin(), ct.vars().yvars.end());
            std::vector<int> xs(static_cast<std::size_t>(ct.vars().max_x()), 0);
            std::vector<int> ys(static_cast<std::size_t>(ct.vars().max_y()), 0);
            enumerate(xl.size() + yl.size(), std::max(m, static_cast<int>(mem.size())),
                      [&](const std::vector<int>& odo) {
                          for (std::size_t k = 0; k < xl.size(); ++k) {
                              if (odo[k] >= m) return true;
                              xs[static_cast<std::size_t>(xl[k] - 1)] = odo[k];
                          }
                          for (std::size_t k = 0; k < yl.size(); ++k) {
                              if (odo[xl.size() + k] >= static_cast<int>(mem.size())) return true;
                              ys[static_cast<std::size_t>(yl[k] - 1)] =
                                  mem[static_cast<std::size_t>(odo[xl.size() + k])];
                          }
                          int v = ct.eval(xs, ys, budget);
                          if (!h.contains(v)) {
                              h.add(v);
                              changed = true;
                          }
                          return true;
                      });
        }
    }
    return h;
}

// ----------------------------------------------------------------- oracle

bool is_ideal_oracle(const FiniteAlgebra& alg, int zero, const Subset& h, Budget* budget) {
    for (const Partition& c : all_congruences(alg, budget))
        if (kernel_of(c, zero) == h) return true;
    return false;
}

std::vector<Subset> list_ideals(const FiniteAlgebra& alg, int zero, Budget* budget) {
    std::vector<Partition> congs = all_congruences(alg, budget);
    std::set<Subset> kernels;
    for (const Partition& c : congs) kernels.insert(kernel_of(c, zero));
    if (kernels.size() != congs.size())
        throw InputError("algebra '" + alg.name() +
                         "': two distinct congruences share a kernel (not a BIT algebra)");
    return {kernels.begin(), kernels.end()};
}

// -------------------------------------------------------------- conditions

Cond parse_cond(const std::string& s) {
    std::string t;
    for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static const std::map<std::string, Cond> names = {
        {"i", Cond::I},   {"ii", Cond::II}, {"iii", Cond::III}, {"iv", Cond::IV},
        {"v", Cond::V},   {"vi", Cond::VI}, {"vii", Cond::VII}};
    auto it = names.find(t);
    if (it == names.end()) throw InputError("unknown condition '" + s + "'");
    return it->second;
}

std::string cond_name(Cond c) {
    static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi", "vii"};
    return names[static_cast<int>(c)];
}

namespace {

// An operation to plug into inclusions (2.8)/(2.10): a signature symbol,
// theta, or one of the alphas.
struct ElemOp {
    std::string label;
    int arity;
    std::function<int(std::span<const int>, Budget*)> apply;
};

struct CondEngine {
    const FiniteAlgebra& alg;
    const BitWitness& w;
    const Subset& h;
    Budget* budget;
    ThetaEval theta;
    AlphaEval alpha;
    std::vector<Subset> images;  // theta(H,...,H,a) per a
    int zero;

    CondEngine(const FiniteAlgebra& a_, const BitWitness& w_, const Subset& h_, Budget* b_)
        : alg(a_), w(w_), h(h_), budget(b_), theta(a_, w_), alpha(a_, w_) {
        images = all_theta_images(alg, theta, h, budget);
        zero = eval_term(alg, w.zero, {});
    }

    std::vector<ElemOp> sig_ops() const {
        std::vector<ElemOp> out;
        for (std::size_t op = 0; op < alg.sig().ops().size(); ++op) {
            out.push_back({alg.sig().ops()[op].name, alg.sig().ops()[op].arity,
                           [this, op](std::span<const int> args, Budget* b) {
                               if (b) b->charge();
                               return alg.apply(static_cast<int>(op), args);
                           }});
        }
        return out;
    }

    ElemOp theta_op() const {
        return {"theta", w.n + 1, [this](std::span<const int> args, Budget* b) {
                    return theta(args.first(static_cast<std::size_t>(w.n)), args.back(), b);
                }};
    }

    ElemOp alpha_op(int j) const {
        return {"alpha" + std::to_string(j + 1), 2,
                [this, j](std::span<const int> args, Budget* b) {
                    return alpha(j, args[0], args[1], b);
                }};
    }

    CheckResult fail(std::string clause, std::map<std::string, int> assignment,
                     std::optional<int> value = std::nullopt) const {
        return {false, FailureWitness{std::move(clause), "", std::move(assignment), value}};
    }

    // H closed under theta.
    CheckResult theta_closed() const {
        std::vector<int> mem = h.members();
        CheckResult res{true, std::nullopt};
        enumerate(static_cast<std::size_t>(w.n) + 1, static_cast<int>(mem.size()),
                  [&](const std::vector<int>& odo) {
                      std::vector<int> hs(odo.size());
                      for (std::size_t k = 0; k < odo.size(); ++k)
                          hs[k] = mem[static_cast<std::size_t>(odo[k])];
                      int v = theta(std::span<const int>(hs).first(static_cast<std::size_t>(w.n)),
                                    hs.back(), budget);
                      if (h.contains(v)) return true;
                      std::map<std::string, int> asg;
                      for (std::size_t k = 0; k < hs.size(); ++k)
                          asg["h" + std::to_string(k + 1)] = hs[k];
                      res = fail("theta-closure", std::move(asg), v);
                      return false;
                  });
        return res;
    }

    // H closed under alpha_i (both arguments in H).
    CheckResult alpha_closed() const {
        std::vector<int> mem = h.members();
        for (int i = 0; i < w.n; ++i)
            for (int a : mem)
                for (int b : mem) {
                    int v = alpha(i, a, b, budget);
                    if (!h.contains(v))
                        return fail("alpha-closure i=" + std::to_string(i + 1),
                                    {{"h1", a}, {"h2", b}}, v);
                }
        return {true, std::nullopt};
    }

    // H closed under alpha_i(-, 0).
    CheckResult alpha0_closed() const {
        for (int i = 0; i < w.n; ++i)
            for (int a : h.members()) {
                int v = alpha(i, a, zero, budget);
                if (!h.contains(v))
                    return fail("alpha0-closure i=" + std::to_string(i + 1), {{"h1", a}}, v);
            }
        return {true, std::nullopt};
    }

    CheckResult contains_zero() const {
        if (h.contains(zero)) return {true, std::nullopt};
        return fail("zero-membership", {}, zero);
    }

    // Inclusion (2.8) for one operation tau.
    CheckResult incl_2_8(const ElemOp& tau) const {
        const int m = alg.size();
        const int k = tau.arity;
        CheckResult res{true, std::nullopt};
        enumerate(static_cast<std::size_t>(k), m, [&](const std::vector<int>& as) {
            std::vector<std::vector<int>> choices(static_cast<std::size_t>(k));
            for (int p = 0; p < k; ++p)
                choices[static_cast<std::size_t>(p)] = images[static_cast<std::size_t>(as[static_cast<std::size_t>(p)])].members();
            int rhs = tau.apply(as, budget);
            // product over the k image sets
            std::vector<int> idx(static_cast<std::size_t>(k), 0);
            for (const auto& c : choices)
                if (c.empty() && k > 0) return true;  // empty H
            while (true) {
                std::vector<int> us(static_cast<std::size_t>(k));
                for (int p = 0; p < k; ++p)
                    us[static_cast<std::size_t>(p)] = choices[static_cast<std::size_t>(p)][static_cast<std::size_t>(idx[static_cast<std::size_t>(p)])];
                int lhs = tau.apply(us, budget);
                for (int i = 0; i < w.n; ++i) {
                    int v = alpha(i, lhs, rhs, budget);
                    if (!h.contains(v)) {
                        std::map<std::string, int> asg;
                        for (int p = 0; p < k; ++p) {
                            asg["a" + std::to_string(p + 1)] = as[static_cast<std::size_t>(p)];
                            asg["u" + std::to_string(p + 1)] = us[static_cast<std::size_t>(p)];
                        }
                        res = fail("(2.8) tau=" + tau.label + " i=" + std::to_string(i + 1),
                                   std::move(asg), v);
                        return false;
                    }
                }
                std::size_t c = 0;
                for (; c < idx.size(); ++c) {
                    if (++idx[c] < static_cast<int>(choices[c].size())) break;
                    idx[c] = 0;
                }
                if (c == idx.size()) break;
            }
            return true;
        });
        return res;
    }

    // Inclusion (2.9) = (2.1).
    CheckResult incl_2_9() const {
        for (int a = 0; a < alg.size(); ++a) {
            std::vector<int> img = images[static_cast<std::size_t>(a)].members();
            for (int u : img)
                for (int v2 : img)
                    for (int i = 0; i < w.n; ++i) {
                        int v = alpha(i, u, v2, budget);
                        if (!h.contains(v))
                            return fail("(2.9) i=" + std::to_string(i + 1),
                                        {{"a", a}, {"u", u}, {"v", v2}}, v);
                    }
        }
        return {true, std::nullopt};
    }

    // Inclusion (2.10) for one signature operation tau.
    CheckResult incl_2_10(const ElemOp& tau) const {
        const int m = alg.size();
        const int k = tau.arity;
        CheckResult res{true, std::nullopt};
        enumerate(static_cast<std::size_t>(k), m, [&](const std::vector<int>& as) {
            int rhs = tau.apply(as, budget);
            for (int j = 0; j < k; ++j) {
                std::vector<int> args(as.begin(), as.end());
                for (int u : images[static_cast<std::size_t>(as[static_cast<std::size_t>(j)])].members()) {
                    args[static_cast<std::size_t>(j)] = u;
                    int lhs = tau.apply(args, budget);
                    for (int i = 0; i < w.n; ++i) {
                        int v = alpha(i, lhs, rhs, budget);
                        if (!h.contains(v)) {
                            std::map<std::string, int> asg;
                            for (int p = 0; p < k; ++p)
                                asg["a" + std::to_string(p + 1)] = as[static_cast<std::size_t>(p)];
                            asg["u"] = u;
                            res = fail("(2.10) tau=" + tau.label + " i=" + std::to_string(i + 1) +
                                           " j=" + std::to_string(j + 1),
                                       std::move(asg), v);
                            return false;
                        }
                    }
                }
            }
            return true;
        });
        return res;
    }

    // (2.4): the ~_H class of every a equals theta(H,...,H,a).
    CheckResult classes_equal_images() const {
        Partition sim = partition_from_images(images);
        for (int a = 0; a < alg.size(); ++a) {
            if (sim.block_of(a) != images[static_cast<std::size_t>(a)])
                return fail("(2.4) class-vs-image", {{"a", a}});
        }
        return {true, std::nullopt};
    }

    CheckResult subalgebra() const {
        if (is_subalgebra(alg, h)) return {true, std::nullopt};
        return fail("subalgebra", {}, 0);
    }
};

}  // namespace

CheckResult check_condition(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h,
                            Cond cond, bool semiabelian, Budget* budget) {
    if (h.empty()) throw InputError("check_condition requires a nonempty subset");
    if (cond == Cond::I) {
        int zero = eval_term(alg, w.zero, {});
        if (is_ideal_oracle(alg, zero, h, budget)) return {true, std::nullopt};
        return {false, FailureWitness{"oracle: not a congruence kernel", "", {}, std::nullopt}};
    }

    CondEngine eng(alg, w, h, budget);
    auto seq = [](std::initializer_list<CheckResult> rs) {
        for (const CheckResult& r : rs)
            if (!r.ok) return r;
        return CheckResult{true, std::nullopt};
    };

    auto closure_ii = [&] {
        return semiabelian ? eng.subalgebra() : seq({eng.theta_closed(), eng.alpha_closed()});
    };
    auto closure_0 = [&](bool with_zero) {
        if (semiabelian) return eng.subalgebra();
        if (with_zero) return seq({eng.contains_zero(), eng.theta_closed(), eng.alpha0_closed()});
        return seq({eng.theta_closed(), eng.alpha0_closed()});
    };

    switch (cond) {
        case Cond::II: {
            CheckResult r = closure_ii();
            if (!r.ok) return r;
            for (const ElemOp& tau : eng.sig_ops()) {
                r = eng.incl_2_8(tau);
                if (!r.ok) return r;
            }
            return eng.incl_2_8(eng.theta_op());
        }
        case Cond::III: {
            CheckResult r = closure_0(true);
            if (!r.ok) return r;
            for (const ElemOp& tau : eng.sig_ops()) {
                r = eng.incl_2_8(tau);
                if (!r.ok) return r;
            }
            r = eng.incl_2_8(eng.theta_op());
            if (!r.ok) return r;
            for (int j = 0; j < w.n; ++j) {
                r = eng.incl_2_8(eng.alpha_op(j));
                if (!r.ok) return r;
            }
            return r;
        }
        case Cond::IV: {
            CheckResult r = closure_0(false);
            if (!r.ok) return r;
            for (const ElemOp& tau : eng.sig_ops()) {
                r = eng.incl_2_8(tau);
                if (!r.ok) return r;
            }
            return eng.incl_2_9();
        }
        case Cond::V: {
            CheckResult r = closure_0(false);
            if (!r.ok) return r;
            r = eng.incl_2_9();
            if (!r.ok) return r;
            for (const ElemOp& tau : eng.sig_ops()) {
                r = eng.incl_2_10(tau);
                if (!r.ok) return r;
            }
            return r;
        }
        case Cond::VI: {
            CheckResult r = seq({eng.contains_zero(), eng.theta_closed(), eng.alpha0_closed()});
            if (!r.ok) return r;
            r = eng.classes_equal_images();
            if (!r.ok) return r;
            for (const ElemOp& tau : eng.sig_ops()) {
                r = eng.incl_2_10(tau);
                if (!r.ok) return r;
            }
            return r;
        }
        case Cond::VII: {
            Partition sim = partition_from_images(eng.images);
            CongruenceFailure cf;
            if (!is_congruence(alg, sim, &cf)) {
                std::map<std::string, int> asg;
                for (std::size_t p = 0; p < cf.lhs_args.size(); ++p) {
                    asg["a" + std::to_string(p + 1)] = cf.lhs_args[p];
                    asg["b" + std::to_string(p + 1)] = cf.rhs_args[p];
                }
                return {false,
                        FailureWitness{"(vii) sim not compatible with " + cf.symbol, "",
                                       std::move(asg), std::nullopt}};
            }
            if (kernel_of(sim, eng.zero) != h)
                return {false, FailureWitness{"(vii) kernel differs from H", "", {}, eng.zero}};
            return {true, std::nullopt};
        }
        default:
            throw InputError("unhandled condition");
    }
}

Prop21Result prop21_check(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h, int a,
                          int b, Budget* budget) {
    int zero = eval_term(alg, w.zero, {});
    std::vector<Partition> congs = all_congruences(alg, budget);
    const Partition* match = nullptr;
    for (const Partition& c : congs)
        if (kernel_of(c, zero) == h) {
            match = &c;
            break;
        }
    if (!match) throw InputError("prop21_check requires H to be an ideal");

    Prop21Result res;
    res.congruent = match->same(a, b);
    AlphaEval alpha(alg, w);
    res.alphas_in_h = true;
    for (int i = 0; i < w.n; ++i)
        if (!h.contains(alpha(i, a, b, budget))) res.alphas_in_h = false;
    ThetaEval theta(alg, w);
    res.a_in_theta_b = theta_image_impl(alg, theta, h, b, budget).contains(a);
    res.b_in_theta_a = theta_image_impl(alg, theta, h, a, budget).contains(b);
    return res;
}

bool inclusion_2_1(const FiniteAlgebra& alg, const BitWitness& w, const Subset& h,
                   Budget* budget) {
    if (h.empty()) throw InputError("inclusion_2_1 requires a nonempty subset");
    CondEngine eng(alg, w, h, budget);
    return eng.incl_2_9().ok;
}

bool right_cancellable(const FiniteAlgebra& alg, const BitWitness& w, Budget* budget,
                       const Subset* restrict_h) {
    ThetaEval theta(alg, w);
    AlphaEval alpha(alg, w);
    const int m = alg.size();
    std::vector<int> domain;
    if (restrict_h) {
        domain = restrict_h->members();
    } else {
        for (int i = 0; i < m; ++i) domain.push_back(i);
    }
    const std::size_t n = static_cast<std::size_t>(w.n);
    bool ok = true;
    enumerate(2 * n, static_cast<int>(domain.size()), [&](const std::vector<int>& odo) {
        std::vector<int> as(n), bs(n);
        for (std::size_t k = 0; k < n; ++k) {
            as[k] = domain[static_cast<std::size_t>(odo[k])];
            bs[k] = domain[static_cast<std::size_t>(odo[n + k])];
        }
        for (int i = 0; i < w.n; ++i) {
            int ref = alpha(i, theta(as, 0, budget), theta(bs, 0, budget), budget);
            for (int b = 1; b < m; ++b) {
                int v = alpha(i, theta(as, b, budget), theta(bs, b, budget), budget);
                if (v != ref) {
                    ok = false;
                    return false;
                }
            }
        }
        return true;
    });
    return ok;
}

// ------------------------------------------------------------ IdealContext

IdealContext::IdealContext(const FiniteAlgebra& alg, const VarietySpec& spec, Budget* budget)
    : alg_(alg),
      spec_(spec),
      zero_(eval_term(alg, spec.witness.zero, {})),
      sets_{gen_termset(spec, Variant::I, false), gen_termset(spec, Variant::II, false),
            gen_termset(spec, Variant::III, false), gen_termset(spec, Variant::IV, false)},
      congruences_(all_congruences(alg, budget)) {
    std::set<Subset> kernels;
    for (const Partition& c : congruences_) kernels.insert(kernel_of(c, zero_));
    ideals_.assign(kernels.begin(), kernels.end());
}

bool IdealContext::oracle_verdict(const Subset& h) const {
    return std::find(ideals_.begin(), ideals_.end(), h) != ideals_.end();
}

const std::vector<std::string>& IdealContext::method_names() {
    static const std::vector<std::string> names = {
        "cond-i",     "cond-ii",    "cond-iii",   "cond-iv", "cond-v", "cond-vi", "cond-vii",
        "termset-i",  "termset-ii", "termset-iii", "termset-iv", "oracle"};
    return names;
}

IdealReport IdealContext::report(const Subset& h, const std::string& method, bool semiabelian,
                                 Budget* budget) const {
    if (method != "all") {
        const auto& names = method_names();
        if (std::find(names.begin(), names.end(), method) == names.end())
            throw InputError("unknown method '" + method + "'");
    }

    IdealReport rep;
    rep.algebra = alg_.name();
    rep.subset = h.members();

    auto want = [&](const std::string& key) { return method == "all" || method == key; };

    auto add = [&](const std::string& key, const CheckResult& r) {
        rep.verdicts.emplace_back(key, r.ok);
        if (!r.ok && r.failure) rep.failures.push_back({key, *r.failure});
    };

    static const char* conds[] = {"i", "ii", "iii", "iv", "v", "vi", "vii"};
    for (int c = 0; c < 7; ++c) {
        std::string key = std::string("cond-") + conds[c];
        if (!want(key)) continue;
        add(key, check_condition(alg_, spec_.witness, h, static_cast<Cond>(c), semiabelian, budget));
    }
    for (int v = 0; v < 4; ++v) {
        std::string key = "termset-" + variant_name(static_cast<Variant>(v));
        if (!want(key)) continue;
        add(key, closed_under(alg_, sets_[static_cast<std::size_t>(v)], h, budget));
    }
    if (want("oracle")) {
        bool ok = oracle_verdict(h);
        rep.verdicts.emplace_back("oracle", ok);
        if (!ok) rep.failures.push_back({"oracle", {"not a congruence kernel", "", {}, std::nullopt}});
    }

    rep.agreement = true;
    for (const auto& [key, val] : rep.verdicts)
        if (val != rep.verdicts.front().second) rep.agreement = false;
    return rep;
}

}  // namespace bitideal
