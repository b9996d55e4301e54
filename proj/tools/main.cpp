// bitideal: finite-model toolkit for ideal conditions and determining term
// sets in BIT speciale varieties.
//
// Exit codes: 0 success / true verdict, 1 false verdict or failed check,
// 2 input error, 3 evaluation budget exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bitideal/errors.hpp"
#include "bitideal/ideal.hpp"
#include "bitideal/selftest.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace bitideal;

namespace {

struct Options {
    std::string variety;
    std::string sig_file;
    std::string algebra;
    std::string subset;
    std::string set_variant = "iv";
    std::string method = "all";
    std::string dedupe_file;
    std::string mode = "b";
    std::string filter;
    std::uint64_t budget = Budget::kDefaultLimit;
    bool semiabelian = false;
    bool verbose = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

VarietySpec load_spec(const Options& opt) {
    if (!opt.variety.empty() && !opt.sig_file.empty())
        throw InputError("--variety and --sig are mutually exclusive");
    if (!opt.variety.empty()) return builtin(opt.variety);
    if (!opt.sig_file.empty()) {
        SigFile sf = parse_sig_file(slurp(opt.sig_file));
        auto violations = validate_witness(sf.sig, sf.witness);
        if (!violations.empty()) throw InputError("invalid witness: " + violations.front());
        VarietySpec spec;
        spec.name = sf.sig.name();
        spec.sig = sf.sig;
        spec.witness = sf.witness;
        return spec;
    }
    throw InputError("one of --variety or --sig is required");
}

FiniteAlgebra load_algebra(const Options& opt, const VarietySpec& spec) {
    if (opt.algebra.empty()) throw InputError("--algebra is required for this command");
    if (const FiniteAlgebra* bundled = spec.find_bundled(opt.algebra)) return *bundled;
    if (opt.algebra.find('.') == std::string::npos && opt.algebra.find('/') == std::string::npos)
        throw InputError("'" + opt.algebra + "' is neither a bundled algebra of '" + spec.name +
                         "' nor a file path");
    return parse_alg_file(slurp(opt.algebra), spec.sig);
}

Subset parse_subset(const std::string& csv, int universe) {
    if (csv.empty()) throw InputError("--subset is required for this command");
    std::vector<int> xs;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw InputError("");
            xs.push_back(v);
        } catch (const std::exception&) {
            throw InputError("bad subset element '" + item + "'");
        }
    }
    for (int v : xs)
        if (v < 0 || v >= universe)
            throw InputError("subset element " + std::to_string(v) + " outside carrier 0.." +
                             std::to_string(universe - 1));
    return Subset::from_members(universe, xs);
}

json assignment_json(const std::map<std::string, int>& assignment) {
    json out = json::object();
    for (const auto& [name, value] : assignment) out[name] = value;
    return out;
}

json failure_json(const ReportFailure& f) {
    json out = json::object();
    out["condition"] = f.condition;
    out["clause"] = f.fw.clause;
    if (!f.fw.term.empty()) out["term"] = f.fw.term;
    out["assignment"] = assignment_json(f.fw.assignment);
    out["value"] = f.fw.value ? json(*f.fw.value) : json(nullptr);
    return out;
}

json subset_json(const Subset& s) {
    json out = json::array();
    for (int v : s.members()) out.push_back(v);
    return out;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// ------------------------------------------------------------------ verbs

int cmd_verify_witness(const Options& opt, Budget& budget) {
    VarietySpec spec = load_spec(opt);
    std::vector<const FiniteAlgebra*> algs;
    FiniteAlgebra loaded;
    if (!opt.algebra.empty()) {
        loaded = load_algebra(opt, spec);
        algs.push_back(&loaded);
    } else {
        for (const auto& a : spec.bundled) algs.push_back(&a);
        if (algs.empty()) throw InputError("no bundled algebras; pass --algebra");
    }

    json doc = json::object();
    doc["variety"] = spec.name;
    doc["witness_n"] = spec.witness.n;
    json results = json::array();
    bool all_ok = true;
    for (const FiniteAlgebra* alg : algs) {
        WitnessReport rep = verify_witness(*alg, spec.witness, &budget);
        all_ok = all_ok && rep.ok;
        json r = json::object();
        r["algebra"] = alg->name();
        r["ok"] = rep.ok;
        json fails = json::array();
        for (const auto& f : rep.failures) {
            json fj = json::object();
            fj["identity"] = f.identity;
            fj["assignment"] = assignment_json(f.assignment);
            fj["lhs"] = f.lhs;
            fj["rhs"] = f.rhs;
            fails.push_back(fj);
        }
        r["failures"] = fails;
        results.push_back(r);
    }
    doc["results"] = results;
    doc["ok"] = all_ok;
    emit(doc);
    if (opt.verbose)
        std::cerr << "verified witness on " << algs.size() << " algebra(s): "
                  << (all_ok ? "ok" : "FAILED") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_gen_terms(const Options& opt, Budget& budget) {
    TermSet ts;
    VarietySpec spec;
    if (!opt.variety.empty() && !opt.sig_file.empty()) {
        // extension: base set from the builtin, new-symbol clauses from the
        // enlarged signature in the .sig file
        VarietySpec base = builtin(opt.variety);
        SigFile sf = parse_sig_file(slurp(opt.sig_file));
        spec = extend_signature(
            base,
            [&] {
                std::vector<OpSym> extra;
                for (const OpSym& op : sf.sig.ops()) {
                    const OpSym* have = base.sig.find(op.name);
                    if (!have)
                        extra.push_back(op);
                    else if (have->arity != op.arity)
                        throw InputError("'" + op.name + "' changes arity in '" + opt.sig_file +
                                         "'");
                }
                return extra;
            }(),
            sf.sig.name());
        ts = extend_termset(gen_termset(base, parse_variant(opt.set_variant), opt.semiabelian),
                            spec, opt.mode.size() == 1 ? opt.mode[0] : '?');
    } else {
        spec = load_spec(opt);
        ts = gen_termset(spec, parse_variant(opt.set_variant), opt.semiabelian);
    }
    if (!opt.dedupe_file.empty()) {
        FiniteAlgebra alg = parse_alg_file(slurp(opt.dedupe_file), spec.sig);
        DedupeReport rep = dedupe_semantic(dedupe_syntactic(ts), alg, &budget);
        ts = rep.set;
        if (opt.verbose)
            for (const auto& m : rep.merges) std::cerr << m << "\n";
    }
    std::cout << render_termset(ts);
    if (opt.verbose) std::cerr << ts.entries.size() << " term(s)\n";
    return 0;
}

int cmd_check_ideal(const Options& opt, Budget& budget) {
    VarietySpec spec = load_spec(opt);
    FiniteAlgebra alg = load_algebra(opt, spec);
    Subset h = parse_subset(opt.subset, alg.size());
    IdealContext ctx(alg, spec, &budget);
    IdealReport rep = ctx.report(h, opt.method, opt.semiabelian, &budget);

    json doc = json::object();
    doc["algebra"] = rep.algebra;
    doc["subset"] = json(rep.subset);
    json verdicts = json::object();
    for (const auto& [key, value] : rep.verdicts) verdicts[key] = value;
    doc["verdicts"] = verdicts;
    doc["agreement"] = rep.agreement;
    json fails = json::array();
    for (const auto& f : rep.failures) fails.push_back(failure_json(f));
    doc["failures"] = fails;
    emit(doc);

    bool verdict = !rep.verdicts.empty() && rep.verdicts.front().second;
    if (opt.verbose)
        std::cerr << "subset is " << (verdict ? "" : "not ") << "an ideal ("
                  << rep.verdicts.size() << " method(s), agreement="
                  << (rep.agreement ? "true" : "false") << ")\n";
    return verdict ? 0 : 1;
}

int cmd_ideal_closure(const Options& opt, Budget& budget) {
    VarietySpec spec = load_spec(opt);
    FiniteAlgebra alg = load_algebra(opt, spec);
    Subset seed = opt.subset.empty() ? Subset(alg.size()) : parse_subset(opt.subset, alg.size());
    TermSet ts = gen_termset(spec, parse_variant(opt.set_variant), opt.semiabelian);
    int zero = zero_element(alg, spec.witness);
    Subset closure = ideal_closure(alg, ts, seed, zero, &budget);

    json doc = json::object();
    doc["algebra"] = alg.name();
    doc["seed"] = subset_json(seed);
    doc["set"] = variant_name(ts.variant);
    doc["closure"] = subset_json(closure);
    emit(doc);
    if (opt.verbose)
        std::cerr << "closure has " << closure.size() << " element(s)\n";
    return 0;
}

int cmd_list_ideals(const Options& opt, Budget& budget) {
    VarietySpec spec = load_spec(opt);
    FiniteAlgebra alg = load_algebra(opt, spec);
    int zero = zero_element(alg, spec.witness);
    auto ideals = list_ideals(alg, zero, &budget);

    json doc = json::object();
    doc["algebra"] = alg.name();
    doc["zero"] = zero;
    json arr = json::array();
    for (const Subset& s : ideals) arr.push_back(subset_json(s));
    doc["ideals"] = arr;
    doc["count"] = ideals.size();
    emit(doc);
    if (opt.verbose) std::cerr << ideals.size() << " ideal(s)\n";
    return 0;
}

int cmd_congruences(const Options& opt, Budget& budget) {
    VarietySpec spec = load_spec(opt);
    FiniteAlgebra alg = load_algebra(opt, spec);
    auto congruences = all_congruences(alg, &budget);
    int zero = zero_element(alg, spec.witness);

    json doc = json::object();
    doc["algebra"] = alg.name();
    json arr = json::array();
    for (const Partition& p : congruences) {
        json cj = json::object();
        json blocks = json::array();
        for (const auto& blk : p.blocks()) blocks.push_back(json(blk));
        cj["blocks"] = blocks;
        cj["kernel"] = subset_json(kernel_of(p, zero));
        arr.push_back(cj);
    }
    doc["congruences"] = arr;
    doc["count"] = congruences.size();
    emit(doc);
    if (opt.verbose) std::cerr << congruences.size() << " congruence(s)\n";
    return 0;
}

int cmd_prop21(const Options& opt, Budget& budget) {
    VarietySpec spec = load_spec(opt);
    FiniteAlgebra alg = load_algebra(opt, spec);
    Subset h = parse_subset(opt.subset, alg.size());

    json doc = json::object();
    doc["algebra"] = alg.name();
    doc["subset"] = subset_json(h);
    bool all_equal = true;
    json disagreements = json::array();
    for (int a = 0; a < alg.size(); ++a)
        for (int b = 0; b < alg.size(); ++b) {
            Prop21Result r = prop21_check(alg, spec.witness, h, a, b, &budget);
            if (r.all_equal()) continue;
            all_equal = false;
            json d = json::object();
            d["a"] = a;
            d["b"] = b;
            d["congruent"] = r.congruent;
            d["alphas_in_h"] = r.alphas_in_h;
            d["a_in_theta_b"] = r.a_in_theta_b;
            d["b_in_theta_a"] = r.b_in_theta_a;
            disagreements.push_back(d);
        }
    doc["pairs"] = alg.size() * alg.size();
    doc["all_equal"] = all_equal;
    doc["disagreements"] = disagreements;
    emit(doc);
    if (opt.verbose)
        std::cerr << "checked " << alg.size() * alg.size() << " pair(s): "
                  << (all_equal ? "all agree" : "DISAGREEMENT") << "\n";
    return all_equal ? 0 : 1;
}

int cmd_selftest(const Options& opt, Budget& budget) {
    auto results = run_selftest(opt.filter, &budget);
    json doc = json::object();
    json suites = json::array();
    bool all_ok = true;
    int total = 0;
    for (const auto& r : results) {
        all_ok = all_ok && r.ok();
        total += r.checks;
        json sj = json::object();
        sj["suite"] = r.name;
        sj["checks"] = r.checks;
        sj["failed"] = r.failures.size();
        sj["failures"] = json(r.failures);
        suites.push_back(sj);
        std::cerr << r.name << ": " << (r.checks - static_cast<int>(r.failures.size())) << "/"
                  << r.checks << " ok\n";
        for (const auto& f : r.failures) std::cerr << "  FAILED: " << f << "\n";
    }
    doc["suites"] = suites;
    doc["total_checks"] = total;
    doc["ok"] = all_ok;
    emit(doc);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ideal conditions and determining term sets on finite algebras"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--variety", opt.variety, "builtin variety name");
        sub->add_option("--sig", opt.sig_file, "signature/witness file (.sig)");
        sub->add_option("--budget", opt.budget, "evaluation budget");
        sub->add_flag("--verbose", opt.verbose, "human summary on stderr");
        return sub;
    };
    auto add_algebra = [&](CLI::App* sub) {
        sub->add_option("--algebra", opt.algebra, "bundled algebra name or .alg file");
        return sub;
    };

    CLI::App* verify = add_algebra(add_common(app.add_subcommand(
        "verify-witness", "check the defining identities on one or all bundled algebras")));
    (void)verify;

    CLI::App* gen = add_common(
        app.add_subcommand("gen-terms", "emit a determining term set with provenance"));
    gen->add_option("--set", opt.set_variant, "variant i|ii|iii|iv");
    gen->add_flag("--semiabelian", opt.semiabelian, "use the semi-abelian closure clause");
    gen->add_option("--dedupe", opt.dedupe_file, "merge terms equal as functions on this .alg");
    gen->add_option("--mode", opt.mode,
                    "extension mode a|b when --variety (base) and --sig (enlarged) are combined");

    CLI::App* check = add_algebra(add_common(
        app.add_subcommand("check-ideal", "test a subset against the ideal conditions")));
    check->add_option("--subset", opt.subset, "comma-separated elements");
    check->add_option("--method", opt.method, "oracle|cond-i..vii|termset-i..iv|all");
    check->add_flag("--semiabelian", opt.semiabelian, "use semi-abelian condition variants");

    CLI::App* closure = add_algebra(add_common(
        app.add_subcommand("ideal-closure", "least ideal containing the seed subset")));
    closure->add_option("--subset", opt.subset, "comma-separated seed elements");
    closure->add_option("--set", opt.set_variant, "variant i|ii|iii|iv");
    closure->add_flag("--semiabelian", opt.semiabelian, "use the semi-abelian closure clause");

    add_algebra(add_common(app.add_subcommand("list-ideals", "all ideals (congruence kernels)")));
    add_algebra(add_common(app.add_subcommand("congruences", "the whole congruence lattice")));

    CLI::App* prop = add_algebra(add_common(app.add_subcommand(
        "prop21", "four-way characterization of the congruence induced by an ideal")));
    prop->add_option("--subset", opt.subset, "the ideal, as comma-separated elements");

    CLI::App* self = add_common(
        app.add_subcommand("selftest", "run the bundled invariant suites"));
    self->add_option("--filter", opt.filter, "run only suites whose name contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    Budget budget(opt.budget);
    try {
        if (app.got_subcommand("verify-witness")) return cmd_verify_witness(opt, budget);
        if (app.got_subcommand("gen-terms")) return cmd_gen_terms(opt, budget);
        if (app.got_subcommand("check-ideal")) return cmd_check_ideal(opt, budget);
        if (app.got_subcommand("ideal-closure")) return cmd_ideal_closure(opt, budget);
        if (app.got_subcommand("list-ideals")) return cmd_list_ideals(opt, budget);
        if (app.got_subcommand("congruences")) return cmd_congruences(opt, budget);
        if (app.got_subcommand("prop21")) return cmd_prop21(opt, budget);
        if (app.got_subcommand("selftest")) return cmd_selftest(opt, budget);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
