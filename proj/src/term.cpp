#include "bitideal/term.hpp"

#include <cctype>

#include "bitideal/errors.hpp"

namespace bitideal {

Term Term::var(VarKind k, int index) {
    if (index <= 0) throw InputError("variable index must be positive");
    Term t;
    t.is_var_ = true;
    t.kind_ = k;
    t.index_ = index;
    return t;
}

Term Term::app(std::string symbol, std::vector<Term> children) {
    Term t;
    t.is_var_ = false;
    t.symbol_ = std::move(symbol);
    t.children_ = std::move(children);
    return t;
}

bool Term::operator==(const Term& o) const {
    if (is_var_ != o.is_var_) return false;
    if (is_var_) return kind_ == o.kind_ && index_ == o.index_;
    return symbol_ == o.symbol_ && children_ == o.children_;
}

std::string var_name(VarKind k, int index) {
    return (k == VarKind::X ? "x" : "y") + std::to_string(index);
}

namespace {

// Is this identifier a variable token: ('x'|'y') [1-9][0-9]* ?
bool var_token(const std::string& id, VarKind& kind, int& index) {
    if (id.size() < 2) return false;
    if (id[0] != 'x' && id[0] != 'y') return false;
    if (id[1] < '1' || id[1] > '9') return false;
    long v = 0;
    for (std::size_t i = 1; i < id.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
        v = v * 10 + (id[i] - '0');
        if (v > 1'000'000) return false;
    }
    kind = id[0] == 'x' ? VarKind::X : VarKind::Y;
    index = static_cast<int>(v);
    return true;
}

class Parser {
public:
    Parser(const std::string& text, const Signature& sig) : text_(text), sig_(sig) {}

    Term parse() {
        Term t = term();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input after term", pos_);
        return t;
    }

private:
    const std::string& text_;
    const Signature& sig_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        auto head = [](char c) { return c == '_' || std::isalpha(static_cast<unsigned char>(c)); };
        auto tail = [&](char c) { return head(c) || std::isdigit(static_cast<unsigned char>(c)); };
        if (pos_ >= text_.size() || !head(text_[pos_]))
            throw ParseError("expected identifier", pos_);
        ++pos_;
        while (pos_ < text_.size() && tail(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    Term term() {
        std::size_t at = pos_;
        std::string id = identifier();
        VarKind kind;
        int index;
        if (var_token(id, kind, index)) return Term::var(kind, index);

        const OpSym* op = sig_.find(id);
        if (!op) throw ParseError("unknown symbol '" + id + "'", at);

        std::vector<Term> args;
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            skip_ws();
            if (peek() == ')') {
                ++pos_;
            } else {
                args.push_back(term());
                skip_ws();
                while (peek() == ',') {
                    ++pos_;
                    args.push_back(term());
                    skip_ws();
                }
                if (peek() != ')') throw ParseError("expected ')' or ','", pos_);
                ++pos_;
            }
        }
        if (static_cast<int>(args.size()) != op->arity)
            throw ParseError("symbol '" + id + "' expects " + std::to_string(op->arity) +
                                 " arguments, got " + std::to_string(args.size()),
                             at);
        return Term::app(id, std::move(args));
    }
};

void print_into(const Term& t, std::string& out) {
    if (t.is_var()) {
        out += var_name(t.kind(), t.index());
        return;
    }
    out += t.symbol();
    if (t.children().empty()) return;
    out += '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ',';
        print_into(t.children()[i], out);
    }
    out += ')';
}

void collect_violations(const Signature& sig, const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) return;
    const OpSym* op = sig.find(t.symbol());
    if (!op) {
        out.push_back("unknown symbol '" + t.symbol() + "'");
    } else if (op->arity != static_cast<int>(t.children().size())) {
        out.push_back("symbol '" + t.symbol() + "' has arity " + std::to_string(op->arity) +
                      " but " + std::to_string(t.children().size()) + " children");
    }
    for (const Term& c : t.children()) collect_violations(sig, c, out);
}

void collect_vars(const Term& t, VarSet& out) {
    if (t.is_var()) {
        (t.kind() == VarKind::X ? out.xvars : out.yvars).insert(t.index());
        return;
    }
    for (const Term& c : t.children()) collect_vars(c, out);
}

}  // namespace

Term parse_term(const std::string& text, const Signature& sig) {
    return Parser(text, sig).parse();
}

std::string print_term(const Term& t) {
    std::string out;
    print_into(t, out);
    return out;
}

std::vector<std::string> validate_term(const Signature& sig, const Term& t) {
    std::vector<std::string> out;
    collect_violations(sig, t, out);
    return out;
}

Term substitute(const Term& t, const Binding& binding) {
    if (t.is_var()) {
        auto it = binding.find({t.kind(), t.index()});
        return it == binding.end() ? t : it->second;
    }
    std::vector<Term> kids;
    kids.reserve(t.children().size());
    for (const Term& c : t.children()) kids.push_back(substitute(c, binding));
    return Term::app(t.symbol(), std::move(kids));
}

VarSet vars_of(const Term& t) {
    VarSet vs;
    collect_vars(t, vs);
    return vs;
}

}  // namespace bitideal
