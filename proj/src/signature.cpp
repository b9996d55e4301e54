#include "bitideal/signature.hpp"

#include "bitideal/errors.hpp"

namespace bitideal {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto head = [](char c) { return c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(s[0])) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!tail(s[i])) return false;
    return true;
}

Signature::Signature(std::string name, std::vector<OpSym> ops)
    : name_(std::move(name)), ops_(std::move(ops)) {
    if (!is_identifier(name_)) throw InputError("signature name is not an identifier: '" + name_ + "'");
    for (int i = 0; i < static_cast<int>(ops_.size()); ++i) {
        const OpSym& op = ops_[i];
        if (!is_identifier(op.name))
            throw InputError("operation symbol is not an identifier: '" + op.name + "'");
        if (op.arity < 0) throw InputError("negative arity for symbol '" + op.name + "'");
        if (!index_.emplace(op.name, i).second)
            throw InputError("duplicate operation symbol '" + op.name + "'");
    }
}

int Signature::index_of(const std::string& sym) const {
    auto it = index_.find(sym);
    return it == index_.end() ? -1 : it->second;
}

const OpSym* Signature::find(const std::string& sym) const {
    int i = index_of(sym);
    return i < 0 ? nullptr : &ops_[i];
}

bool Signature::has_constant() const {
    for (const auto& op : ops_)
        if (op.arity == 0) return true;
    return false;
}

}  // namespace bitideal
