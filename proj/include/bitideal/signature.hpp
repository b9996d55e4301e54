#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace bitideal {

struct OpSym {
    std::string name;
    int arity = 0;
    bool operator==(const OpSym&) const = default;
};

bool is_identifier(const std::string& s);

// A finite set of operation symbols with arities. Order is significant: it
// fixes the deterministic generation order everywhere downstream.
class Signature {
public:
    Signature() = default;
    Signature(std::string name, std::vector<OpSym> ops);

    const std::string& name() const { return name_; }
    const std::vector<OpSym>& ops() const { return ops_; }

    // -1 when the symbol is absent.
    int index_of(const std::string& sym) const;
    const OpSym* find(const std::string& sym) const;
    bool has_constant() const;

    bool operator==(const Signature& o) const { return name_ == o.name_ && ops_ == o.ops_; }

private:
    std::string name_;
    std::vector<OpSym> ops_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace bitideal
