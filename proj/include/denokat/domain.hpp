#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace denokat {

using Value = int32_t;
using StateId = uint32_t;

/// A finite sequence of output events (the value printed by each `print`).
using Trace = std::vector<Value>;

std::string trace_to_string(const Trace& t);

/// Eventually-periodic infinite trace, stored as prefix + nonempty cycle.
/// Kept in canonical form: the cycle is reduced to its primitive period and
/// the prefix is maximally folded into the cycle, so two lassos compare equal
/// iff they denote the same infinite trace.
struct Lasso {
    Trace prefix;
    Trace cycle;

    Lasso() = default;
    Lasso(Trace p, Trace c);

    /// First n events of the denoted infinite trace.
    Trace unfold(size_t n) const;

    bool operator==(const Lasso& o) const { return prefix == o.prefix && cycle == o.cycle; }
    bool operator<(const Lasso& o) const {
        if (prefix != o.prefix) return prefix < o.prefix;
        return cycle < o.cycle;
    }
};

std::string lasso_to_string(const Lasso& l);

/// Finite value domain: k named variables over residues 0..modulus-1.
/// States are encoded as base-`modulus` numbers, one digit per variable;
/// all semantic sets hold these encoded ids.
class ValueDomain {
public:
    ValueDomain() = default;
    ValueDomain(int modulus, std::vector<std::string> vars);

    int modulus() const { return modulus_; }
    const std::vector<std::string>& vars() const { return vars_; }
    size_t var_count() const { return vars_.size(); }

    uint32_t state_count() const { return state_count_; }

    int var_index(const std::string& name) const;       // throws on unknown name
    bool has_var(const std::string& name) const;

    Value get(StateId s, int var) const;
    StateId put(StateId s, int var, Value v) const;

    Value norm(int64_t x) const;                         // reduce into 0..modulus-1

    std::string state_to_string(StateId s) const;

    bool operator==(const ValueDomain& o) const {
        return modulus_ == o.modulus_ && vars_ == o.vars_;
    }

private:
    int modulus_ = 2;
    std::vector<std::string> vars_;
    std::vector<uint32_t> stride_;
    uint32_t state_count_ = 1;
};

/// Product of two independent variable stores (local x global). Used by the
/// procedure-call languages where state = lstate x gstate.
struct SplitDomain {
    ValueDomain local;
    ValueDomain global;

    uint32_t state_count() const { return local.state_count() * global.state_count(); }
    StateId combine(StateId l, StateId g) const { return l * global.state_count() + g; }
    StateId local_part(StateId s) const { return s / global.state_count(); }
    StateId global_part(StateId s) const { return s % global.state_count(); }
};

}  // namespace denokat
