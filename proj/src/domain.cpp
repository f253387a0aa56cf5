#include "denokat/domain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace denokat {

std::string trace_to_string(const Trace& t) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ' ';
        os << t[i];
    }
    os << ']';
    return os.str();
}

namespace {

// Smallest p dividing |c| such that c is a power of its first p elements.
size_t primitive_period(const Trace& c) {
    for (size_t p = 1; p <= c.size(); ++p) {
        if (c.size() % p != 0) continue;
        bool ok = true;
        for (size_t i = p; i < c.size() && ok; ++i) ok = (c[i] == c[i % p]);
        if (ok) return p;
    }
    return c.size();
}

}  // namespace

Lasso::Lasso(Trace p, Trace c) : prefix(std::move(p)), cycle(std::move(c)) {
    if (cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    size_t per = primitive_period(cycle);
    cycle.resize(per);
    // Fold the prefix into the cycle while the last prefix event coincides with
    // the last cycle event; each fold rotates the cycle one step backwards.
    // Together with the primitive period this yields the unique minimal form.
    while (!prefix.empty() && prefix.back() == cycle.back()) {
        prefix.pop_back();
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    }
}

Trace Lasso::unfold(size_t n) const {
    Trace out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < prefix.size())
            out.push_back(prefix[i]);
        else
            out.push_back(cycle[(i - prefix.size()) % cycle.size()]);
    }
    return out;
}

std::string lasso_to_string(const Lasso& l) {
    return trace_to_string(l.prefix) + "(" + trace_to_string(l.cycle) + ")^w";
}

ValueDomain::ValueDomain(int modulus, std::vector<std::string> vars)
    : modulus_(modulus), vars_(std::move(vars)) {
    if (modulus_ < 2) throw std::invalid_argument("modulus must be >= 2");
    std::set<std::string> seen;
    for (const auto& v : vars_)
        if (!seen.insert(v).second)
            throw std::invalid_argument("duplicate variable name: " + v);
    stride_.resize(vars_.size());
    uint64_t count = 1;
    for (size_t i = vars_.size(); i-- > 0;) {
        stride_[i] = static_cast<uint32_t>(count);
        count *= static_cast<uint64_t>(modulus_);
        if (count > (1u << 30)) throw std::invalid_argument("state space too large");
    }
    state_count_ = static_cast<uint32_t>(count);
}

int ValueDomain::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    throw std::out_of_range("unknown variable: " + name);
}

bool ValueDomain::has_var(const std::string& name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

Value ValueDomain::get(StateId s, int var) const {
    return static_cast<Value>((s / stride_[var]) % static_cast<uint32_t>(modulus_));
}

StateId ValueDomain::put(StateId s, int var, Value v) const {
    Value old = get(s, var);
    return s + static_cast<uint32_t>(v - old) * stride_[var];
}

Value ValueDomain::norm(int64_t x) const {
    int64_t m = modulus_;
    int64_t r = x % m;
    if (r < 0) r += m;
    return static_cast<Value>(r);
}

std::string ValueDomain::state_to_string(StateId s) const {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (i) os << ',';
        os << vars_[i] << '=' << get(s, static_cast<int>(i));
    }
    os << '}';
    return os.str();
}

}  // namespace denokat
