#include "denokat/fixpoint.hpp"

namespace denokat {

bool bekic_check(const std::function<BitLat(const BitLat&, const BitLat&)>& f,
                 const std::function<BitLat(const BitLat&, const BitLat&)>& g, int n1, int n2) {
    using Pair = std::pair<BitLat, BitLat>;
    int budget = n1 + n2 + 2;

    // nested construction: each component solved by an inner fixed point
    auto nested = [&](const Pair& p) -> Pair {
        BitLat x = lfp([&](const BitLat& x0) { return f(x0, p.second); }, BitLat{}, n1 + 2).value;
        BitLat y = lfp([&](const BitLat& y0) { return g(p.first, y0); }, BitLat{}, n2 + 2).value;
        return {std::move(x), std::move(y)};
    };
    Pair lhs = lfp(nested, Pair{}, budget).value;

    // simultaneous construction
    auto simultaneous = [&](const Pair& p) -> Pair { return {f(p.first, p.second), g(p.first, p.second)}; };
    Pair rhs = lfp(simultaneous, Pair{}, budget).value;

    return lhs == rhs;
}

}  // namespace denokat
