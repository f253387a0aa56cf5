#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <utility>

namespace denokat {

template <class T>
struct FixResult {
    T value;
    int iterations = 0;
};

/// Kleene iteration from `bottom` until stabilization. `budget` should be the
/// lattice height plus one; exceeding it signals a non-monotone transformer
/// and is treated as a programming error.
template <class T, class F>
FixResult<T> lfp(F&& f, T bottom, int budget) {
    T cur = std::move(bottom);
    for (int i = 0; i < budget; ++i) {
        T next = f(cur);
        if (next == cur) return {std::move(cur), i + 1};
        cur = std::move(next);
    }
    throw std::runtime_error("lfp: iteration budget exceeded");
}

/// Dual iteration from `top`.
template <class T, class F>
FixResult<T> gfp(F&& f, T top, int budget) {
    T cur = std::move(top);
    for (int i = 0; i < budget; ++i) {
        T next = f(cur);
        if (next == cur) return {std::move(cur), i + 1};
        cur = std::move(next);
    }
    throw std::runtime_error("gfp: iteration budget exceeded");
}

using BitLat = std::set<int>;  // subset of a small finite universe

/// Checks Bekic's identity for monotone f : A1 x A2 -> A1, g : A1 x A2 -> A2
/// over powerset lattices with `n1`/`n2` element universes:
///   mu (x,y). (mu x0. f(x0,y), mu y0. g(x,y0))  ==  mu (x,y). (f(x,y), g(x,y))
bool bekic_check(const std::function<BitLat(const BitLat&, const BitLat&)>& f,
                 const std::function<BitLat(const BitLat&, const BitLat&)>& g, int n1, int n2);

}  // namespace denokat
