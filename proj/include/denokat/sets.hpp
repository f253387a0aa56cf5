#pragma once

#include <cstdint>
#include <set>
#include <utility>

#include "denokat/domain.hpp"

namespace denokat {

constexpr int kDefaultTraceBound = 8;

/// One step of a traced relation: source state, emitted events, target state.
struct Step {
    StateId src;
    Trace tr;
    StateId dst;

    bool operator==(const Step& o) const = default;
    bool operator<(const Step& o) const {
        if (src != o.src) return src < o.src;
        if (dst != o.dst) return dst < o.dst;
        return tr < o.tr;
    }
};

/// Finite subset of state x trace x state. `src_space`/`dst_space` give the
/// sizes of the two state spaces (they differ for e.g. state -> query
/// relations); operations reject mismatched spaces.
///
/// `truncated` marks the set as a bounded under-approximation: some elements
/// were dropped because a trace exceeded the configured length bound.
class TracedRel {
public:
    TracedRel() = default;
    TracedRel(uint32_t src_space, uint32_t dst_space)
        : src_space_(src_space), dst_space_(dst_space) {}

    uint32_t src_space() const { return src_space_; }
    uint32_t dst_space() const { return dst_space_; }
    bool truncated() const { return truncated_; }
    void set_truncated(bool t) { truncated_ = t; }

    const std::set<Step>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }
    size_t size() const { return steps_.size(); }
    bool contains(const Step& s) const { return steps_.count(s) != 0; }

    void insert(StateId src, Trace tr, StateId dst);
    void insert(const Step& s) { steps_.insert(s); }

    /// True if the real (untruncated) set could be nonempty.
    bool maybe_nonempty() const { return !steps_.empty() || truncated_; }

    bool operator==(const TracedRel& o) const {
        return steps_ == o.steps_ && src_space_ == o.src_space_ && dst_space_ == o.dst_space_;
    }
    bool same_elements(const TracedRel& o) const { return steps_ == o.steps_; }

private:
    uint32_t src_space_ = 0;
    uint32_t dst_space_ = 0;
    std::set<Step> steps_;
    bool truncated_ = false;
};

/// Finite subset of state x trace (err / fin_dvg carriers).
class StateTraceSet {
public:
    StateTraceSet() = default;
    explicit StateTraceSet(uint32_t space) : space_(space) {}

    uint32_t space() const { return space_; }
    bool truncated() const { return truncated_; }
    void set_truncated(bool t) { truncated_ = t; }

    const std::set<std::pair<StateId, Trace>>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    size_t size() const { return items_.size(); }
    bool contains(StateId s, const Trace& t) const { return items_.count({s, t}) != 0; }

    void insert(StateId s, Trace t) { items_.insert({s, std::move(t)}); }
    bool maybe_nonempty() const { return !items_.empty() || truncated_; }

    bool operator==(const StateTraceSet& o) const {
        return items_ == o.items_ && space_ == o.space_;
    }

private:
    uint32_t space_ = 0;
    std::set<std::pair<StateId, Trace>> items_;
    bool truncated_ = false;
};

/// Finite subset of the state space.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(uint32_t space) : space_(space) {}
    static StateSet all(uint32_t space);

    uint32_t space() const { return space_; }
    bool truncated() const { return truncated_; }
    void set_truncated(bool t) { truncated_ = t; }

    const std::set<StateId>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    size_t size() const { return items_.size(); }
    bool contains(StateId s) const { return items_.count(s) != 0; }

    void insert(StateId s) { items_.insert(s); }
    bool maybe_nonempty() const { return !items_.empty() || truncated_; }

    StateSet complement() const;

    bool operator==(const StateSet& o) const { return items_ == o.items_ && space_ == o.space_; }

private:
    uint32_t space_ = 0;
    std::set<StateId> items_;
    bool truncated_ = false;
};

/// Finite subset of state x itrace, itraces represented as canonical lassos.
class LassoSet {
public:
    LassoSet() = default;
    explicit LassoSet(uint32_t space) : space_(space) {}

    uint32_t space() const { return space_; }
    bool truncated() const { return truncated_; }
    void set_truncated(bool t) { truncated_ = t; }

    const std::set<std::pair<StateId, Lasso>>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    size_t size() const { return items_.size(); }
    bool contains(StateId s, const Lasso& l) const { return items_.count({s, l}) != 0; }

    void insert(StateId s, Lasso l) { items_.insert({s, std::move(l)}); }
    bool maybe_nonempty() const { return !items_.empty() || truncated_; }

    bool operator==(const LassoSet& o) const { return items_ == o.items_ && space_ == o.space_; }

private:
    uint32_t space_ = 0;
    std::set<std::pair<StateId, Lasso>> items_;
    bool truncated_ = false;
};

// --- construction -----------------------------------------------------------

TracedRel id_rel(uint32_t space);
TracedRel test(const StateSet& x);

// --- composition (trace concatenation, bounded by `bound`) ------------------

TracedRel compose_rel(const TracedRel& r1, const TracedRel& r2, int bound = kDefaultTraceBound);
StateTraceSet compose_rel_set(const TracedRel& r, const StateTraceSet& y,
                              int bound = kDefaultTraceBound);
LassoSet compose_rel_lasso(const TracedRel& r, const LassoSet& y, int bound = kDefaultTraceBound);
StateSet compose_rel_states(const TracedRel& r, const StateSet& x);

// --- union -------------------------------------------------------------------

TracedRel union_rel(const TracedRel& a, const TracedRel& b);
StateTraceSet union_sts(const StateTraceSet& a, const StateTraceSet& b);
StateSet union_ss(const StateSet& a, const StateSet& b);
LassoSet union_lasso(const LassoSet& a, const LassoSet& b);

bool subset_rel(const TracedRel& a, const TracedRel& b);
bool subset_sts(const StateTraceSet& a, const StateTraceSet& b);

// --- iteration ---------------------------------------------------------------

/// Least fixed point of x |-> id U r.x, saturated under the trace bound.
TracedRel star(const TracedRel& r, int bound = kDefaultTraceBound);
TracedRel plus(const TracedRel& r, int bound = kDefaultTraceBound);

// --- silent / nonsilent filters ----------------------------------------------

TracedRel silent(const TracedRel& r);
TracedRel nonsilent(const TracedRel& r);
StateTraceSet silent_sts(const StateTraceSet& y);

// --- infinite iteration --------------------------------------------------------

/// R^infty for an all-silent relation: the states that can step forever,
/// i.e. those that reach a cycle of the step graph. Result pairs carry nil
/// traces. Throws if a nonsilent step is present.
StateTraceSet omega_silent(const TracedRel& r);
StateSet omega_silent_states(const TracedRel& r);

/// Same set computed as a greatest fixed point of X |-> pre(X); used to
/// cross-check omega_silent.
StateSet omega_silent_states_gfp(const TracedRel& r);

/// R^infty for an all-nonsilent relation, under-approximated by canonical
/// lassos: one lasso per (simple path, simple cycle) pair in the step graph,
/// prefix and cycle traces each capped at `bound`. Throws if a silent step is
/// present. `budget` caps the enumeration; exceeding any cap sets `truncated`.
LassoSet omega_lasso(const TracedRel& r, int bound = kDefaultTraceBound,
                     size_t budget = 2'000'000);

}  // namespace denokat
