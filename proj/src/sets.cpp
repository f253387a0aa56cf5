#include "denokat/sets.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace denokat {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Truncation of a composed set: elements were dropped outright, or one side is
// an under-approximation whose missing elements could have composed with
// something on the other side.
bool compose_flag(bool dropped, bool t1, bool maybe1, bool t2, bool maybe2) {
    return dropped || (t1 && maybe2) || (t2 && maybe1);
}

Trace concat(const Trace& a, const Trace& b) {
    Trace out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

void TracedRel::insert(StateId src, Trace tr, StateId dst) {
    steps_.insert(Step{src, std::move(tr), dst});
}

StateSet StateSet::all(uint32_t space) {
    StateSet s(space);
    for (StateId i = 0; i < space; ++i) s.insert(i);
    return s;
}

StateSet StateSet::complement() const {
    StateSet out(space_);
    for (StateId i = 0; i < space_; ++i)
        if (!contains(i)) out.insert(i);
    return out;
}

TracedRel id_rel(uint32_t space) {
    TracedRel r(space, space);
    for (StateId s = 0; s < space; ++s) r.insert(s, {}, s);
    return r;
}

TracedRel test(const StateSet& x) {
    TracedRel r(x.space(), x.space());
    for (StateId s : x.items()) r.insert(s, {}, s);
    r.set_truncated(x.truncated());
    return r;
}

TracedRel compose_rel(const TracedRel& r1, const TracedRel& r2, int bound) {
    require(r1.dst_space() == r2.src_space(), "compose_rel: state space mismatch");
    TracedRel out(r1.src_space(), r2.dst_space());
    bool dropped = false;
    std::map<StateId, std::vector<const Step*>> by_src;
    for (const Step& s : r2.steps()) by_src[s.src].push_back(&s);
    for (const Step& a : r1.steps()) {
        auto bucket = by_src.find(a.dst);
        if (bucket == by_src.end()) continue;
        for (const Step* b : bucket->second) {
            if (a.tr.size() + b->tr.size() > static_cast<size_t>(bound)) {
                dropped = true;
                continue;
            }
            out.insert(a.src, concat(a.tr, b->tr), b->dst);
        }
    }
    out.set_truncated(compose_flag(dropped, r1.truncated(), r1.maybe_nonempty(), r2.truncated(),
                                   r2.maybe_nonempty()));
    return out;
}

StateTraceSet compose_rel_set(const TracedRel& r, const StateTraceSet& y, int bound) {
    require(r.dst_space() == y.space(), "compose_rel_set: state space mismatch");
    StateTraceSet out(r.src_space());
    bool dropped = false;
    std::map<StateId, std::vector<const std::pair<StateId, Trace>*>> by_src;
    for (const auto& p : y.items()) by_src[p.first].push_back(&p);
    for (const Step& a : r.steps()) {
        auto bucket = by_src.find(a.dst);
        if (bucket == by_src.end()) continue;
        for (const auto* p : bucket->second) {
            if (a.tr.size() + p->second.size() > static_cast<size_t>(bound)) {
                dropped = true;
                continue;
            }
            out.insert(a.src, concat(a.tr, p->second));
        }
    }
    out.set_truncated(compose_flag(dropped, r.truncated(), r.maybe_nonempty(), y.truncated(),
                                   y.maybe_nonempty()));
    return out;
}

LassoSet compose_rel_lasso(const TracedRel& r, const LassoSet& y, int bound) {
    require(r.dst_space() == y.space(), "compose_rel_lasso: state space mismatch");
    LassoSet out(r.src_space());
    bool dropped = false;
    std::map<StateId, std::vector<const std::pair<StateId, Lasso>*>> by_src;
    for (const auto& p : y.items()) by_src[p.first].push_back(&p);
    for (const Step& a : r.steps()) {
        auto bucket = by_src.find(a.dst);
        if (bucket == by_src.end()) continue;
        for (const auto* p : bucket->second) {
            if (a.tr.size() + p->second.prefix.size() > static_cast<size_t>(bound)) {
                dropped = true;
                continue;
            }
            out.insert(a.src, Lasso(concat(a.tr, p->second.prefix), p->second.cycle));
        }
    }
    out.set_truncated(compose_flag(dropped, r.truncated(), r.maybe_nonempty(), y.truncated(),
                                   y.maybe_nonempty()));
    return out;
}

StateSet compose_rel_states(const TracedRel& r, const StateSet& x) {
    require(r.dst_space() == x.space(), "compose_rel_states: state space mismatch");
    StateSet out(r.src_space());
    for (const Step& a : r.steps())
        if (x.contains(a.dst)) out.insert(a.src);
    out.set_truncated(compose_flag(false, r.truncated(), r.maybe_nonempty(), x.truncated(),
                                   x.maybe_nonempty()));
    return out;
}

TracedRel union_rel(const TracedRel& a, const TracedRel& b) {
    require(a.src_space() == b.src_space() && a.dst_space() == b.dst_space(),
            "union_rel: state space mismatch");
    TracedRel out = a;
    for (const Step& s : b.steps()) out.insert(s);
    out.set_truncated(a.truncated() || b.truncated());
    return out;
}

StateTraceSet union_sts(const StateTraceSet& a, const StateTraceSet& b) {
    require(a.space() == b.space(), "union_sts: state space mismatch");
    StateTraceSet out = a;
    for (const auto& p : b.items()) out.insert(p.first, p.second);
    out.set_truncated(a.truncated() || b.truncated());
    return out;
}

StateSet union_ss(const StateSet& a, const StateSet& b) {
    require(a.space() == b.space(), "union_ss: state space mismatch");
    StateSet out = a;
    for (StateId s : b.items()) out.insert(s);
    out.set_truncated(a.truncated() || b.truncated());
    return out;
}

LassoSet union_lasso(const LassoSet& a, const LassoSet& b) {
    require(a.space() == b.space(), "union_lasso: state space mismatch");
    LassoSet out = a;
    for (const auto& p : b.items()) out.insert(p.first, p.second);
    out.set_truncated(a.truncated() || b.truncated());
    return out;
}

bool subset_rel(const TracedRel& a, const TracedRel& b) {
    return std::includes(b.steps().begin(), b.steps().end(), a.steps().begin(), a.steps().end());
}

bool subset_sts(const StateTraceSet& a, const StateTraceSet& b) {
    return std::includes(b.items().begin(), b.items().end(), a.items().begin(), a.items().end());
}

TracedRel star(const TracedRel& r, int bound) {
    require(r.src_space() == r.dst_space(), "star: relation not endogenous");
    TracedRel cur = id_rel(r.src_space());
    for (;;) {
        TracedRel next = union_rel(id_rel(r.src_space()), compose_rel(r, cur, bound));
        if (next.same_elements(cur)) {
            next.set_truncated(next.truncated() || cur.truncated());
            return next;
        }
        cur = std::move(next);
    }
}

TracedRel plus(const TracedRel& r, int bound) { return compose_rel(r, star(r, bound), bound); }

TracedRel silent(const TracedRel& r) {
    TracedRel out(r.src_space(), r.dst_space());
    for (const Step& s : r.steps())
        if (s.tr.empty()) out.insert(s);
    out.set_truncated(r.truncated());
    return out;
}

TracedRel nonsilent(const TracedRel& r) {
    TracedRel out(r.src_space(), r.dst_space());
    for (const Step& s : r.steps())
        if (!s.tr.empty()) out.insert(s);
    out.set_truncated(r.truncated());
    return out;
}

StateTraceSet silent_sts(const StateTraceSet& y) {
    StateTraceSet out(y.space());
    for (const auto& p : y.items())
        if (p.second.empty()) out.insert(p.first, p.second);
    out.set_truncated(y.truncated());
    return out;
}

StateSet omega_silent_states(const TracedRel& r) {
    require(r.src_space() == r.dst_space(), "omega_silent: relation not endogenous");
    for (const Step& s : r.steps())
        if (!s.tr.empty()) throw std::invalid_argument("omega_silent: nonsilent step present");

    // states on a cycle of the step graph, then backward closure
    std::map<StateId, std::vector<StateId>> succ;
    for (const Step& s : r.steps()) succ[s.src].push_back(s.dst);

    // iterative DFS with colors to find states on cycles
    std::map<StateId, int> color;  // 0 unvisited, 1 on stack, 2 done
    std::set<StateId> on_cycle;
    for (const auto& [start, _] : succ) {
        if (color[start] != 0) continue;
        std::vector<std::pair<StateId, size_t>> stack{{start, 0}};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            auto it = succ.find(node);
            if (it == succ.end() || idx >= it->second.size()) {
                color[node] = 2;
                stack.pop_back();
                continue;
            }
            StateId next = it->second[idx++];
            if (color[next] == 1) {
                // back edge closes a cycle through every stacked node from `next`
                bool seen = false;
                for (const auto& [n, i] : stack) {
                    if (n == next) seen = true;
                    if (seen) on_cycle.insert(n);
                }
            } else if (color[next] == 0) {
                color[next] = 1;
                stack.push_back({next, 0});
            }
        }
    }

    // backward closure: anything that reaches a cycle diverges
    std::map<StateId, std::vector<StateId>> pred;
    for (const Step& s : r.steps()) pred[s.dst].push_back(s.src);
    std::vector<StateId> work(on_cycle.begin(), on_cycle.end());
    std::set<StateId> reach = on_cycle;
    while (!work.empty()) {
        StateId cur = work.back();
        work.pop_back();
        auto it = pred.find(cur);
        if (it == pred.end()) continue;
        for (StateId p : it->second)
            if (reach.insert(p).second) work.push_back(p);
    }

    StateSet out(r.src_space());
    for (StateId s : reach) out.insert(s);
    out.set_truncated(r.truncated());
    return out;
}

StateTraceSet omega_silent(const TracedRel& r) {
    StateSet states = omega_silent_states(r);
    StateTraceSet out(r.src_space());
    for (StateId s : states.items()) out.insert(s, {});
    out.set_truncated(states.truncated());
    return out;
}

StateSet omega_silent_states_gfp(const TracedRel& r) {
    require(r.src_space() == r.dst_space(), "omega_silent: relation not endogenous");
    for (const Step& s : r.steps())
        if (!s.tr.empty()) throw std::invalid_argument("omega_silent: nonsilent step present");
    StateSet cur = StateSet::all(r.src_space());
    for (;;) {
        StateSet next(r.src_space());
        for (const Step& s : r.steps())
            if (cur.contains(s.dst)) next.insert(s.src);
        if (next.items() == cur.items()) {
            next.set_truncated(r.truncated());
            return next;
        }
        cur = std::move(next);
    }
}

namespace {

struct LassoDfs {
    const std::map<StateId, std::vector<const Step*>>& succ;
    int bound;
    size_t budget;
    size_t steps_used = 0;
    bool truncated = false;
    LassoSet* out;
    StateId start;

    std::vector<StateId> path;        // visited nodes, path[0] == start
    std::vector<size_t> trace_marks;  // events emitted up to each node
    Trace trace;                      // events along the path

    void run(StateId s) {
        start = s;
        path = {s};
        trace_marks = {0};
        trace.clear();
        walk(s);
    }

    void walk(StateId node) {
        if (++steps_used > budget) {
            truncated = true;
            return;
        }
        auto it = succ.find(node);
        if (it == succ.end()) return;
        for (const Step* e : it->second) {
            if (trace.size() + e->tr.size() > 2 * static_cast<size_t>(bound)) {
                truncated = true;
                continue;
            }
            auto pos = std::find(path.begin(), path.end(), e->dst);
            if (pos != path.end()) {
                size_t cut = trace_marks[static_cast<size_t>(pos - path.begin())];
                Trace prefix(trace.begin(), trace.begin() + static_cast<long>(cut));
                Trace cycle(trace.begin() + static_cast<long>(cut), trace.end());
                cycle.insert(cycle.end(), e->tr.begin(), e->tr.end());
                if (prefix.size() > static_cast<size_t>(bound) ||
                    cycle.size() > static_cast<size_t>(bound)) {
                    truncated = true;
                    continue;
                }
                out->insert(start, Lasso(std::move(prefix), std::move(cycle)));
            } else {
                path.push_back(e->dst);
                trace.insert(trace.end(), e->tr.begin(), e->tr.end());
                trace_marks.push_back(trace.size());
                walk(e->dst);
                trace_marks.pop_back();
                trace.resize(trace.size() - e->tr.size());
                path.pop_back();
            }
        }
    }
};

}  // namespace

LassoSet omega_lasso(const TracedRel& r, int bound, size_t budget) {
    require(r.src_space() == r.dst_space(), "omega_lasso: relation not endogenous");
    for (const Step& s : r.steps())
        if (s.tr.empty()) throw std::invalid_argument("omega_lasso: silent step present");

    std::map<StateId, std::vector<const Step*>> succ;
    for (const Step& s : r.steps()) succ[s.src].push_back(&s);

    LassoSet out(r.src_space());
    LassoDfs dfs{succ, bound, budget, 0, false, &out, 0, {}, {}, {}};
    for (const auto& [s, _] : succ) dfs.run(s);
    out.set_truncated(dfs.truncated || r.truncated());
    return out;
}

}  // namespace denokat
