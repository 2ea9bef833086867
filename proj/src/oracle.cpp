#include "ocmc/oracle.hpp"

#include <algorithm>
#include <deque>

#include "ocmc/errors.hpp"

namespace ocmc {

namespace {

// Backward least fixpoint: start from `in`, add predecessors admitted by
// `gate` until stable.
void propagate_back(std::vector<char>& in, const std::vector<std::vector<std::size_t>>& pred,
                    const std::vector<char>& gate) {
  std::deque<std::size_t> work;
  for (std::size_t s = 0; s < in.size(); ++s)
    if (in[s]) work.push_back(s);
  while (!work.empty()) {
    std::size_t t = work.front();
    work.pop_front();
    for (std::size_t s : pred[t]) {
      if (!in[s] && gate[s]) {
        in[s] = 1;
        work.push_back(s);
      }
    }
  }
}

// Greatest fixpoint of (member && has successor in member), computed by
// repeatedly removing members whose successors all dropped out. `keep`
// marks states retained unconditionally (the Frontier in possible-mode).
void prune_gfp(std::vector<char>& member, const std::vector<std::vector<std::size_t>>& succ,
               const std::vector<std::vector<std::size_t>>& pred, const std::vector<char>& keep) {
  std::vector<int> alive(member.size(), 0);
  for (std::size_t s = 0; s < member.size(); ++s)
    if (member[s])
      for (std::size_t t : succ[s])
        if (member[t]) ++alive[s];
  std::deque<std::size_t> dead;
  for (std::size_t s = 0; s < member.size(); ++s)
    if (member[s] && alive[s] == 0 && !keep[s]) dead.push_back(s);
  while (!dead.empty()) {
    std::size_t t = dead.front();
    dead.pop_front();
    if (!member[t]) continue;
    member[t] = 0;
    for (std::size_t s : pred[t]) {
      if (member[s] && !keep[s] && --alive[s] == 0) dead.push_back(s);
    }
  }
}

}  // namespace

TruncatedEval::TruncatedEval(const OneCounterProcess& ocp, const CtlFormula& f,
                             std::uint64_t ceiling)
    : ocp_(ocp), ceiling_(ceiling) {
  if (!is_core(f)) throw ContractViolation("TruncatedEval requires a core formula");
  const std::size_t per_loc = ceiling_ + 1;
  const std::size_t n_real = static_cast<std::size_t>(ocp_.location_count()) * per_loc;
  frontier_ = n_real;
  succ_.assign(n_real + 1, {});
  pred_.assign(n_real + 1, {});
  auto add_edge = [&](std::size_t from, std::size_t to) {
    succ_[from].push_back(to);
    pred_[to].push_back(from);
  };
  for (const TransitionRule& r : ocp_.zero_rules()) {
    // zero-mode effects are nonnegative by invariant
    std::size_t from = state_of(r.source, 0);
    std::uint64_t v2 = static_cast<std::uint64_t>(r.effect);
    add_edge(from, v2 > ceiling_ ? frontier_ : state_of(r.target, v2));
  }
  for (const TransitionRule& r : ocp_.positive_rules()) {
    for (std::uint64_t v = 1; v <= ceiling_; ++v) {
      if (r.effect < 0 && v < static_cast<std::uint64_t>(-r.effect)) continue;
      std::size_t from = state_of(r.source, v);
      if (r.effect > 0 && v > ceiling_ - static_cast<std::uint64_t>(r.effect)) {
        add_edge(from, frontier_);
      } else {
        std::uint64_t v2 = r.effect >= 0 ? v + static_cast<std::uint64_t>(r.effect)
                                         : v - static_cast<std::uint64_t>(-r.effect);
        add_edge(from, state_of(r.target, v2));
      }
    }
  }
  root_ = label(f);
}

Tv3 TruncatedEval::value(int location, std::uint64_t counter) const {
  if (location < 0 || location >= ocp_.location_count())
    throw InputError("location index out of range");
  if (counter > ceiling_) throw InputError("counter above the ceiling");
  return root_[state_of(location, counter)];
}

Tv3 TruncatedEval::value(const std::string& location, std::uint64_t counter) const {
  return value(ocp_.location_index(location), counter);
}

std::vector<Tv3> TruncatedEval::label(const CtlFormula& f) {
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
  const std::size_t n = succ_.size();  // real states + frontier
  std::vector<Tv3> val(n, Tv3::Unknown);
  const std::size_t per_loc = ceiling_ + 1;
  switch (f.kind()) {
    case CtlKind::Prop: {
      for (int loc = 0; loc < ocp_.location_count(); ++loc) {
        Tv3 v = ocp_.labels(f.prop_name(), loc) ? Tv3::True : Tv3::False;
        std::fill_n(val.begin() + static_cast<std::ptrdiff_t>(loc * per_loc), per_loc, v);
      }
      break;
    }
    case CtlKind::Not: {
      std::vector<Tv3> a = label(f.left());
      for (std::size_t s = 0; s + 1 < n; ++s) val[s] = kleene_not(a[s]);
      break;
    }
    case CtlKind::And: {
      std::vector<Tv3> a = label(f.left());
      std::vector<Tv3> b = label(f.right());
      for (std::size_t s = 0; s + 1 < n; ++s) val[s] = kleene_and(a[s], b[s]);
      break;
    }
    case CtlKind::ExistsNext: {
      std::vector<Tv3> a = label(f.left());
      for (std::size_t s = 0; s + 1 < n; ++s) {
        Tv3 best = Tv3::False;  // no successors: definitely false
        for (std::size_t t : succ_[s]) best = std::max(best, a[t]);
        val[s] = best;
      }
      break;
    }
    case CtlKind::ExistsUntil:
    case CtlKind::ExistsWeakUntil: {
      std::vector<Tv3> a = label(f.left());
      std::vector<Tv3> b = label(f.right());
      std::vector<char> gate_true(n, 0), gate_poss(n, 0);
      for (std::size_t s = 0; s + 1 < n; ++s) gate_true[s] = a[s] == Tv3::True;
      for (std::size_t s = 0; s + 1 < n; ++s) gate_poss[s] = a[s] != Tv3::False;
      std::vector<char> tset(n, 0), pset(n, 0);
      for (std::size_t s = 0; s + 1 < n; ++s) tset[s] = b[s] == Tv3::True;
      for (std::size_t s = 0; s + 1 < n; ++s) pset[s] = b[s] != Tv3::False;
      pset[frontier_] = 1;  // escapes past the ceiling stay possible
      propagate_back(tset, pred_, gate_true);
      propagate_back(pset, pred_, gate_poss);
      if (f.kind() == CtlKind::ExistsWeakUntil) {
        // add states with an infinite path on which the left operand holds
        std::vector<char> keep_none(n, 0), keep_frontier(n, 0);
        keep_frontier[frontier_] = 1;
        std::vector<char> g_true = gate_true, g_poss = gate_poss;
        g_poss[frontier_] = 1;
        prune_gfp(g_true, succ_, pred_, keep_none);
        prune_gfp(g_poss, succ_, pred_, keep_frontier);
        for (std::size_t s = 0; s + 1 < n; ++s) {
          if (g_true[s]) tset[s] = 1;
          if (g_poss[s]) pset[s] = 1;
        }
      }
      for (std::size_t s = 0; s + 1 < n; ++s)
        val[s] = tset[s] ? Tv3::True : (pset[s] ? Tv3::Unknown : Tv3::False);
      break;
    }
    default:
      throw ContractViolation("sugared connective reached the oracle; expand first");
  }
  val[frontier_] = Tv3::Unknown;
  memo_.emplace(f.id(), val);
  return val;
}

Tv3 eval3(const OneCounterProcess& ocp, const CtlFormula& core_f, const std::string& location,
          const BigInt& n, std::uint64_t ceiling) {
  if (n < 0) throw InputError("counter must be nonnegative");
  if (n > ceiling) throw InputError("counter exceeds the ceiling");
  TruncatedEval ev(ocp, core_f, ceiling);
  return ev.value(location, static_cast<std::uint64_t>(n));
}

bool eval_definite(const OneCounterProcess& ocp, const CtlFormula& core_f,
                   const std::string& location, const BigInt& n,
                   std::uint64_t initial_ceiling, std::uint64_t max_ceiling) {
  if (n > max_ceiling) throw InputError("counter exceeds the maximum ceiling");
  std::uint64_t c = std::max<std::uint64_t>(initial_ceiling, 1);
  if (n > c) c = static_cast<std::uint64_t>(n);
  while (true) {
    Tv3 r = eval3(ocp, core_f, location, n, c);
    if (r != Tv3::Unknown) return r == Tv3::True;
    if (c >= max_ceiling)
      throw IndefiniteError("verdict still unknown at ceiling " + std::to_string(c));
    c = c > max_ceiling / 2 ? max_ceiling : c * 2;
  }
}

}  // namespace ocmc
