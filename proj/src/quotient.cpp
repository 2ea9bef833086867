#include "ocmc/quotient.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "ocmc/errors.hpp"

namespace ocmc {

BigInt lcm_upto(std::uint64_t k) {
  BigInt l = 1;
  for (std::uint64_t i = 2; i <= k; ++i) l = boost::multiprecision::lcm(l, BigInt(i));
  return l;
}

BoundParams bound_params(const OneCounterProcess& ocp, const CtlFormula& core_f) {
  if (!is_core(core_f)) throw ContractViolation("bound_params requires a core formula");
  BoundParams bp;
  bp.k = static_cast<std::uint64_t>(ocp.location_count());
  bp.K = lcm_upto(bp.k);
  bp.K_phi = boost::multiprecision::pow(bp.K, static_cast<unsigned>(left_until_depth(core_f)));
  bp.B = 2 * formula_size(core_f) * BigInt(bp.k) * BigInt(bp.k) * bp.K_phi;
  bp.band_lo = bp.B + 1;
  return bp;
}

namespace {

// States materialized per location; keeps the whole graph comfortably in
// memory and fails loudly instead of thrashing.
constexpr std::uint64_t kMaxQuotientStates = std::uint64_t{1} << 26;

}  // namespace

QuotientSystem::QuotientSystem(const OneCounterProcess& ocp, const BoundParams& bp) : ocp_(ocp) {
  if (!is_unit_step(ocp_))
    throw UnsupportedInputError(
        "quotient engine requires unit-step effects; run the truncation oracle instead");
  BigInt width_big = bp.band_lo + bp.K_phi;
  BigInt total = width_big * ocp_.location_count();
  if (total > kMaxQuotientStates)
    throw UnsupportedInputError("quotient would need " + total.str() +
                                " states; beyond the supported size");
  band_lo_ = static_cast<std::uint64_t>(bp.band_lo);
  period_ = static_cast<std::uint64_t>(bp.K_phi);
  width_ = band_lo_ + period_;
  const std::size_t n = static_cast<std::size_t>(ocp_.location_count()) * width_;
  succ_.assign(n, {});
  pred_.assign(n, {});
  auto add_edge = [&](std::size_t from, std::size_t to) {
    succ_[from].push_back(to);
    pred_[to].push_back(from);
  };
  for (int loc = 0; loc < ocp_.location_count(); ++loc) {
    for (std::uint64_t v = 0; v < width_; ++v) {
      const auto& rules = v == 0 ? ocp_.zero_rules() : ocp_.positive_rules();
      for (const TransitionRule& r : rules) {
        if (r.source != loc) continue;
        std::int64_t v2 = static_cast<std::int64_t>(v) + r.effect;
        if (v2 < 0) continue;
        std::uint64_t w = static_cast<std::uint64_t>(v2);
        if (w >= width_) w -= period_;  // wrap: identify band top with band bottom
        add_edge(state_of(loc, v), state_of(r.target, w));
      }
    }
  }
}

QuotientSystem build_quotient(const OneCounterProcess& ocp, const BoundParams& bp) {
  return QuotientSystem(ocp, bp);
}

namespace {

// Two-valued bottom-up labeling on the quotient graph; standard finite-state
// algorithms (EX by predecessor image, until by backward least fixpoint,
// weak until adds the greatest fixpoint of "left holds and some successor
// stays in").
class QuotientLabeler {
 public:
  explicit QuotientLabeler(const QuotientSystem& q) : q_(q) {}

  const std::vector<char>& run(const CtlFormula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    std::vector<char> val(q_.state_count(), 0);
    switch (f.kind()) {
      case CtlKind::Prop: {
        const auto& ocp = q_.process();
        for (int loc = 0; loc < ocp.location_count(); ++loc) {
          if (!ocp.labels(f.prop_name(), loc)) continue;
          std::size_t base = q_.state_of(loc, 0);
          std::fill_n(val.begin() + static_cast<std::ptrdiff_t>(base), q_.width(), 1);
        }
        break;
      }
      case CtlKind::Not: {
        const std::vector<char>& a = run(f.left());
        for (std::size_t s = 0; s < val.size(); ++s) val[s] = !a[s];
        break;
      }
      case CtlKind::And: {
        const std::vector<char>& a = run(f.left());
        const std::vector<char>& b = run(f.right());
        for (std::size_t s = 0; s < val.size(); ++s) val[s] = a[s] && b[s];
        break;
      }
      case CtlKind::ExistsNext: {
        const std::vector<char>& a = run(f.left());
        for (std::size_t s = 0; s < val.size(); ++s) {
          for (std::size_t t : q_.successors()[s]) {
            if (a[t]) { val[s] = 1; break; }
          }
        }
        break;
      }
      case CtlKind::ExistsUntil:
      case CtlKind::ExistsWeakUntil: {
        const std::vector<char>& a = run(f.left());
        const std::vector<char>& b = run(f.right());
        val = b;
        std::deque<std::size_t> work;
        for (std::size_t s = 0; s < val.size(); ++s)
          if (val[s]) work.push_back(s);
        while (!work.empty()) {
          std::size_t t = work.front();
          work.pop_front();
          for (std::size_t s : q_.predecessors()[t]) {
            if (!val[s] && a[s]) {
              val[s] = 1;
              work.push_back(s);
            }
          }
        }
        if (f.kind() == CtlKind::ExistsWeakUntil) {
          std::vector<char> z = a;
          std::vector<int> alive(z.size(), 0);
          for (std::size_t s = 0; s < z.size(); ++s)
            if (z[s])
              for (std::size_t t : q_.successors()[s])
                if (z[t]) ++alive[s];
          std::deque<std::size_t> dead;
          for (std::size_t s = 0; s < z.size(); ++s)
            if (z[s] && alive[s] == 0) dead.push_back(s);
          while (!dead.empty()) {
            std::size_t t = dead.front();
            dead.pop_front();
            if (!z[t]) continue;
            z[t] = 0;
            for (std::size_t s : q_.predecessors()[t])
              if (z[s] && --alive[s] == 0) dead.push_back(s);
          }
          for (std::size_t s = 0; s < val.size(); ++s)
            if (z[s]) val[s] = 1;
        }
        break;
      }
      default:
        throw ContractViolation("sugared connective reached the quotient engine");
    }
    return memo_.emplace(f.id(), std::move(val)).first->second;
  }

 private:
  const QuotientSystem& q_;
  std::unordered_map<const void*, std::vector<char>> memo_;
};

}  // namespace

std::map<std::string, UltimatelyPeriodicSet> label(const OneCounterProcess& ocp,
                                                   const CtlFormula& f) {
  CtlFormula core = expand(f);
  BoundParams bp = bound_params(ocp, core);
  QuotientSystem q = build_quotient(ocp, bp);
  QuotientLabeler labeler(q);
  const std::vector<char>& val = labeler.run(core);
  std::map<std::string, UltimatelyPeriodicSet> out;
  for (int loc = 0; loc < ocp.location_count(); ++loc) {
    std::vector<char> prefix(q.band_lo()), residues(q.period());
    for (std::uint64_t v = 0; v < q.band_lo(); ++v) prefix[v] = val[q.state_of(loc, v)];
    for (std::uint64_t j = 0; j < q.period(); ++j)
      residues[j] = val[q.state_of(loc, q.band_lo() + j)];
    out.emplace(ocp.location_name(loc),
                UltimatelyPeriodicSet(q.band_lo(), q.period(), std::move(prefix),
                                      std::move(residues))
                    .normalized());
  }
  return out;
}

bool check(const OneCounterProcess& ocp, const CtlFormula& f, const std::string& location,
           const BigInt& n) {
  if (n < 0) throw InputError("counter must be nonnegative");
  ocp.location_index(location);  // reject unknown locations up front
  auto sets = label(ocp, f);
  return sets.at(location).member(n);
}

}  // namespace ocmc
