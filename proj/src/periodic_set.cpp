#include "ocmc/periodic_set.hpp"

#include <algorithm>
#include <limits>

#include "ocmc/errors.hpp"

namespace ocmc {

UltimatelyPeriodicSet::UltimatelyPeriodicSet(std::uint64_t threshold, std::uint64_t period,
                                             std::vector<char> prefix,
                                             std::vector<char> residues)
    : threshold_(threshold), period_(period), prefix_(std::move(prefix)),
      residues_(std::move(residues)) {
  if (period_ == 0) throw InputError("period must be positive");
  if (prefix_.size() != threshold_) throw InputError("prefix length must equal threshold");
  if (residues_.size() != period_) throw InputError("residues length must equal period");
  for (char& c : prefix_) c = c ? 1 : 0;
  for (char& c : residues_) c = c ? 1 : 0;
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::empty_set() {
  return UltimatelyPeriodicSet(0, 1, {}, {0});
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::full_set() {
  return UltimatelyPeriodicSet(0, 1, {}, {1});
}

bool UltimatelyPeriodicSet::member(const BigInt& n) const {
  if (n < 0) throw InputError("membership queried at a negative value");
  if (n < threshold_) return prefix_[static_cast<std::size_t>(n)] != 0;
  BigInt off = (n - threshold_) % period_;
  return residues_[static_cast<std::size_t>(off)] != 0;
}

UltimatelyPeriodicSet UltimatelyPeriodicSet::normalized() const {
  // Smallest divisor of the period whose rotation fixes the residue word.
  std::uint64_t k = period_;
  for (std::uint64_t d = 1; d <= period_ / 2; ++d) {
    if (period_ % d != 0) continue;
    bool ok = true;
    for (std::uint64_t j = 0; j < period_ && ok; ++j)
      ok = residues_[j] == residues_[j % d];
    if (ok) { k = d; break; }
  }
  std::vector<char> res(residues_.begin(), residues_.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<char> pre = prefix_;
  std::uint64_t t = threshold_;
  // Peel prefix entries that already match the periodic continuation; each
  // peel moves the alignment back by one, i.e. rotates the residue word.
  while (t > 0 && pre[t - 1] == res[k - 1]) {
    res.insert(res.begin(), res.back());
    res.pop_back();
    pre.pop_back();
    --t;
  }
  return UltimatelyPeriodicSet(t, k, std::move(pre), std::move(res));
}

namespace {

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  BigInt l = boost::multiprecision::lcm(BigInt(a), BigInt(b));
  if (l > std::numeric_limits<std::uint64_t>::max())
    throw InputError("combined period does not fit in 64 bits");
  return static_cast<std::uint64_t>(l);
}

template <typename Op>
UltimatelyPeriodicSet pointwise(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b,
                                Op op) {
  std::uint64_t t = std::max(a.threshold(), b.threshold());
  std::uint64_t k = lcm_checked(a.period(), b.period());
  std::vector<char> pre(t), res(k);
  for (std::uint64_t n = 0; n < t; ++n) pre[n] = op(a.member(n), b.member(n)) ? 1 : 0;
  for (std::uint64_t j = 0; j < k; ++j) res[j] = op(a.member(t + j), b.member(t + j)) ? 1 : 0;
  return UltimatelyPeriodicSet(t, k, std::move(pre), std::move(res)).normalized();
}

}  // namespace

UltimatelyPeriodicSet unite(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
  return pointwise(a, b, [](bool x, bool y) { return x || y; });
}

UltimatelyPeriodicSet intersect(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
  return pointwise(a, b, [](bool x, bool y) { return x && y; });
}

UltimatelyPeriodicSet complement(const UltimatelyPeriodicSet& a) {
  std::vector<char> pre(a.prefix()), res(a.residues());
  for (char& c : pre) c = c ? 0 : 1;
  for (char& c : res) c = c ? 0 : 1;
  return UltimatelyPeriodicSet(a.threshold(), a.period(), std::move(pre), std::move(res))
      .normalized();
}

bool equal(const UltimatelyPeriodicSet& a, const UltimatelyPeriodicSet& b) {
  std::uint64_t t = std::max(a.threshold(), b.threshold());
  std::uint64_t k = lcm_checked(a.period(), b.period());
  for (std::uint64_t n = 0; n < t + k; ++n)
    if (a.member(n) != b.member(n)) return false;
  return true;
}

}  // namespace ocmc
