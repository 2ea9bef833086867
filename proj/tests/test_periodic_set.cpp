#include <doctest.h>

#include <numeric>

#include "ocmc/errors.hpp"
#include "ocmc/periodic_set.hpp"
#include "test_util.hpp"

using namespace ocmc;

namespace {

UltimatelyPeriodicSet evens() { return UltimatelyPeriodicSet(0, 2, {}, {1, 0}); }

UltimatelyPeriodicSet multiples_of(std::uint64_t k) {
  std::vector<char> res(k, 0);
  res[0] = 1;
  return UltimatelyPeriodicSet(0, k, {}, std::move(res));
}

UltimatelyPeriodicSet random_set(testutil::Rng& rng) {
  std::uint64_t t = rng.below(10);
  std::uint64_t k = 1 + rng.below(8);
  std::vector<char> pre(t), res(k);
  for (char& c : pre) c = rng.coin();
  for (char& c : res) c = rng.coin();
  return UltimatelyPeriodicSet(t, k, std::move(pre), std::move(res));
}

}  // namespace

TEST_CASE("membership is total, including far beyond the threshold") {
  CHECK(evens().member(BigInt(1000000)));
  CHECK_FALSE(evens().member(BigInt("1000001")));
  CHECK(evens().member(BigInt("123456789012345678901234567890")));

  UltimatelyPeriodicSet s(3, 2, {0, 1, 0}, {0, 1});
  CHECK(s.member(1));
  CHECK_FALSE(s.member(2));
  CHECK(s.member(4));

  for (std::uint64_t n = 0; n < 20; ++n)
    CHECK_FALSE(UltimatelyPeriodicSet::empty_set().member(n));
}

TEST_CASE("construction validates shapes") {
  CHECK_THROWS_AS(UltimatelyPeriodicSet(0, 0, {}, {}), InputError);
  CHECK_THROWS_AS(UltimatelyPeriodicSet(2, 1, {1}, {0}), InputError);
  CHECK_THROWS_AS(UltimatelyPeriodicSet(0, 2, {}, {0}), InputError);
  CHECK_THROWS_AS(evens().member(BigInt(-1)), InputError);
}

TEST_CASE("complement and union behave pointwise") {
  UltimatelyPeriodicSet odds = complement(evens());
  CHECK(odds.member(7));
  CHECK_FALSE(odds.member(8));
  CHECK(equal(unite(evens(), odds), UltimatelyPeriodicSet::full_set()));
}

TEST_CASE("intersection of residue classes, checked against brute force") {
  UltimatelyPeriodicSet six = intersect(multiples_of(2), multiples_of(3));
  for (std::uint64_t n = 0; n <= 100; ++n) CHECK(six.member(n) == (n % 6 == 0));
  CHECK(six.period() == 6);  // already normalized
  CHECK(six.threshold() == 0);
}

TEST_CASE("semantic equality ignores representation") {
  UltimatelyPeriodicSet wide(4, 4, {1, 0, 1, 0}, {1, 0, 1, 0});
  CHECK(equal(evens(), wide));
  CHECK_FALSE(equal(evens(), complement(evens())));
}

TEST_CASE("normalization finds the minimal representation") {
  UltimatelyPeriodicSet s(0, 4, {}, {1, 0, 1, 0});
  UltimatelyPeriodicSet n = s.normalized();
  CHECK(n.threshold() == 0);
  CHECK(n.period() == 2);
  CHECK(n.residues() == std::vector<char>{1, 0});

  // prefix entries that match the periodic continuation peel away
  UltimatelyPeriodicSet t(3, 2, {1, 0, 1}, {0, 1});
  UltimatelyPeriodicSet tn = t.normalized();
  CHECK(tn.threshold() == 0);
  CHECK(tn.period() == 2);
  CHECK(equal(t, tn));
}

TEST_CASE("normalization preserves membership and is idempotent") {
  testutil::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    UltimatelyPeriodicSet s = random_set(rng);
    UltimatelyPeriodicSet n = s.normalized();
    for (std::uint64_t x = 0; x <= s.threshold() + 3 * s.period(); ++x)
      CHECK(s.member(x) == n.member(x));
    UltimatelyPeriodicSet nn = n.normalized();
    CHECK(nn.threshold() == n.threshold());
    CHECK(nn.period() == n.period());
    CHECK(nn.prefix() == n.prefix());
    CHECK(nn.residues() == n.residues());
  }
}

TEST_CASE("pointwise identities hold on the determining range") {
  testutil::Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    UltimatelyPeriodicSet a = random_set(rng);
    UltimatelyPeriodicSet b = random_set(rng);
    UltimatelyPeriodicSet u = unite(a, b);
    UltimatelyPeriodicSet i = intersect(a, b);
    std::uint64_t top = std::max(a.threshold(), b.threshold()) +
                        3 * std::lcm(a.period(), b.period());
    for (std::uint64_t n = 0; n <= top; ++n) {
      CHECK(u.member(n) == (a.member(n) || b.member(n)));
      CHECK(i.member(n) == (a.member(n) && b.member(n)));
      CHECK(complement(a).member(n) == !a.member(n));
    }
  }
}

TEST_CASE("equality is an equivalence relation on random triples") {
  testutil::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    UltimatelyPeriodicSet a = random_set(rng);
    UltimatelyPeriodicSet b = random_set(rng);
    UltimatelyPeriodicSet c = random_set(rng);
    CHECK(equal(a, a));
    CHECK(equal(a, b) == equal(b, a));
    if (equal(a, b) && equal(b, c)) CHECK(equal(a, c));
    CHECK(equal(a, a.normalized()));
  }
}
