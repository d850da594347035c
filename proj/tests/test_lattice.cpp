#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "quelab/lattice.hpp"
#include "support.hpp"

using namespace quelab;

namespace {

// Brute-force divisor enumeration: every nonzero d with N(d) | N(w) that divides w.
long brute_sigma1_times_units(const ImagQuadField& K, const AlgebraicInt& w) {
  const long n = norm(K, w);
  long total = 0;
  for (const auto& d : enumerate_by_norm(K, n)) {
    if (n % norm(K, d) == 0 && divides(K, d, w)) total += norm(K, d);
  }
  return total;
}

long brute_divisor_count_times_units(const ImagQuadField& K, const AlgebraicInt& w) {
  long count = 0;
  for (const auto& d : enumerate_by_norm(K, norm(K, w))) count += divides(K, d, w) ? 1 : 0;
  return count;
}

}  // namespace

TEST_CASE("the nine fields") {
  CHECK(class_number_one_D().size() == 9);
  for (int D : class_number_one_D()) {
    const ImagQuadField K = make_field(D);
    CHECK(K.unit_count == (D == -1 ? 4 : D == -3 ? 6 : 2));
    CHECK(long(units(K).size()) == K.unit_count);
    CHECK(enumerate_by_norm(K, 1).size() == std::size_t(K.unit_count));
    CHECK(K.d_K == (K.one_mod_four ? D : 4 * D));
  }
  CHECK_THROWS(make_field(-5));
}

TEST_CASE("enumerate_by_norm examples") {
  const ImagQuadField gauss = make_field(-1);
  const auto e = enumerate_by_norm(gauss, 5);
  CHECK(e.size() == 20);
  std::map<long, int> mult;
  for (const auto& w : e) ++mult[norm(gauss, w)];
  CHECK(mult == std::map<long, int>{{1, 4}, {2, 4}, {4, 4}, {5, 8}});
  const ImagQuadField k2 = make_field(-2);
  const auto f = enumerate_by_norm(k2, 2);
  CHECK(f.size() == 4);
  for (const auto& w : f) CHECK(((w.u == 0 && std::abs(w.v) == 1) || (w.v == 0 && std::abs(w.u) == 1)));
  CHECK_THROWS_AS(enumerate_by_norm(gauss, 100000000000L), UsageError);
}

TEST_CASE("enumerate_by_norm is complete, unique and sorted") {
  for (int D : class_number_one_D()) {
    const ImagQuadField K = make_field(D);
    const long cap = 300;
    const auto e = enumerate_by_norm(K, cap);
    std::set<std::pair<long, long>> seen;
    long brute = 0;
    for (long u = -40; u <= 40; ++u)
      for (long v = -40; v <= 40; ++v) {
        const long n = norm(K, {u, v});
        if (n >= 1 && n <= cap) ++brute;
      }
    CHECK(long(e.size()) == brute);
    for (std::size_t i = 0; i < e.size(); ++i) {
      CHECK(seen.insert({e[i].u, e[i].v}).second);
      if (i > 0) CHECK(norm(K, e[i - 1]) <= norm(K, e[i]));
    }
  }
}

TEST_CASE("enumerate_by_norm count equals representation counts of x^2 + y^2") {
  const ImagQuadField K = make_field(-1);
  const BinaryQuadraticForm Q{1, 0, 1};
  for (long cap : {1L, 10L, 97L, 500L}) {
    long total = 0;
    for (long m = 1; m <= cap; ++m) total += repr_count(Q, m);
    CHECK(long(enumerate_by_norm(K, cap).size()) == total);
  }
}

TEST_CASE("repr_count examples") {
  const BinaryQuadraticForm Q{1, 0, 1};
  CHECK(repr_count(Q, 1) == 4);
  CHECK(repr_count(Q, 3) == 0);
  CHECK(repr_count(Q, 5) == 8);
  CHECK(repr_count(BinaryQuadraticForm{1, 1, 1}, 1) == 6);
  CHECK(repr_count(BinaryQuadraticForm{2, 1, 3}, 2) == 2);
}

TEST_CASE("divisor_sigma examples") {
  const ImagQuadField K = make_field(-1);
  for (cplx s : {cplx(0.0), cplx(1.0), cplx(0.3, 7.0)}) {
    for (const auto& u : units(K)) CHECK(std::abs(divisor_sigma(K, s, u) - 1.0) < 1e-15);
  }
  CHECK(std::abs(divisor_sigma(K, 0.0, {1, 1}) - 2.0) < 1e-15);
  CHECK(std::abs(divisor_sigma(K, 1.0, {1, 1}) - 3.0) < 1e-15);
  CHECK_THROWS_AS(divisor_sigma(K, 1.0, {0, 0}), DomainError);
}

TEST_CASE("divisor_sigma against brute-force divisors in every field") {
  for (int D : class_number_one_D()) {
    const ImagQuadField K = make_field(D);
    for (const auto& w : enumerate_by_norm(K, 500)) {
      long sum = 0;
      for (long n : ideal_divisor_norms(K, w)) sum += n;
      CHECK(sum * K.unit_count == brute_sigma1_times_units(K, w));
      CHECK(long(ideal_divisor_norms(K, w).size()) * K.unit_count == brute_divisor_count_times_units(K, w));
    }
  }
}

TEST_CASE("divisor_sigma is multiplicative on coprime pairs") {
  std::mt19937_64 rng(4);
  int tested = 0;
  for (int D : class_number_one_D()) {
    const ImagQuadField K = make_field(D);
    const auto pool = enumerate_by_norm(K, 400);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int local = 0;
    while (local < 120) {
      const AlgebraicInt a = pool[pick(rng)], b = pool[pick(rng)];
      // Coprime: no common ideal divisor beyond units.
      bool common = false;
      for (const auto& d : enumerate_by_norm(K, std::min(norm(K, a), norm(K, b)))) {
        if (norm(K, d) > 1 && divides(K, d, a) && divides(K, d, b)) {
          common = true;
          break;
        }
      }
      if (common) continue;
      const cplx s(0.37, -2.1);
      const cplx lhs = divisor_sigma(K, s, multiply(K, a, b));
      const cplx rhs = divisor_sigma(K, s, a) * divisor_sigma(K, s, b);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
      ++local;
    }
    tested += local;
  }
  CHECK(tested >= 1000);
}

TEST_CASE("kronecker_chi") {
  CHECK(kronecker_chi(-4, 2) == 0);
  CHECK(kronecker_chi(-4, 3) == -1);
  CHECK(kronecker_chi(-4, 5) == 1);
  for (int D : class_number_one_D()) {
    const long d = make_field(D).d_K;
    for (long m = 1; m <= 200; ++m)
      for (long n = 1; n <= 200; ++n) CHECK(kronecker_chi(d, m * n) == kronecker_chi(d, m) * kronecker_chi(d, n));
    for (long m = 1; m <= 400; ++m) {
      long g = std::gcd(m, std::labs(d));
      CHECK((kronecker_chi(d, m) == 0) == (g > 1));
    }
  }
}

TEST_CASE("kronecker_chi matches the splitting of primes") {
  for (int D : class_number_one_D()) {
    const ImagQuadField K = make_field(D);
    std::set<long> norms;
    for (const auto& w : enumerate_by_norm(K, 2000)) norms.insert(norm(K, w));
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L}) {
      const int chi = kronecker_chi(K.d_K, p);
      // p splits or ramifies iff p is a norm.
      CHECK((chi >= 0) == (norms.count(p) == 1));
    }
  }
}

TEST_CASE("factor_integer") {
  CHECK(factor_integer(360) == std::vector<std::pair<long, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factor_integer(1).empty());
  CHECK(factor_integer(999983) == std::vector<std::pair<long, int>>{{999983, 1}});
}

TEST_CASE("arithmetic in the integral basis") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> c(-30, 30);
  for (int D : class_number_one_D()) {
    const ImagQuadField K = make_field(D);
    for (int i = 0; i < 200; ++i) {
      const AlgebraicInt a{c(rng), c(rng)}, b{c(rng), c(rng)};
      const cplx prod = to_complex(K, a) * to_complex(K, b);
      CHECK(std::abs(to_complex(K, multiply(K, a, b)) - prod) < 1e-9);
      CHECK(norm(K, multiply(K, a, b)) == norm(K, a) * norm(K, b));
      CHECK(std::abs(double(norm(K, a)) - std::norm(to_complex(K, a))) < 1e-9);
      CHECK(std::abs(to_complex(K, conjugate(K, a)) - std::conj(to_complex(K, a))) < 1e-12);
      AlgebraicInt q;
      if (!(b == AlgebraicInt{0, 0})) {
        CHECK(divides(K, b, multiply(K, a, b), &q));
        CHECK(q == a);
      }
    }
  }
}
