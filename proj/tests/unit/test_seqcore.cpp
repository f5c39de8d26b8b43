#include <random>

#include "doctest.h"
#include "hopsign/error.hpp"
#include "hopsign/seqcore.hpp"

using namespace hopsign;

namespace {

SignWord random_word(std::mt19937_64& gen, std::size_t n, double sigma) {
  std::vector<std::int8_t> s(n);
  for (auto& v : s) v = (gen() & 1) ? 1 : -1;
  return SignWord(s, sigma);
}

std::vector<int> signs_of(const SignWord& w) { return {w.signs().begin(), w.signs().end()}; }

}  // namespace

TEST_CASE("SignWord construction and rotation") {
  const SignWord w({1, -1, -1}, 0.5);
  CHECK(w.period() == 3);
  CHECK(w.value(0) == 0.5);
  CHECK(w.value(4) == -0.5);
  CHECK(w.value(-1) == -0.5);
  CHECK(w.mask() == 0b110);
  CHECK(signs_of(w.rotated(1)) == std::vector<int>{-1, -1, 1});
  CHECK(signs_of(w.canonical()) == std::vector<int>{-1, -1, 1});
  CHECK(SignWord({1, -1, 1, -1}, 1.0).minimal_period() == 2);
  CHECK(SignWord::from_mask(0b10, 2, 1.0) == SignWord({1, -1}, 1.0));
  CHECK_THROWS_AS(SignWord({1, 0}, 1.0), Error);
  CHECK_THROWS_AS(SignWord({1}, 0.0), Error);
  CHECK_THROWS_AS(SignWord({1}, 1.5), Error);
  CHECK_THROWS_AS(SignWord(std::vector<std::int8_t>{}, 1.0), Error);
}

TEST_CASE("gamma_plus_word examples") {
  SUBCASE("b = [+1] at sigma 1") {
    const GammaImage g = gamma_plus_word(SignWord({1}, 1.0), 1.0);
    CHECK(signs_of(g.word) == std::vector<int>{1, -1, -1, 1});
    CHECK(g.word.sign(-1) == 1);
    CHECK(g.raw_period == 4);
  }
  SUBCASE("b = [-1] at sigma 1 reduces to (-1)^n") {
    const GammaImage g = gamma_plus_word(SignWord({-1}, 1.0), 1.0);
    CHECK(signs_of(g.word) == std::vector<int>{1, -1});
    CHECK(g.reduction_factor() == 2);
  }
  SUBCASE("amplitude bookkeeping") {
    const GammaImage g = gamma_plus_word(SignWord({1}, 0.25), 0.5);
    CHECK(signs_of(g.word) == std::vector<int>{1, -1, -1, 1});
    CHECK(g.word.sigma() == 0.5);
    CHECK(gamma_plus_word(SignWord({1}, 0.25)).word.sigma() == 0.5);
  }
  SUBCASE("sigma^2 must equal the amplitude of b") {
    CHECK_THROWS_AS(gamma_plus_word(SignWord({1}, 0.3), 0.5), Error);
  }
}

TEST_CASE("gamma_plus_word satisfies the defining relations") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    const double sigma = trial % 2 ? 0.9 : 1.0;
    const SignWord b = random_word(gen, n, sigma * sigma);
    const SignWord c = gamma_plus_word(b, sigma).word;
    REQUIRE(c.sign(0) == 1);
    for (long k = -12; k <= 12; ++k) {
      CHECK(c.sign(2 * k) + c.sign(2 * k + 1) == 0);
      CHECK(c.sign(2 * k) * c.sign(2 * k - 1) == b.sign(k));
    }
    CHECK((4 * n) % c.period() == 0);
    // shifting c by an even period P shifts b by P/2
    const std::size_t p = c.period() % 2 ? 2 * c.period() : c.period();
    for (long k = 0; k < static_cast<long>(n); ++k) CHECK(b.sign(k) == b.sign(k + static_cast<long>(p / 2)));
  }
}

TEST_CASE("gamma_plus_window examples") {
  const SeqWindow c = gamma_plus_window(SeqWindow::constant(1, -2, 2, 1.0), 1.0);
  CHECK(c.lo() == -6);
  CHECK(c.hi() == 5);
  const SignWord ref({1, -1, -1, 1}, 1.0);
  for (long n = -4; n <= 5; ++n) CHECK(c.sign(n) == ref.sign(n));

  const SeqWindow alt = gamma_plus_window(SeqWindow::constant(-1, -2, 2, 1.0), 1.0);
  for (long n = -4; n <= 5; ++n) CHECK(alt.sign(n) == ((n % 2 == 0) ? 1 : -1));

  CHECK_THROWS_AS(gamma_plus_window(SeqWindow::constant(1, 1, 4, 1.0), 1.0), Error);
}

TEST_CASE("space inversion") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int8_t> s(9);
    for (auto& v : s) v = (gen() & 1) ? 1 : -1;
    const SeqWindow b(-4, s, 1.0);
    const SeqWindow h = hat_inversion(b);
    CHECK(h.lo() == 1 - b.hi());
    CHECK(h.hi() == 1 - b.lo());
    for (long n = h.lo(); n <= h.hi(); ++n) CHECK(h.sign(n) == b.sign(1 - n));
    CHECK(hat_inversion(h) == b);

    // hat(Gamma_+(b)) = Gamma_-(hat(b)) wherever both are defined
    const SeqWindow lhs = hat_inversion(gamma_window(b, Branch::plus, 1.0));
    const SeqWindow rhs = gamma_window(hat_inversion(b), Branch::minus, 1.0);
    const long lo = std::max(lhs.lo(), rhs.lo());
    const long hi = std::min(lhs.hi(), rhs.hi());
    REQUIRE(lo < hi);
    for (long n = lo; n <= hi; ++n) CHECK(lhs.sign(n) == rhs.sign(n));
  }
  CHECK(hat_inversion(SeqWindow::constant(1, -3, 3, 1.0)) == SeqWindow::constant(1, -2, 4, 1.0));
}

TEST_CASE("fixed point window of Gamma_+") {
  for (int n = 1; n <= 8; ++n) {
    const SeqWindow w = fixed_point_window(n, 0.5);
    CHECK(w.lo() == 2 - (1L << n));
    CHECK(w.hi() == (1L << n) - 1);
    CHECK(w.value(0) == 0.5);
    CHECK(w.value(1) == -0.5);
    for (long k = w.lo(); k <= w.hi(); ++k) {
      if (k != 0 && k != 1 && w.contains(1 - k)) CHECK(w.sign(k) == w.sign(1 - k));
    }
  }
  // independent of the starting word: iterate by hand from +1 and -1
  for (int n = 1; n <= 6; ++n) {
    SeqWindow a = SeqWindow::constant(1, -2, 2, 1.0);
    SeqWindow b = SeqWindow::constant(-1, -2, 2, 1.0);
    for (int k = 0; k < n; ++k) {
      a = gamma_plus_window(a, 1.0);
      b = gamma_plus_window(b, 1.0);
    }
    const SeqWindow w = fixed_point_window(n);
    for (long k = w.lo(); k <= w.hi(); ++k) {
      CHECK(a.sign(k) == b.sign(k));
      CHECK(a.sign(k) == w.sign(k));
    }
  }
}

TEST_CASE("c_tilde") {
  const int table[] = {1, 1, -1, -1, 1, -1, 1, -1, 1};
  for (long n = 1; n <= 9; ++n) CHECK(c_tilde(n) == table[n - 1]);
  CHECK_THROWS_AS(c_tilde(0), Error);

  const auto pre = c_tilde_prefix(1L << 20);
  REQUIRE(pre.size() == (1UL << 20));
  for (long n = 1; 2 * n + 1 <= (1L << 20); ++n) {
    CHECK(pre[2 * n - 1] == pre[2 * n - 2] * pre[n - 1]);
    CHECK(pre[2 * n - 1] * pre[2 * n] == -1);
  }
  CHECK(c_tilde(1L << 20) == pre.back());

  // c~ agrees with c_+ on n >= 2 and c~_1 = +1
  const SeqWindow w = fixed_point_window(10);
  CHECK(c_tilde(1) == 1);
  for (long n = 2; n <= w.hi(); ++n) CHECK(c_tilde(n) == w.sign(n));
}

TEST_CASE("c_iterate_word") {
  CHECK(signs_of(c_iterate_word(0, Branch::plus, 0.5)) == std::vector<int>{1});
  CHECK(signs_of(c_iterate_word(0, Branch::minus, 0.5)) == std::vector<int>{-1});
  CHECK(signs_of(c_iterate_word(1, Branch::plus, 1.0)) == std::vector<int>{1, -1, -1, 1});
  CHECK(signs_of(c_iterate_word(1, Branch::minus, 1.0)) == std::vector<int>{1, -1});
  CHECK(c_iterate_word(2, Branch::plus, 0.5).sigma() == 0.5);
  for (int m = 0; m <= 6; ++m) {
    for (Branch b : {Branch::plus, Branch::minus}) {
      const SignWord w = c_iterate_word(m, b, 1.0);
      CHECK(((1UL << (2 * m)) % w.period()) == 0);
      if (m > 0) {
        // c^{(m)} = Gamma_+(c^{(m-1)})
        CHECK(w == gamma_plus_word(c_iterate_word(m - 1, b, 1.0), 1.0).word);
      }
    }
  }
}

TEST_CASE("m_word") {
  const DiagWord d = m_word(SignWord({1}, 0.25), 0.5);
  REQUIRE(d.period() == 2);
  CHECK(d.diag[0] == -1.0);
  CHECK(d.diag[1] == 1.0);
  CHECK(d.sub == -0.25);
  CHECK(d.sup == 1.0);

  const DiagWord z = m_word(SignWord({-1}, 0.25), 0.5);
  for (double v : z.diag) CHECK(v == 0.0);

  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const SignWord b = random_word(gen, n, 0.81);
    const DiagWord m = m_word(b, 0.9);
    const SignWord c = gamma_plus_word(b, 0.9).word;
    CHECK(m.period() == 2 * n);
    for (std::size_t k = 0; k < m.period(); ++k) {
      const double expect = c.value(2 * static_cast<long>(k) + 1) + c.value(2 * static_cast<long>(k) + 2);
      CHECK(m.diag[k] == doctest::Approx(expect).epsilon(1e-15));
      CHECK((m.diag[k] == 0.0 || std::abs(std::abs(m.diag[k]) - 1.8) < 1e-15));
    }
  }
}
