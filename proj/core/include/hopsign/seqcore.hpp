#pragma once

// Sign sequences c in {+sigma, -sigma}^Z and the sequence maps built on them:
// the square-root maps Gamma_{+/-}, space inversion, the fixed point c_+, the
// sequence c~ and the diagonal word of the companion operator M_b.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hopsign {

enum class Branch { plus, minus };

inline int sign_of(Branch b) noexcept { return b == Branch::plus ? 1 : -1; }

/// N-periodic sequence c_n = sigma * signs[n mod N]. Position 0 holds c_0.
class SignWord {
 public:
  SignWord(std::vector<std::int8_t> signs, double sigma);
  SignWord(std::initializer_list<int> signs, double sigma);

  static SignWord constant(int sign, double sigma);
  /// Word of length n whose sign at position k is -1 iff bit k of mask is set.
  static SignWord from_mask(std::uint64_t mask, std::size_t n, double sigma);

  std::size_t period() const noexcept { return signs_.size(); }
  double sigma() const noexcept { return sigma_; }
  std::span<const std::int8_t> signs() const noexcept { return signs_; }

  int sign(long n) const noexcept;
  double value(long n) const noexcept { return sigma_ * sign(n); }

  /// Position 0 of the result is position k of this word.
  SignWord rotated(long k) const;
  /// Lexicographically least rotation, ordering -1 before +1.
  SignWord canonical() const;
  std::size_t minimal_period() const noexcept;
  SignWord reduced() const;
  SignWord repeated(std::size_t times) const;
  SignWord negated() const;
  SignWord with_sigma(double sigma) const;
  /// Bitmask of -1 positions; only meaningful for period <= 64.
  std::uint64_t mask() const noexcept;

  friend bool operator==(const SignWord&, const SignWord&) = default;

 private:
  std::vector<std::int8_t> signs_;
  double sigma_;
};

/// Values c_lo..c_hi of a bi-infinite sign sequence.
class SeqWindow {
 public:
  SeqWindow(long lo, std::vector<std::int8_t> signs, double sigma);

  static SeqWindow from_word(const SignWord& word, long lo, long hi);
  static SeqWindow constant(int sign, long lo, long hi, double sigma);

  long lo() const noexcept { return lo_; }
  long hi() const noexcept { return lo_ + static_cast<long>(signs_.size()) - 1; }
  double sigma() const noexcept { return sigma_; }
  bool contains(long n) const noexcept { return n >= lo() && n <= hi(); }

  int sign(long n) const;
  double value(long n) const { return sigma_ * sign(n); }
  std::vector<double> values() const;
  SeqWindow slice(long lo, long hi) const;

  friend bool operator==(const SeqWindow&, const SeqWindow&) = default;

 private:
  long lo_;
  std::vector<std::int8_t> signs_;
  double sigma_;
};

/// Periodic diagonal of M_b: (M_b f)_n = sub f_{n-1} + diag[n] f_n + sup f_{n+1}.
struct DiagWord {
  std::vector<double> diag;
  double sub = -1.0;
  double sup = 1.0;

  std::size_t period() const noexcept { return diag.size(); }
};

struct GammaImage {
  SignWord word;            // reduced to its minimal period
  std::size_t raw_period;   // 4N before reduction

  std::size_t reduction_factor() const noexcept { return raw_period / word.period(); }
};

/// Gamma_{sigma,+}(b): b has amplitude sigma^2, the image has amplitude sigma
/// and satisfies c_0 = sigma, c_{2n} + c_{2n+1} = 0, c_{2n} c_{2n-1} = b_n.
GammaImage gamma_plus_word(const SignWord& b, double sigma);
/// Same, with sigma = sqrt(b.sigma()).
GammaImage gamma_plus_word(const SignWord& b);

/// Gamma_{+/-} on a finite window. The output covers [2 lo - 2, 2 hi + 1],
/// every index there being fixed by the defining relations. The input window
/// must contain index 0.
SeqWindow gamma_window(const SeqWindow& b, Branch branch, double sigma);
SeqWindow gamma_plus_window(const SeqWindow& b, double sigma);
SeqWindow gamma_plus_window(const SeqWindow& b);

/// b^_n = b_{1-n}.
SeqWindow hat_inversion(const SeqWindow& b);

/// sigma * c_+ on [2 - 2^n, 2^n - 1], obtained from n iterations of Gamma_+.
SeqWindow fixed_point_window(int n, double sigma = 1.0);

/// c~_1 = 1, c~_{2n} = c~_{2n-1} c~_n, c~_{2n} + c~_{2n+1} = 0.
int c_tilde(long n);
/// c~_1..c~_n (index 0 of the result is c~_1).
std::vector<std::int8_t> c_tilde_prefix(long n);

/// sigma * c^{(m,branch)}, reduced to its minimal period.
SignWord c_iterate_word(int m, Branch branch, double sigma);

/// Diagonal word of M_b for c = Gamma_{sigma,+}(b); period 2N.
/// The off-diagonal coupling to f_{n-1} is c_{2n+1} c_{2n} = -sigma^2.
DiagWord m_word(const SignWord& b, double sigma);

}  // namespace hopsign
