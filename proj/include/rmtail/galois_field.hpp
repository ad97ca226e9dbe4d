#pragma once
// Small finite fields GF(p^m) with table arithmetic, plus Gaussian
// elimination for the linear outer codes.

#include <cstdint>
#include <optional>
#include <vector>

namespace rmtail {

/// Elements are integers 0..order-1 read as base-p coefficient vectors
/// (digit i is the coefficient of x^i), reduced modulo a monic irreducible
/// polynomial found by exhaustive search.
class GaloisField {
 public:
  static constexpr int kMaxOrder = 256;

  /// nullopt unless order is a prime power in [2, kMaxOrder].
  static std::optional<GaloisField> create(int order);
  static bool is_prime_power(int order, int* prime = nullptr, int* degree = nullptr);

  int order() const { return order_; }
  int characteristic() const { return p_; }
  int degree() const { return m_; }
  /// Coefficients of the reduction polynomial, constant term first (monic, length m+1).
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int sub(int a, int b) const { return add(a, neg_[static_cast<std::size_t>(b)]); }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  /// Multiplicative inverse; a must be nonzero.
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int pow(int a, int e) const;

 private:
  GaloisField() = default;
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(b); }

  int p_ = 0;
  int m_ = 0;
  int order_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

using Matrix = std::vector<std::vector<int>>;

struct SolveResult {
  enum class Status { unique, underdetermined, inconsistent } status = Status::inconsistent;
  std::vector<int> x;  // one solution when consistent
};

/// Solves x * A = y over the field, where A is rows x cols and y has cols entries.
SolveResult solve_left(const GaloisField& f, const Matrix& a, const std::vector<int>& y);

/// Row-reduced basis of {x : H x^T = 0}.
Matrix null_space(const GaloisField& f, const Matrix& h);

}  // namespace rmtail
