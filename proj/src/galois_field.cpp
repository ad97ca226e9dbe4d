#include "rmtail/galois_field.hpp"

#include <utility>

namespace rmtail {

namespace {

std::vector<int> digits(int value, int base, int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  for (auto& d : out) {
    d = value % base;
    value /= base;
  }
  return out;
}

int from_digits(const std::vector<int>& d, int base) {
  int v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * base + d[i];
  return v;
}

// Product of two polynomials of degree < m, reduced by the monic modulus.
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& modulus, int p) {
  const std::size_t m = modulus.size() - 1;
  std::vector<int> prod(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t k = prod.size(); k-- > m;) {
    const int c = prod[k];
    if (!c) continue;
    for (std::size_t i = 0; i <= m; ++i) {
      prod[k - m + i] = ((prod[k - m + i] - c * modulus[i]) % p + p) % p;
    }
  }
  prod.resize(m);
  return prod;
}

}  // namespace

bool GaloisField::is_prime_power(int order, int* prime, int* degree) {
  if (order < 2) return false;
  int p = 2;
  while (order % p != 0) ++p;
  int m = 0;
  int rest = order;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) return false;
  if (prime) *prime = p;
  if (degree) *degree = m;
  return true;
}

std::optional<GaloisField> GaloisField::create(int order) {
  int p = 0;
  int m = 0;
  if (order > kMaxOrder || !is_prime_power(order, &p, &m)) return std::nullopt;

  GaloisField f;
  f.p_ = p;
  f.m_ = m;
  f.order_ = order;
  const auto n = static_cast<std::size_t>(order);
  f.add_.resize(n * n);
  f.mul_.resize(n * n);
  f.neg_.resize(n);
  f.inv_.assign(n, 0);

  for (int a = 0; a < order; ++a) {
    const auto da = digits(a, p, m);
    std::vector<int> na(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) na[i] = (p - da[i]) % p;
    f.neg_[static_cast<std::size_t>(a)] = from_digits(na, p);
    for (int b = 0; b < order; ++b) {
      const auto db = digits(b, p, m);
      std::vector<int> s(da.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = (da[i] + db[i]) % p;
      f.add_[f.idx(a, b)] = static_cast<std::uint8_t>(from_digits(s, p));
    }
  }

  // First monic polynomial of degree m (lowest coefficients first) giving no zero divisors.
  const int candidates = order;  // p^m choices of the non-leading coefficients
  for (int c = 0; c < candidates; ++c) {
    auto modulus = digits(c, p, m);
    modulus.push_back(1);
    if (m > 1 && modulus[0] == 0) continue;
    bool field = true;
    for (int a = 0; a < order && field; ++a) {
      const auto da = digits(a, p, m);
      for (int b = 0; b < order; ++b) {
        const int prod = from_digits(poly_mulmod(da, digits(b, p, m), modulus, p), p);
        if (a && b && prod == 0) {
          field = false;
          break;
        }
        f.mul_[f.idx(a, b)] = static_cast<std::uint8_t>(prod);
      }
    }
    if (!field) continue;
    f.modulus_ = std::move(modulus);
    for (int a = 1; a < order; ++a) {
      for (int b = 1; b < order; ++b) {
        if (f.mul(a, b) == 1) {
          f.inv_[static_cast<std::size_t>(a)] = b;
          break;
        }
      }
    }
    return f;
  }
  return std::nullopt;
}

int GaloisField::pow(int a, int e) const {
  int r = 1;
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

SolveResult solve_left(const GaloisField& f, const Matrix& a, const std::vector<int>& y) {
  // Transpose to A^T x^T = y^T and eliminate on the augmented matrix.
  const std::size_t rows = a.size();
  const std::size_t cols = y.size();
  Matrix aug(cols, std::vector<int>(rows + 1));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) aug[c][r] = a[r][c];
    aug[c][rows] = y[c];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < rows && rank < cols; ++col) {
    std::size_t sel = rank;
    while (sel < cols && aug[sel][col] == 0) ++sel;
    if (sel == cols) continue;
    std::swap(aug[sel], aug[rank]);
    const int s = f.inv(aug[rank][col]);
    for (auto& v : aug[rank]) v = f.mul(v, s);
    for (std::size_t r = 0; r < cols; ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      const int factor = aug[r][col];
      for (std::size_t k = 0; k <= rows; ++k) aug[r][k] = f.sub(aug[r][k], f.mul(factor, aug[rank][k]));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < cols; ++r) {
    if (aug[r][rows] != 0) return {};
  }
  SolveResult out;
  out.x.assign(rows, 0);
  for (std::size_t r = 0; r < rank; ++r) out.x[pivot_col[r]] = aug[r][rows];
  out.status = rank == rows ? SolveResult::Status::unique : SolveResult::Status::underdetermined;
  return out;
}

Matrix null_space(const GaloisField& f, const Matrix& h) {
  const std::size_t rows = h.size();
  const std::size_t n = rows ? h[0].size() : 0;
  Matrix m = h;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows; ++col) {
    std::size_t sel = rank;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[rank]);
    const int s = f.inv(m[rank][col]);
    for (auto& v : m[rank]) v = f.mul(v, s);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const int factor = m[r][col];
      for (std::size_t k = 0; k < n; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[rank][k]));
    }
    pivots.push_back(col);
    ++rank;
  }
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Matrix basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = f.neg(m[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rmtail
