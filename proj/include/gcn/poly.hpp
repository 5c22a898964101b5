#pragma once

#include <gcn/matrix.hpp>
#include <gcn/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gcn {

/// dim Pi_n = C(n+2, 2); zero for negative n (Pi_{-1} = {0}).
constexpr std::size_t dim_pi(int n) {
  if (n < 0) return 0;
  return static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2;
}

/// dim Pi_n - dim Pi_{n-k}, the node count of a maximal curve of degree k.
constexpr int d_nk(int n, int k) {
  if (k < 1 || k > n) throw std::domain_error("d_nk: need 1 <= k <= n");
  return k * (2 * n + 3 - k) / 2;
}

/// Graded-lex position of x^i y^j: degree-major, x-power descending within a degree.
constexpr std::size_t monomial_index(int xpow, int ypow) {
  const auto d = static_cast<std::size_t>(xpow + ypow);
  return d * (d + 1) / 2 + static_cast<std::size_t>(ypow);
}

struct Exponents {
  int x;
  int y;
};

constexpr Exponents monomial_at(std::size_t index) {
  int d = 0;
  while (dim_pi(d) <= index) ++d;
  const int j = static_cast<int>(index - dim_pi(d - 1));
  return {d - j, j};
}

/// Dense bivariate polynomial in Pi_{max_degree}, coefficients in graded-lex order.
class Poly {
 public:
  Poly() : Poly(0) {}

  explicit Poly(int max_degree) : max_degree_(max_degree) {
    if (max_degree < 0) throw std::domain_error("Poly: negative degree bound");
    coeffs_.resize(dim_pi(max_degree));
  }

  Poly(int max_degree, std::vector<Rational> coeffs) : max_degree_(max_degree), coeffs_(std::move(coeffs)) {
    if (max_degree < 0) throw std::domain_error("Poly: negative degree bound");
    if (coeffs_.size() != dim_pi(max_degree)) {
      throw std::invalid_argument("Poly: coefficient count does not match degree bound");
    }
  }

  static Poly constant(const Rational& c) {
    Poly p(0);
    p.coeffs_[0] = c;
    return p;
  }

  static Poly monomial(int xpow, int ypow, const Rational& c = 1) {
    Poly p(xpow + ypow);
    p.coeffs_[monomial_index(xpow, ypow)] = c;
    return p;
  }

  static Poly x() { return monomial(1, 0); }
  static Poly y() { return monomial(0, 1); }

  /// c + a x + b y
  static Poly linear(const Rational& a, const Rational& b, const Rational& c) {
    return Poly(1, {c, a, b});
  }

  int max_degree() const { return max_degree_; }

  /// Effective total degree; -1 for the zero polynomial.
  int degree() const {
    for (int d = max_degree_; d >= 0; --d) {
      for (int j = 0; j <= d; ++j) {
        if (!is_zero(coeffs_[monomial_index(d - j, j)])) return d;
      }
    }
    return -1;
  }

  bool is_zero_poly() const { return degree() < 0; }

  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(int xpow, int ypow) const {
    if (xpow < 0 || ypow < 0 || xpow + ypow > max_degree_) return 0;
    return coeffs_[monomial_index(xpow, ypow)];
  }

  void set_coeff(int xpow, int ypow, const Rational& c) {
    if (xpow < 0 || ypow < 0 || xpow + ypow > max_degree_) {
      throw std::out_of_range("Poly::set_coeff: monomial outside degree bound");
    }
    coeffs_[monomial_index(xpow, ypow)] = c;
  }

  Rational operator()(const Rational& x, const Rational& y) const {
    std::vector<Rational> xp(static_cast<std::size_t>(max_degree_) + 1, 1);
    std::vector<Rational> yp(xp.size(), 1);
    for (std::size_t i = 1; i < xp.size(); ++i) {
      xp[i] = xp[i - 1] * x;
      yp[i] = yp[i - 1] * y;
    }
    Rational sum = 0;
    for (int d = 0; d <= max_degree_; ++d) {
      for (int j = 0; j <= d; ++j) {
        const Rational& c = coeffs_[monomial_index(d - j, j)];
        if (!is_zero(c)) sum += c * xp[d - j] * yp[j];
      }
    }
    return sum;
  }

  /// Same polynomial stored with a different degree bound. Throws if terms would be dropped.
  Poly resized(int new_max) const {
    if (new_max < 0) throw std::domain_error("Poly::resized: negative degree bound");
    if (degree() > new_max) throw std::domain_error("Poly::resized: polynomial exceeds new bound");
    Poly out(new_max);
    const std::size_t n = std::min(coeffs_.size(), out.coeffs_.size());
    std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
    return out;
  }

  /// Drops the degree bound to the effective degree (zero keeps bound 0).
  Poly trimmed() const { return resized(std::max(degree(), 0)); }

  Poly operator-() const {
    Poly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Poly operator+(const Poly& p, const Poly& q) {
    Poly out = p.max_degree_ >= q.max_degree_ ? p : q;
    const Poly& small = p.max_degree_ >= q.max_degree_ ? q : p;
    for (std::size_t i = 0; i < small.coeffs_.size(); ++i) out.coeffs_[i] += small.coeffs_[i];
    return out;
  }

  friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

  friend Poly operator*(const Rational& s, const Poly& p) {
    Poly out = p;
    for (auto& c : out.coeffs_) c *= s;
    return out;
  }

  friend Poly operator*(const Poly& p, const Poly& q) {
    Poly out(p.max_degree_ + q.max_degree_);
    for (int d1 = 0; d1 <= p.max_degree_; ++d1) {
      for (int j1 = 0; j1 <= d1; ++j1) {
        const Rational& c1 = p.coeffs_[monomial_index(d1 - j1, j1)];
        if (is_zero(c1)) continue;
        for (int d2 = 0; d2 <= q.max_degree_; ++d2) {
          for (int j2 = 0; j2 <= d2; ++j2) {
            const Rational& c2 = q.coeffs_[monomial_index(d2 - j2, j2)];
            if (is_zero(c2)) continue;
            out.coeffs_[monomial_index(d1 - j1 + d2 - j2, j1 + j2)] += c1 * c2;
          }
        }
      }
    }
    return out;
  }

  /// Mathematical equality; degree bounds may differ.
  friend bool operator==(const Poly& p, const Poly& q) {
    const std::size_t n = std::max(p.coeffs_.size(), q.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const Rational a = i < p.coeffs_.size() ? p.coeffs_[i] : Rational(0);
      const Rational b = i < q.coeffs_.size() ? q.coeffs_[i] : Rational(0);
      if (a != b) return false;
    }
    return true;
  }

  friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

  /// p(y, x)
  Poly swapped_xy() const {
    Poly out(max_degree_);
    for (int d = 0; d <= max_degree_; ++d) {
      for (int j = 0; j <= d; ++j) out.coeffs_[monomial_index(j, d - j)] = coeffs_[monomial_index(d - j, j)];
    }
    return out;
  }

  /// p(x + dx, y + dy)
  Poly translated(const Rational& dx, const Rational& dy) const {
    const int n = max_degree_;
    std::vector<Rational> dxp(static_cast<std::size_t>(n) + 1, 1);
    std::vector<Rational> dyp(dxp.size(), 1);
    for (std::size_t i = 1; i < dxp.size(); ++i) {
      dxp[i] = dxp[i - 1] * dx;
      dyp[i] = dyp[i - 1] * dy;
    }
    Poly out(n);
    for (int d = 0; d <= n; ++d) {
      for (int j = 0; j <= d; ++j) {
        const Rational& c = coeffs_[monomial_index(d - j, j)];
        if (is_zero(c)) continue;
        const int i = d - j;
        for (int a = 0; a <= i; ++a) {
          const Rational ca = c * static_cast<long>(choose(i, a)) * dxp[i - a];
          for (int b = 0; b <= j; ++b) {
            out.coeffs_[monomial_index(a, b)] += ca * static_cast<long>(choose(j, b)) * dyp[j - b];
          }
        }
      }
    }
    return out;
  }

 private:
  int max_degree_;
  std::vector<Rational> coeffs_;
};

namespace detail {

// Divides p by (a x + b y + c) with a != 0, treating p as a polynomial in x over Q[y].
inline std::optional<Poly> divide_by_linear_in_x(const Poly& p, const Rational& a, const Rational& b,
                                                 const Rational& c) {
  const int n = p.max_degree();
  if (n == 0) {
    if (p.is_zero_poly()) return Poly(0);
    return std::nullopt;
  }
  // column(i)[j] = coefficient of x^i y^j; rows[i] holds R_i with deg R_i <= n - 1 - i.
  auto column = [&](int i) {
    std::vector<Rational> col(static_cast<std::size_t>(n - i) + 1);
    for (int j = 0; j <= n - i; ++j) col[j] = p.coeff(i, j);
    return col;
  };
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    std::vector<Rational> t = column(i);
    if (i < n) {
      const auto& next = rows[i];
      for (std::size_t j = 0; j < next.size(); ++j) {
        t[j] -= c * next[j];
        t[j + 1] -= b * next[j];
      }
    }
    for (auto& v : t) v /= a;
    rows[i - 1] = std::move(t);
  }
  std::vector<Rational> rem = column(0);
  for (std::size_t j = 0; j < rows[0].size(); ++j) {
    rem[j] -= c * rows[0][j];
    rem[j + 1] -= b * rows[0][j];
  }
  for (const auto& v : rem) {
    if (!is_zero(v)) return std::nullopt;
  }
  Poly r(n - 1);
  for (int i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) r.set_coeff(i, static_cast<int>(j), rows[i][j]);
  }
  return r;
}

}  // namespace detail

/// Exact division by a linear form, by univariate long division in x (or y when the
/// x-coefficient vanishes). Returns r with p = linear * r, or nullopt.
inline std::optional<Poly> divide_by_linear(const Poly& p, const Poly& linear) {
  if (linear.degree() != 1) throw std::domain_error("divide_by_linear: degenerate line");
  const Rational c = linear.coeff(0, 0);
  const Rational a = linear.coeff(1, 0);
  const Rational b = linear.coeff(0, 1);
  if (!is_zero(a)) return detail::divide_by_linear_in_x(p, a, b, c);
  auto r = detail::divide_by_linear_in_x(p.swapped_xy(), b, a, c);
  if (!r) return std::nullopt;
  return r->swapped_xy();
}

/// Finds r in Pi_target with q r = p by an exact linear solve in the coefficients of r.
inline std::optional<Poly> divide_poly(const Poly& p, const Poly& q, int target_degree) {
  const int dq = q.degree();
  if (dq < 1) throw std::domain_error("divide_poly: divisor must have degree >= 1");
  if (target_degree < 0) throw std::domain_error("divide_poly: negative target degree");
  const int top = dq + target_degree;
  if (p.degree() > top) throw std::domain_error("divide_poly: inconsistent degrees");

  const Poly qt = q.resized(dq);
  const std::size_t unknowns = dim_pi(target_degree);
  Matrix<Rational> system(dim_pi(top), unknowns);
  for (std::size_t col = 0; col < unknowns; ++col) {
    const auto [i, j] = monomial_at(col);
    const Poly product = qt * Poly::monomial(i, j);
    for (std::size_t row = 0; row < product.coeffs().size(); ++row) system(row, col) = product.coeffs()[row];
  }
  const std::vector<Rational> rhs = p.resized(top).coeffs();
  auto solution = solve_linear(system, rhs);
  if (!solution) return std::nullopt;
  return Poly(target_degree, std::move(*solution));
}

}  // namespace gcn
