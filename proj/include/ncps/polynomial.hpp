#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace ncps {

inline constexpr int kMaxVariables = 4;

/// Per-variable exponents of a monomial. Slots past the polynomial's
/// variable count are always zero.
using Monomial = std::array<std::uint8_t, kMaxVariables>;

inline int total_degree(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

inline std::uint32_t pack(const Monomial& m) {
  return std::uint32_t(m[0]) | (std::uint32_t(m[1]) << 8) | (std::uint32_t(m[2]) << 16) |
         (std::uint32_t(m[3]) << 24);
}

inline Monomial unpack(std::uint32_t key) {
  return {std::uint8_t(key & 0xff), std::uint8_t((key >> 8) & 0xff),
          std::uint8_t((key >> 16) & 0xff), std::uint8_t(key >> 24)};
}

namespace detail {
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
}  // namespace detail

/// Sparse multivariate polynomial over at most four variables. Terms are kept
/// in a sorted map so iteration (and every floating-point sum built from it)
/// is deterministic. Zero coefficients are never stored.
template <typename Scalar>
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit Polynomial(int num_variables = 0) : num_variables_(num_variables) {
    if (num_variables < 0 || num_variables > kMaxVariables) {
      throw std::out_of_range("Polynomial supports at most four variables");
    }
  }

  static Polynomial constant(int num_variables, Scalar c) {
    Polynomial p(num_variables);
    p.add_term(Monomial{}, c);
    return p;
  }

  static Polynomial variable(int num_variables, int index) {
    Polynomial p(num_variables);
    Monomial m{};
    m.at(static_cast<std::size_t>(index)) = 1;
    p.add_term(m, Scalar(1));
    return p;
  }

  /// sum_i coeffs[i] z_i
  static Polynomial linear(const Eigen::VectorXd& coeffs) {
    Polynomial p(static_cast<int>(coeffs.size()));
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
      Monomial m{};
      m[i] = 1;
      p.add_term(m, Scalar(coeffs[i]));
    }
    return p;
  }

  /// z^T M z for a symmetric M.
  static Polynomial quadratic(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Polynomial p(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Monomial mono{};
        mono[i] += 1;
        mono[j] += 1;
        p.add_term(mono, Scalar(i == j ? m(i, i) : m(i, j) + m(j, i)));
      }
    }
    return p;
  }

  int num_variables() const { return num_variables_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
  }

  Scalar constant_term() const { return coefficient(Monomial{}); }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  Scalar coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const Monomial& m, Scalar c) {
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  double max_abs_coefficient() const {
    double best = 0.0;
    for (const auto& [m, c] : terms_) best = std::max(best, detail::magnitude(c));
    return best;
  }

  /// Drops coefficients below relative * (largest coefficient magnitude).
  Polynomial& prune(double relative = 1e-15) {
    const double cut = relative * max_abs_coefficient();
    std::erase_if(terms_, [cut](const auto& t) { return detail::magnitude(t.second) <= cut; });
    return *this;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  Polynomial& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Scalar s) { return a *= s; }
  friend Polynomial operator*(Scalar s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    std::unordered_map<std::uint32_t, Scalar> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        for (int i = 0; i < kMaxVariables; ++i) {
          const int e = ma[i] + mb[i];
          if (e > 255) throw std::out_of_range("monomial exponent overflow");
          m[i] = static_cast<std::uint8_t>(e);
        }
        acc[pack(m)] += ca * cb;
      }
    }
    Polynomial out(a.num_variables_);
    for (const auto& [key, c] : acc) {
      if (c != Scalar(0)) out.terms_.emplace(unpack(key), c);
    }
    return out;
  }

  Polynomial pow(int n) const {
    Polynomial result = constant(num_variables_, Scalar(1));
    Polynomial base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }

  Polynomial derivative(int var) const {
    Polynomial out(num_variables_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      out.terms_.emplace(d, c * Scalar(double(m[var])));
    }
    return out;
  }

  Polynomial times_variable(int var) const {
    Polynomial out(num_variables_);
    for (const auto& [m, c] : terms_) {
      Monomial d = m;
      d[var] += 1;
      out.terms_.emplace(d, c);
    }
    return out;
  }

  template <typename Other>
  Polynomial<Other> cast() const {
    Polynomial<Other> out(num_variables_);
    for (const auto& [m, c] : terms_) out.add_term(m, Other(c));
    return out;
  }

  template <typename Derived>
  Scalar operator()(const Eigen::MatrixBase<Derived>& z) const {
    if (terms_.empty()) return Scalar(0);
    std::array<std::vector<double>, kMaxVariables> powers;
    const int deg = degree();
    for (int v = 0; v < num_variables_; ++v) {
      powers[v].resize(static_cast<std::size_t>(deg) + 1);
      powers[v][0] = 1.0;
      for (int k = 1; k <= deg; ++k) powers[v][k] = powers[v][k - 1] * z[v];
    }
    Scalar sum(0);
    for (const auto& [m, c] : terms_) {
      double mono = 1.0;
      for (int v = 0; v < num_variables_; ++v) mono *= powers[v][m[v]];
      sum += c * mono;
    }
    return sum;
  }

 private:
  void check_compatible(const Polynomial& o) const {
    if (o.num_variables_ != num_variables_) {
      throw std::invalid_argument("polynomials over different variable sets");
    }
  }

  int num_variables_;
  Terms terms_;
};

using Polynomiald = Polynomial<double>;
using Polynomialcd = Polynomial<std::complex<double>>;

inline Polynomiald real_part(const Polynomialcd& p) {
  Polynomiald out(p.num_variables());
  for (const auto& [m, c] : p.terms()) out.add_term(m, c.real());
  return out;
}

inline Polynomiald imag_part(const Polynomialcd& p) {
  Polynomiald out(p.num_variables());
  for (const auto& [m, c] : p.terms()) out.add_term(m, c.imag());
  return out;
}

/// sum_k coeffs[k] * x^k by Horner's rule, with x itself a polynomial.
template <typename Scalar>
Polynomial<Scalar> compose(const std::vector<double>& coeffs, const Polynomial<Scalar>& x) {
  Polynomial<Scalar> acc(x.num_variables());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x;
    acc.add_term(Monomial{}, Scalar(*it));
  }
  return acc;
}

}  // namespace ncps
