#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "layercraft/errors.hpp"

namespace layercraft {

/// Multiset of exponents; kept sorted ascending.
using Multiset = std::vector<int64_t>;

inline Multiset sorted(Multiset m) {
  std::sort(m.begin(), m.end());
  return m;
}

/// Polynomial over Z, coefficients constant-first. Arithmetic is exact; the
/// coefficient magnitudes here are Whitney-number scale, far below 2^63, but
/// every product/sum is still overflow-checked.
class PolyZ {
public:
  PolyZ() : c_{0} {}
  explicit PolyZ(std::vector<int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

  static PolyZ constant(int64_t v) { return PolyZ({v}); }
  static PolyZ one() { return constant(1); }
  /// t - d
  static PolyZ linear_root(int64_t d) { return PolyZ({-d, 1}); }

  const std::vector<int64_t>& coeffs() const { return c_; }
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }
  int64_t leading() const { return c_.back(); }
  bool is_monic() const { return leading() == 1; }
  int64_t operator[](int i) const { return i < int(c_.size()) ? c_[i] : 0; }

  bool operator==(const PolyZ& o) const { return c_ == o.c_; }
  bool operator!=(const PolyZ& o) const { return c_ != o.c_; }

  static int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    check_internal(!__builtin_add_overflow(a, b, &r), "polynomial coefficient overflow");
    return r;
  }
  static int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    check_internal(!__builtin_mul_overflow(a, b, &r), "polynomial coefficient overflow");
    return r;
  }

  friend PolyZ operator+(const PolyZ& a, const PolyZ& b) {
    std::vector<int64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = checked_add(a[i], b[int(i)]);
    return PolyZ(std::move(r));
  }
  friend PolyZ operator-(const PolyZ& a, const PolyZ& b) {
    std::vector<int64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = checked_add(a[int(i)], checked_mul(-1, b[int(i)]));
    return PolyZ(std::move(r));
  }
  friend PolyZ operator*(const PolyZ& a, const PolyZ& b) {
    if (a.is_zero() || b.is_zero()) return PolyZ();
    std::vector<int64_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = checked_add(r[i + j], checked_mul(a.c_[i], b.c_[j]));
    return PolyZ(std::move(r));
  }

  /// Multiply by t^k.
  PolyZ shifted(int k) const {
    if (is_zero()) return PolyZ();
    std::vector<int64_t> r(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return PolyZ(std::move(r));
  }

  int64_t eval(int64_t x) const {
    int64_t acc = 0;
    for (int i = degree(); i >= 0; --i) acc = checked_add(checked_mul(acc, x), c_[i]);
    return acc;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      int64_t c = c_[i];
      if (c == 0) continue;
      if (!out.empty()) out += c > 0 ? " + " : " - ";
      else if (c < 0) out += "-";
      int64_t a = c < 0 ? -c : c;
      if (i == 0 || a != 1) out += std::to_string(a);
      if (i > 0) out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    return out;
  }

private:
  void trim() {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
    if (c_.empty()) c_ = {0};
  }
  std::vector<int64_t> c_;
};

/// Exact division in Z[t]; empty when the remainder is nonzero (or the
/// quotient would be non-integral). Division by zero is rejected.
inline std::optional<PolyZ> divide_exact(const PolyZ& num, const PolyZ& den) {
  check_internal(!den.is_zero(), "polynomial division by zero");
  if (num.is_zero()) return PolyZ();
  if (num.degree() < den.degree()) return std::nullopt;
  std::vector<int64_t> rem(num.coeffs());
  std::vector<int64_t> quot(num.degree() - den.degree() + 1, 0);
  for (int i = int(quot.size()) - 1; i >= 0; --i) {
    int64_t lead = rem[i + den.degree()];
    if (lead % den.leading() != 0) return std::nullopt;
    int64_t q = lead / den.leading();
    quot[i] = q;
    for (int j = 0; j <= den.degree(); ++j)
      rem[i + j] = PolyZ::checked_add(rem[i + j], PolyZ::checked_mul(-q, den[j]));
  }
  for (int64_t r : rem)
    if (r != 0) return std::nullopt;
  return PolyZ(std::move(quot));
}

inline bool divides(const PolyZ& den, const PolyZ& num) { return divide_exact(num, den).has_value(); }

inline PolyZ poly_from_roots(const Multiset& roots) {
  PolyZ p = PolyZ::one();
  for (int64_t d : roots) p = p * PolyZ::linear_root(d);
  return p;
}

/// Splits a monic p as prod (t - d_i) with all d_i positive integers; empty
/// when no such factorization exists. Trial division over the positive
/// divisors of the constant term, repeated with multiplicity. Candidates are
/// screened by an arbitrary-precision evaluation so that the int64 synthetic
/// division only ever runs on genuine roots.
inline std::optional<Multiset> factor_positive_integer_roots(const PolyZ& p) {
  if (!p.is_monic()) fail(errc::not_monic, "factor_positive_integer_roots expects a monic polynomial");
  auto is_root = [](const PolyZ& f, int64_t x) {
    mpz_class acc = 0, xx = x;
    for (int i = f.degree(); i >= 0; --i) acc = acc * xx + f[i];
    return acc == 0;
  };
  PolyZ cur = p;
  Multiset roots;
  while (cur.degree() > 0) {
    int64_t c0 = cur[0];
    if (c0 == 0) return std::nullopt;  // zero root; exponents must be positive
    int64_t a = c0 < 0 ? -c0 : c0;
    bool found = false;
    for (int64_t d = 1; d * d <= a && !found; ++d) {
      if (a % d != 0) continue;
      for (int64_t cand : {d, a / d}) {
        if (!is_root(cur, cand)) continue;
        auto q = divide_exact(cur, PolyZ::linear_root(cand));
        check_internal(q.has_value(), "root must divide exactly");
        roots.push_back(cand);
        cur = *q;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return sorted(std::move(roots));
}

inline std::string multiset_str(const Multiset& m) {
  std::string out = "{";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m[i]);
  }
  return out + "}";
}

}  // namespace layercraft
