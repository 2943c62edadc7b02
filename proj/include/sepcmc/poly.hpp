#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sepcmc {

/// Dense univariate polynomial; coeffs[k] multiplies Z^k.
template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<T> c) : coeffs_(c) { trim(); }
  explicit Poly(std::vector<T> c) : coeffs_(std::move(c)) { trim(); }

  static Poly monomial(const T& c, std::size_t k) {
    std::vector<T> v(k + 1, T{0});
    v[k] = c;
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  T coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T{0}; }

  T operator()(const T& z) const {
    T acc{0};
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.coeffs_.size(), b.coeffs_.size()), T{0});
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (T{-1} * b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T{0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T{0}) coeffs_.pop_back();
  }
  std::vector<T> coeffs_;
};

}  // namespace sepcmc
