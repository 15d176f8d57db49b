#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amsolve/errors.hpp"
#include "amsolve/field.hpp"

namespace amsolve {

/// Monomials carry their exponents inline; every ring in this toolkit has at
/// most this many variables.
inline constexpr std::size_t kMaxVars = 8;

class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<int> exps);
  static Monomial from_exponents(std::span<const int> exps);
  static Monomial variable(std::size_t nvars, std::size_t index,
                           int power = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  int operator[](std::size_t i) const noexcept { return exps_[i]; }
  void set(std::size_t i, int e);
  int degree() const noexcept {
    int d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += exps_[i];
    return d;
  }
  bool is_one() const noexcept { return degree() == 0; }

  /// True iff this monomial divides `other`.
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// b / a; throws DivisionError unless a divides b.
  friend Monomial operator/(const Monomial& b, const Monomial& a);

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const noexcept;
  const std::array<Exponent, kMaxVars>& exponents() const noexcept {
    return exps_;
  }

 private:
  std::array<Exponent, kMaxVars> exps_{};
  std::uint8_t nvars_ = 0;
};

Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Graded reverse lexicographic order with identity precedence
/// (x_0 > x_1 > ...). This is the canonical storage order of polynomials.
std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b);

/// Lex order with identity precedence; used for canonical listings.
std::strong_ordering lex_compare(const Monomial& a, const Monomial& b);

/// Listing order for monomial sets: total degree ascending, then x_0 before
/// x_1 before ... (so {1, x, y} rather than {1, y, x}).
bool listing_less(const Monomial& a, const Monomial& b);
void sort_for_listing(std::vector<Monomial>& ms);

/// A total monomial order. Precedence lists variable indices from highest to
/// lowest. Weighted orders break ties with grevlex under the same precedence.
class MonomialOrder {
 public:
  enum class Kind { kGrevlex, kLex, kWeighted };

  static MonomialOrder grevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::vector<std::size_t> precedence);
  static MonomialOrder lex(std::vector<std::size_t> precedence);
  /// Weights must be nonnegative and at most 2^16.
  static MonomialOrder weighted(std::vector<std::int64_t> weights);

  Kind kind() const noexcept { return kind_; }
  std::size_t nvars() const noexcept { return precedence_.size(); }
  const std::vector<std::size_t>& precedence() const noexcept {
    return precedence_;
  }
  const std::vector<std::int64_t>& weights() const noexcept {
    return weights_;
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }

  /// e.g. "grevlex(x>y)", "lex(y>x)", "weight(3,17)".
  std::string describe(std::span<const std::string> var_names) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::vector<std::size_t> precedence,
                std::vector<std::int64_t> weights);
  std::strong_ordering grevlex_tail(const Monomial& a,
                                    const Monomial& b) const noexcept;

  Kind kind_;
  std::vector<std::size_t> precedence_;
  std::vector<std::int64_t> weights_;
};

/// "x^2*y", "1".
std::string format_monomial(const Monomial& m,
                            std::span<const std::string> var_names);

enum class CoeffKind { kPrimeField, kComplex };

/// Variable names plus the coefficient domain.
struct Ring {
  std::vector<std::string> var_names;
  CoeffKind coeff_kind = CoeffKind::kPrimeField;
  std::uint32_t modulus = PrimeField::kDefaultModulus;

  std::size_t nvars() const noexcept { return var_names.size(); }
  PrimeField prime_field() const { return PrimeField(modulus); }

  friend bool operator==(const Ring&, const Ring&) = default;
};

/// Sparse polynomial. Terms are unique, nonzero, and kept sorted descending
/// by canonical grevlex so iteration order never depends on how the
/// polynomial was built.
template <class Field>
class Polynomial {
 public:
  using Coeff = typename Field::Elem;
  struct Term {
    Monomial monomial;
    Coeff coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };
  struct LeadingTerm {
    Monomial monomial;
    Coeff coeff;
  };

  Polynomial() = default;
  Polynomial(Field field, std::size_t nvars)
      : field_(std::move(field)), nvars_(nvars) {}

  /// Combines duplicate monomials and drops zero coefficients.
  static Polynomial from_terms(Field field, std::size_t nvars,
                               std::vector<Term> terms) {
    Polynomial p(std::move(field), nvars);
    for (const auto& t : terms) {
      if (t.monomial.nvars() != nvars) {
        throw DimensionMismatchError("term has wrong number of variables");
      }
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return grevlex_compare(a.monomial, b.monomial) > 0;
    });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coeff = p.field_.add(p.terms_.back().coeff, t.coeff);
      } else {
        if (!p.terms_.empty() && p.field_.is_zero(p.terms_.back().coeff)) {
          p.terms_.pop_back();
        }
        p.terms_.push_back(t);
      }
    }
    if (!p.terms_.empty() && p.field_.is_zero(p.terms_.back().coeff)) {
      p.terms_.pop_back();
    }
    return p;
  }

  static Polynomial constant(Field field, std::size_t nvars, Coeff c) {
    return from_terms(field, nvars, {Term{Monomial(nvars), c}});
  }
  static Polynomial variable(Field field, std::size_t nvars,
                             std::size_t index) {
    Coeff one = field.one();
    return from_terms(field, nvars,
                      {Term{Monomial::variable(nvars, index), one}});
  }

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  int total_degree() const noexcept {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  std::vector<Monomial> monomials() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.monomial);
    return out;
  }

  /// Coefficient of m, zero when absent.
  Coeff coefficient(const Monomial& m) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) {
          return grevlex_compare(t.monomial, k) > 0;
        });
    if (it != terms_.end() && it->monomial == m) return it->coeff;
    return field_.zero();
  }

  LeadingTerm leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) {
      throw ZeroPolynomialError("leading term of the zero polynomial");
    }
    check_order(order);
    const Term* best = &terms_.front();
    for (const auto& t : terms_) {
      if (order.compare(t.monomial, best->monomial) > 0) best = &t;
    }
    return {best->monomial, best->coeff};
  }

  Polynomial operator+(const Polynomial& g) const { return combine(g, false); }
  Polynomial operator-(const Polynomial& g) const { return combine(g, true); }

  Polynomial operator*(const Polynomial& g) const {
    check_compatible(g);
    std::vector<Term> out;
    out.reserve(terms_.size() * g.terms_.size());
    for (const auto& a : terms_) {
      for (const auto& b : g.terms_) {
        out.push_back({a.monomial * b.monomial, field_.mul(a.coeff, b.coeff)});
      }
    }
    return from_terms(field_, nvars_, std::move(out));
  }

  Polynomial scaled(const Coeff& c) const {
    if (field_.is_zero(c)) return Polynomial(field_, nvars_);
    Polynomial p(field_, nvars_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Coeff v = field_.mul(t.coeff, c);
      if (!field_.is_zero(v)) p.terms_.push_back({t.monomial, v});
    }
    return p;
  }

  /// Multiplication by c * m; monomial multiplication preserves the order.
  Polynomial times_term(const Monomial& m, const Coeff& c) const {
    if (m.nvars() != nvars_) {
      throw DimensionMismatchError("monomial has wrong number of variables");
    }
    Polynomial p = scaled(c);
    for (auto& t : p.terms_) t.monomial = t.monomial * m;
    return p;
  }

  Coeff evaluate(std::span<const Coeff> point) const {
    if (point.size() != nvars_) {
      throw DimensionMismatchError("evaluation point has wrong dimension");
    }
    Coeff sum = field_.zero();
    for (const auto& t : terms_) {
      Coeff v = t.coeff;
      for (std::size_t i = 0; i < nvars_; ++i) {
        for (int e = 0; e < t.monomial[i]; ++e) v = field_.mul(v, point[i]);
      }
      sum = field_.add(sum, v);
    }
    return sum;
  }

  /// Applies `fn` to every coefficient; the result is re-canonicalized.
  template <class OtherField, class Fn>
  Polynomial<OtherField> map_coefficients(OtherField other, Fn fn) const {
    std::vector<typename Polynomial<OtherField>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.monomial, fn(t.coeff)});
    return Polynomial<OtherField>::from_terms(other, nvars_, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Polynomial& g) const {
    if (g.nvars_ != nvars_ || !(g.field_ == field_)) {
      throw DimensionMismatchError("polynomials from different rings");
    }
  }
  void check_order(const MonomialOrder& order) const {
    if (order.nvars() != nvars_) {
      throw DimensionMismatchError("order has wrong number of variables");
    }
  }

  Polynomial combine(const Polynomial& g, bool subtract) const {
    check_compatible(g);
    Polynomial p(field_, nvars_);
    p.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      std::strong_ordering c = std::strong_ordering::greater;
      if (i == terms_.size()) {
        c = std::strong_ordering::less;
      } else if (j < g.terms_.size()) {
        c = grevlex_compare(terms_[i].monomial, g.terms_[j].monomial);
      }
      if (c > 0) {
        p.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        Coeff v = subtract ? field_.neg(g.terms_[j].coeff) : g.terms_[j].coeff;
        p.terms_.push_back({g.terms_[j].monomial, v});
        ++j;
      } else {
        Coeff v = subtract ? field_.sub(terms_[i].coeff, g.terms_[j].coeff)
                           : field_.add(terms_[i].coeff, g.terms_[j].coeff);
        if (!field_.is_zero(v)) p.terms_.push_back({terms_[i].monomial, v});
        ++i;
        ++j;
      }
    }
    return p;
  }

  Field field_{};
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

using ZpPoly = Polynomial<PrimeField>;
using CPoly = Polynomial<ComplexField>;

/// All monomials in `nvars` variables of total degree <= max_degree, sorted
/// ascending by canonical grevlex.
std::vector<Monomial> monomials_up_to_degree(std::size_t nvars,
                                             int max_degree);

/// Integer lift through symmetric representatives, as complex floats.
CPoly lift_to_complex(const ZpPoly& f);

/// max_i |f_i(point)| / (1 + max coefficient magnitude of f_i); 0 for an
/// empty system.
double normalized_residual(std::span<const CPoly> equations,
                           std::span<const std::complex<double>> point);

}  // namespace amsolve
