#include "amsolve/poly.hpp"

#include <numeric>

namespace amsolve {

namespace {

void require_same_nvars(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) {
    throw DimensionMismatchError("monomials with different variable counts");
  }
}

}  // namespace

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVars) {
    throw DimensionMismatchError("at most " + std::to_string(kMaxVars) +
                                 " variables are supported");
  }
}

Monomial::Monomial(std::initializer_list<int> exps) : Monomial(exps.size()) {
  std::size_t i = 0;
  for (int e : exps) set(i++, e);
}

Monomial Monomial::from_exponents(std::span<const int> exps) {
  Monomial m(exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
  return m;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, int power) {
  Monomial m(nvars);
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, int e) {
  if (i >= nvars_) throw DimensionMismatchError("exponent index out of range");
  if (e < 0 || e > 0xffff) throw DivisionError("exponent out of range");
  exps_[i] = static_cast<Exponent>(e);
}

bool Monomial::divides(const Monomial& other) const {
  require_same_nvars(*this, other);
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  require_same_nvars(a, b);
  Monomial m(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    m.exps_[i] = static_cast<Monomial::Exponent>(a.exps_[i] + b.exps_[i]);
  }
  return m;
}

Monomial operator/(const Monomial& b, const Monomial& a) {
  if (!a.divides(b)) throw DivisionError("monomial does not divide");
  Monomial m(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    m.exps_[i] = static_cast<Monomial::Exponent>(b.exps_[i] - a.exps_[i]);
  }
  return m;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = nvars_;
  for (std::size_t i = 0; i < nvars_; ++i) {
    h = h * 1000003u ^ exps_[i];
  }
  return h;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  require_same_nvars(a, b);
  Monomial m(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) m.set(i, std::max(a[i], b[i]));
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) {
  require_same_nvars(a, b);
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) {
  require_same_nvars(a, b);
  int da = a.degree();
  int db = b.degree();
  if (da != db) return da <=> db;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) {
      // Smaller exponent in the last differing variable wins.
      return a[i] < b[i] ? std::strong_ordering::greater
                         : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

std::strong_ordering lex_compare(const Monomial& a, const Monomial& b) {
  require_same_nvars(a, b);
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

bool listing_less(const Monomial& a, const Monomial& b) {
  int da = a.degree();
  int db = b.degree();
  if (da != db) return da < db;
  return lex_compare(a, b) > 0;
}

void sort_for_listing(std::vector<Monomial>& ms) {
  std::sort(ms.begin(), ms.end(), listing_less);
}

MonomialOrder::MonomialOrder(Kind kind, std::vector<std::size_t> precedence,
                             std::vector<std::int64_t> weights)
    : kind_(kind),
      precedence_(std::move(precedence)),
      weights_(std::move(weights)) {
  std::vector<bool> seen(precedence_.size(), false);
  for (std::size_t v : precedence_) {
    if (v >= precedence_.size() || seen[v]) {
      throw Error("variable precedence is not a permutation");
    }
    seen[v] = true;
  }
  if (precedence_.size() > kMaxVars) {
    throw DimensionMismatchError("too many variables for a monomial order");
  }
}

namespace {
std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}
}  // namespace

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  return grevlex(identity(nvars));
}
MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  return lex(identity(nvars));
}
MonomialOrder MonomialOrder::grevlex(std::vector<std::size_t> precedence) {
  return MonomialOrder(Kind::kGrevlex, std::move(precedence), {});
}
MonomialOrder MonomialOrder::lex(std::vector<std::size_t> precedence) {
  return MonomialOrder(Kind::kLex, std::move(precedence), {});
}
MonomialOrder MonomialOrder::weighted(std::vector<std::int64_t> weights) {
  for (std::int64_t w : weights) {
    if (w < 0 || w > (std::int64_t{1} << 16)) {
      throw Error("weights must lie in [0, 2^16]");
    }
  }
  std::size_t n = weights.size();
  return MonomialOrder(Kind::kWeighted, identity(n), std::move(weights));
}

std::strong_ordering MonomialOrder::grevlex_tail(
    const Monomial& a, const Monomial& b) const noexcept {
  int da = a.degree();
  int db = b.degree();
  if (da != db) return da <=> db;
  for (std::size_t k = precedence_.size(); k-- > 0;) {
    std::size_t v = precedence_[k];
    if (a[v] != b[v]) {
      return a[v] < b[v] ? std::strong_ordering::greater
                         : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a,
                                            const Monomial& b) const {
  if (a.nvars() != precedence_.size() || b.nvars() != precedence_.size()) {
    throw DimensionMismatchError("monomial does not match order dimension");
  }
  switch (kind_) {
    case Kind::kLex:
      for (std::size_t v : precedence_) {
        if (a[v] != b[v]) return a[v] <=> b[v];
      }
      return std::strong_ordering::equal;
    case Kind::kWeighted: {
      std::int64_t wa = 0;
      std::int64_t wb = 0;
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        wa += weights_[i] * a[i];
        wb += weights_[i] * b[i];
      }
      if (wa != wb) return wa <=> wb;
      return grevlex_tail(a, b);
    }
    case Kind::kGrevlex:
      break;
  }
  return grevlex_tail(a, b);
}

std::string MonomialOrder::describe(
    std::span<const std::string> var_names) const {
  auto name = [&](std::size_t i) {
    return i < var_names.size() ? var_names[i] : "x" + std::to_string(i);
  };
  std::string out;
  if (kind_ == Kind::kWeighted) {
    out = "weight(";
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(weights_[i]);
    }
    return out + ")";
  }
  out = kind_ == Kind::kLex ? "lex(" : "grevlex(";
  for (std::size_t k = 0; k < precedence_.size(); ++k) {
    if (k) out += ">";
    out += name(precedence_[k]);
  }
  return out + ")";
}

std::string format_monomial(const Monomial& m,
                            std::span<const std::string> var_names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += i < var_names.size() ? var_names[i] : "x" + std::to_string(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars,
                                             int max_degree) {
  std::vector<Monomial> out;
  if (max_degree < 0) return out;
  Monomial cur(nvars);
  // Enumerate exponent vectors recursively by remaining degree.
  auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
    if (var + 1 == nvars || nvars == 0) {
      if (nvars > 0) {
        for (int e = 0; e <= remaining; ++e) {
          cur.set(var, e);
          out.push_back(cur);
        }
        cur.set(var, 0);
      } else {
        out.push_back(cur);
      }
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur.set(var, e);
      self(self, var + 1, remaining - e);
    }
    cur.set(var, 0);
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return grevlex_compare(a, b) < 0;
  });
  return out;
}

CPoly lift_to_complex(const ZpPoly& f) {
  const PrimeField& F = f.field();
  return f.map_coefficients(ComplexField{}, [&](FieldElem c) {
    return std::complex<double>(static_cast<double>(F.symmetric(c)), 0.0);
  });
}

double normalized_residual(std::span<const CPoly> equations,
                           std::span<const std::complex<double>> point) {
  double worst = 0.0;
  for (const auto& f : equations) {
    double scale = 0.0;
    for (const auto& t : f.terms()) scale = std::max(scale, std::abs(t.coeff));
    worst = std::max(worst, std::abs(f.evaluate(point)) / (1.0 + scale));
  }
  return worst;
}

}  // namespace amsolve
