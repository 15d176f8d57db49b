#include "amsolve/sysio.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace amsolve {

std::size_t SystemFile::num_equations() const noexcept {
  return std::visit([](const auto& eqs) { return eqs.size(); }, equations);
}

const std::vector<ZpPoly>& SystemFile::zp() const {
  if (!is_prime_field()) throw Error("system is over the complex numbers");
  return std::get<0>(equations);
}

const std::vector<CPoly>& SystemFile::complex() const {
  if (is_prime_field()) throw Error("system is over a prime field");
  return std::get<1>(equations);
}

SystemFile make_system(std::vector<std::string> var_names,
                       std::vector<ZpPoly> equations, std::string name) {
  SystemFile s;
  s.ring.var_names = std::move(var_names);
  s.ring.coeff_kind = CoeffKind::kPrimeField;
  s.ring.modulus = equations.empty() ? PrimeField::kDefaultModulus
                                     : equations.front().field().modulus();
  s.equations = std::move(equations);
  s.name = std::move(name);
  return s;
}

SystemFile make_system(std::vector<std::string> var_names,
                       std::vector<CPoly> equations, std::string name) {
  SystemFile s;
  s.ring.var_names = std::move(var_names);
  s.ring.coeff_kind = CoeffKind::kComplex;
  s.ring.modulus = 0;
  s.equations = std::move(equations);
  s.name = std::move(name);
  return s;
}

namespace {

enum class Tok { kIdent, kInt, kReal, kPlus, kMinus, kStar, kCaret, kLParen,
                 kRParen, kComma, kEnd };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> lex_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[i])) ||
              line[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::kIdent, line.substr(start, i - start), start + 1});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      bool real = false;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      if (i < line.size() && line[i] == '.') {
        real = true;
        ++i;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      }
      if (i < line.size() && (line[i] == 'e' || line[i] == 'E')) {
        std::size_t save = i;
        ++i;
        if (i < line.size() && (line[i] == '+' || line[i] == '-')) ++i;
        if (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
          real = true;
          while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
        } else {
          i = save;
        }
      }
      std::string_view text = line.substr(start, i - start);
      if (text == ".") {
        throw ParseError(line_no, start + 1, "unexpected character '.'");
      }
      out.push_back({real ? Tok::kReal : Tok::kInt, text, start + 1});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::kPlus; break;
      case '-': kind = Tok::kMinus; break;
      case '*': kind = Tok::kStar; break;
      case '^': kind = Tok::kCaret; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case ',': kind = Tok::kComma; break;
      default:
        throw ParseError(line_no, start + 1,
                         std::string("unexpected character '") + c + "'");
    }
    ++i;
    out.push_back({kind, line.substr(start, 1), start + 1});
  }
  out.push_back({Tok::kEnd, {}, line.size() + 1});
  return out;
}

const char* token_name(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kInt: return "integer";
    case Tok::kReal: return "number";
    case Tok::kPlus: return "'+'";
    case Tok::kMinus: return "'-'";
    case Tok::kStar: return "'*'";
    case Tok::kCaret: return "'^'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kEnd: return "end of line";
  }
  return "token";
}

/// Recursive-descent parser for one equation line.
template <class Field>
class ExprParser {
 public:
  using Poly = Polynomial<Field>;

  ExprParser(const std::vector<Token>& toks, std::size_t line_no,
             const Field& field,
             const std::unordered_map<std::string_view, std::size_t>& vars,
             std::size_t nvars)
      : toks_(toks), line_(line_no), field_(field), vars_(vars),
        nvars_(nvars) {}

  Poly parse_line() {
    Poly p = expr();
    if (peek().kind != Tok::kEnd) {
      fail(peek(), std::string("expected operator or end of line, found ") +
                       token_name(peek().kind));
    }
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(line_, t.column, msg);
  }

  Poly expr() {
    Poly acc = term();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      bool minus = next().kind == Tok::kMinus;
      Poly rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Poly term() {
    Poly acc = unary();
    while (peek().kind == Tok::kStar) {
      next();
      acc = acc * unary();
    }
    return acc;
  }

  Poly unary() {
    if (peek().kind == Tok::kMinus) {
      next();
      return unary().scaled(field_.neg(field_.one()));
    }
    if (peek().kind == Tok::kPlus) {
      next();
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (peek().kind != Tok::kCaret) return base;
    next();
    const Token& t = next();
    if (t.kind == Tok::kMinus) fail(t, "exponent must be a positive integer");
    if (t.kind != Tok::kInt) {
      fail(t, std::string("expected integer exponent, found ") +
                  token_name(t.kind));
    }
    unsigned long e = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e);
    if (ec != std::errc() || e > 1000) fail(t, "exponent too large");
    if (e == 0) fail(t, "exponent must be a positive integer");
    Poly result = base;
    for (unsigned long k = 1; k < e; ++k) result = result * base;
    return result;
  }

  Poly atom() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::kIdent: {
        auto it = vars_.find(t.text);
        if (it == vars_.end()) {
          fail(t, "undeclared variable '" + std::string(t.text) + "'");
        }
        return Poly::variable(field_, nvars_, it->second);
      }
      case Tok::kInt:
      case Tok::kReal:
        return Poly::constant(field_, nvars_, literal(t));
      case Tok::kLParen: {
        Poly inner = expr();
        const Token& close = next();
        if (close.kind != Tok::kRParen) {
          fail(close, std::string("expected ')', found ") +
                          token_name(close.kind));
        }
        return inner;
      }
      default:
        fail(t, std::string("expected number, variable or '(', found ") +
                    token_name(t.kind));
    }
  }

  typename Field::Elem literal(const Token& t) const {
    if constexpr (std::is_same_v<Field, PrimeField>) {
      if (t.kind != Tok::kInt) {
        fail(t, "prime-field rings accept integer literals only");
      }
      // Reduce digit by digit so arbitrarily long literals are fine.
      typename Field::Elem v = field_.zero();
      typename Field::Elem ten = field_.normalize(10);
      for (char c : t.text) {
        v = field_.add(field_.mul(v, ten), field_.normalize(c - '0'));
      }
      return v;
    } else {
      double v = 0;
      auto [ptr, ec] =
          std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        fail(t, "malformed number");
      }
      return {v, 0.0};
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const Field& field_;
  const std::unordered_map<std::string_view, std::size_t>& vars_;
  std::size_t nvars_;
};

struct Header {
  std::vector<std::string> vars;
  bool prime = true;
  std::uint32_t modulus = 0;
};

Header parse_header(const std::vector<Token>& toks, std::size_t line_no) {
  Header h;
  std::size_t pos = 0;
  auto expect = [&](Tok kind, const char* what) -> const Token& {
    const Token& t = toks[pos];
    if (t.kind != kind) {
      throw ParseError(line_no, t.column,
                       std::string("expected ") + what + ", found " +
                           token_name(t.kind));
    }
    ++pos;
    return t;
  };
  const Token& kw = expect(Tok::kIdent, "'ring'");
  if (kw.text != "ring") {
    throw ParseError(line_no, kw.column, "expected 'ring' header");
  }
  while (true) {
    const Token& v = expect(Tok::kIdent, "variable name");
    if (v.text == "over") {
      throw ParseError(line_no, v.column, "expected variable name");
    }
    for (const auto& existing : h.vars) {
      if (existing == v.text) {
        throw ParseError(line_no, v.column,
                         "duplicate variable '" + std::string(v.text) + "'");
      }
    }
    h.vars.emplace_back(v.text);
    if (toks[pos].kind == Tok::kComma) {
      ++pos;
      continue;
    }
    break;
  }
  const Token& over = expect(Tok::kIdent, "'over'");
  if (over.text != "over") {
    throw ParseError(line_no, over.column, "expected 'over'");
  }
  const Token& dom = expect(Tok::kIdent, "'zp' or 'complex'");
  if (dom.text == "complex") {
    h.prime = false;
  } else if (dom.text == "zp") {
    expect(Tok::kLParen, "'('");
    const Token& num = expect(Tok::kInt, "modulus");
    std::uint64_t p = 0;
    auto [ptr, ec] =
        std::from_chars(num.text.data(), num.text.data() + num.text.size(), p);
    if (ec != std::errc() || p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
      throw ParseError(line_no, num.column,
                       "modulus " + std::string(num.text) +
                           " is not a prime below 2^31");
    }
    h.modulus = static_cast<std::uint32_t>(p);
    expect(Tok::kRParen, "')'");
  } else {
    throw ParseError(line_no, dom.column, "expected 'zp' or 'complex'");
  }
  expect(Tok::kEnd, "end of line");
  if (h.vars.size() > kMaxVars) {
    throw ParseError(line_no, 0, "too many variables");
  }
  return h;
}

template <class Field>
std::vector<Polynomial<Field>> parse_body(
    const std::vector<std::pair<std::size_t, std::vector<Token>>>& lines,
    const Field& field, const Header& h) {
  std::unordered_map<std::string_view, std::size_t> vars;
  for (std::size_t i = 0; i < h.vars.size(); ++i) vars[h.vars[i]] = i;
  std::vector<Polynomial<Field>> out;
  for (const auto& [line_no, toks] : lines) {
    ExprParser<Field> p(toks, line_no, field, vars, h.vars.size());
    out.push_back(p.parse_line());
  }
  return out;
}

template <class Field, class CoeffFmt>
std::string format_terms(const Polynomial<Field>& f,
                         std::span<const std::string> names, CoeffFmt fmt) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    auto [negative, magnitude, is_one] = fmt(t.coeff);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      out += magnitude;
    } else if (is_one) {
      out += format_monomial(t.monomial, names);
    } else {
      out += magnitude + "*" + format_monomial(t.monomial, names);
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  // Keep the literal lexable: "1e-05" is fine, "inf"/"nan" are not.
  if (s.find_first_of("in") != std::string::npos) {
    throw Error("non-finite coefficient cannot be serialized");
  }
  return s;
}

}  // namespace

std::string format_polynomial(const ZpPoly& f,
                              std::span<const std::string> var_names) {
  const PrimeField& F = f.field();
  return format_terms(f, var_names, [&](FieldElem c) {
    std::int64_t s = F.symmetric(c);
    std::int64_t mag = s < 0 ? -s : s;
    return std::tuple{s < 0, std::to_string(mag), mag == 1};
  });
}

std::string format_polynomial(const CPoly& f,
                              std::span<const std::string> var_names) {
  return format_terms(f, var_names, [](const std::complex<double>& c) {
    if (c.imag() != 0.0) {
      throw Error("coefficient with nonzero imaginary part cannot be serialized");
    }
    double re = c.real();
    bool neg = std::signbit(re);
    double mag = neg ? -re : re;
    return std::tuple{neg, format_double(mag), mag == 1.0};
  });
}

SystemFile parse_system(std::string_view text) {
  std::string name;
  std::optional<Header> header;
  std::vector<std::pair<std::size_t, std::vector<Token>>> body;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line.substr(first, 7) == "# name:" &&
        !header) {
      std::string_view rest = line.substr(first + 7);
      std::size_t a = rest.find_first_not_of(" \t");
      std::size_t b = rest.find_last_not_of(" \t\r");
      name = a == std::string_view::npos ? "" : std::string(rest.substr(a, b - a + 1));
      continue;
    }
    std::vector<Token> toks = lex_line(line, line_no);
    if (toks.size() == 1) continue;  // blank or comment
    if (!header) {
      header = parse_header(toks, line_no);
    } else {
      body.emplace_back(line_no, std::move(toks));
    }
    if (end == text.size()) break;
  }
  if (!header) throw ParseError(line_no, 0, "missing 'ring' header");
  if (body.empty()) throw ParseError(line_no, 0, "system has no equations");

  SystemFile s;
  s.name = name;
  s.ring.var_names = header->vars;
  if (header->prime) {
    PrimeField F(header->modulus);
    s.ring.coeff_kind = CoeffKind::kPrimeField;
    s.ring.modulus = header->modulus;
    s.equations = parse_body(body, F, *header);
  } else {
    s.ring.coeff_kind = CoeffKind::kComplex;
    s.ring.modulus = 0;
    s.equations = parse_body(body, ComplexField{}, *header);
  }
  return s;
}

std::string format_system(const SystemFile& system) {
  std::ostringstream out;
  if (!system.name.empty()) out << "# name: " << system.name << "\n";
  out << "ring ";
  for (std::size_t i = 0; i < system.ring.var_names.size(); ++i) {
    if (i) out << ", ";
    out << system.ring.var_names[i];
  }
  if (system.is_prime_field()) {
    out << " over zp(" << system.ring.modulus << ")\n";
  } else {
    out << " over complex\n";
  }
  std::visit(
      [&](const auto& eqs) {
        for (const auto& f : eqs) {
          out << format_polynomial(f, system.ring.var_names) << "\n";
        }
      },
      system.equations);
  return out.str();
}

SystemFile read_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

void write_system_file(const std::filesystem::path& path,
                       const SystemFile& system) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << format_system(system);
}

}  // namespace amsolve
