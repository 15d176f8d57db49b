#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "amsolve/poly.hpp"

namespace amsolve {

/// A polynomial system as read from a `.sys` file.
///
/// Grammar (line oriented, `#` starts a comment):
///
///     # name: <text>                      optional metadata
///     ring <id> (, <id>)* over zp(<int>)  or  ring ... over complex
///     <expr>                              one equation per line
///
/// Expressions use integer literals, variables, `+ - * ^` and parentheses;
/// `^` takes a positive integer. Complex rings additionally accept decimal
/// literals such as `-1.25e-3`.
struct SystemFile {
  Ring ring;
  std::variant<std::vector<ZpPoly>, std::vector<CPoly>> equations;
  std::string name;

  bool is_prime_field() const noexcept { return equations.index() == 0; }
  std::size_t num_equations() const noexcept;

  /// Throw Error when the system lives in the other coefficient domain.
  const std::vector<ZpPoly>& zp() const;
  const std::vector<CPoly>& complex() const;

  friend bool operator==(const SystemFile&, const SystemFile&) = default;
};

SystemFile make_system(std::vector<std::string> var_names,
                       std::vector<ZpPoly> equations, std::string name = {});
SystemFile make_system(std::vector<std::string> var_names,
                       std::vector<CPoly> equations, std::string name = {});

/// Throws ParseError (with line and column) on lexical, syntactic or
/// semantic problems.
SystemFile parse_system(std::string_view text);

/// Canonical text; parse_system(format_system(s)) == s.
std::string format_system(const SystemFile& system);

/// Single polynomial in canonical listing form, "0" for the zero polynomial.
std::string format_polynomial(const ZpPoly& f,
                              std::span<const std::string> var_names);
std::string format_polynomial(const CPoly& f,
                              std::span<const std::string> var_names);

SystemFile read_system_file(const std::filesystem::path& path);
void write_system_file(const std::filesystem::path& path,
                       const SystemFile& system);

}  // namespace amsolve
