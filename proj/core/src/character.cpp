#include "hproj/character.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "hproj/arith.hpp"

namespace hproj {

namespace {

std::int64_t parse_int(std::string_view s, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument(std::string("character: bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::vector<signed char> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {}

DirichletCharacter DirichletCharacter::kronecker(std::int64_t d) {
  if (!is_discriminant(d)) throw std::invalid_argument("kronecker character: D must be a discriminant");
  auto m = static_cast<std::size_t>(d < 0 ? -d : d);
  std::vector<signed char> v(m);
  for (std::size_t r = 0; r < m; ++r) v[r] = static_cast<signed char>(hproj::kronecker(d, static_cast<std::int64_t>(r)));
  if (m == 1) v[0] = 1;
  return DirichletCharacter(std::move(v), "kronecker:" + std::to_string(d));
}

DirichletCharacter DirichletCharacter::trivial() { return DirichletCharacter({1}, "table:1:1"); }

DirichletCharacter DirichletCharacter::from_table(std::uint64_t modulus, std::vector<int> values) {
  if (modulus == 0) throw std::invalid_argument("character: modulus must be positive");
  if (values.size() != modulus) throw std::invalid_argument("character: table length must equal the modulus");
  const auto m = static_cast<std::int64_t>(modulus);
  std::vector<signed char> v(values.size());
  std::string label = "table:" + std::to_string(modulus) + ":";
  for (std::int64_t r = 0; r < m; ++r) {
    int x = values[static_cast<std::size_t>(r)];
    if (x < -1 || x > 1) throw std::invalid_argument("character: values must lie in {-1,0,1}");
    bool unit = std::gcd(r, m) == 1;
    if (unit != (x != 0)) throw std::invalid_argument("character: value must vanish exactly off the units");
    v[static_cast<std::size_t>(r)] = static_cast<signed char>(x);
    label += (r ? "," : "") + std::to_string(x);
  }
  if (v[1 % m] != 1) throw std::invalid_argument("character: chi(1) must be 1");
  for (std::int64_t a = 1; a < m; ++a) {
    if (v[a] == 0) continue;
    for (std::int64_t b = a; b < m; ++b) {
      if (v[b] == 0) continue;
      if (v[(a * b) % m] != v[a] * v[b]) throw std::invalid_argument("character: table is not multiplicative");
    }
  }
  return DirichletCharacter(std::move(v), std::move(label));
}

DirichletCharacter DirichletCharacter::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("character: expected kronecker:D or table:m:v0,...");
  auto kind = spec.substr(0, colon);
  auto rest = spec.substr(colon + 1);
  if (kind == "kronecker") return kronecker(parse_int(rest, "discriminant"));
  if (kind == "table") {
    auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("character: expected table:m:v0,...");
    auto m = parse_int(rest.substr(0, c2), "modulus");
    if (m <= 0) throw std::invalid_argument("character: modulus must be positive");
    std::vector<int> vals;
    auto list = rest.substr(c2 + 1);
    std::size_t pos = 0;
    while (pos <= list.size()) {
      auto comma = list.find(',', pos);
      if (comma == std::string_view::npos) comma = list.size();
      vals.push_back(static_cast<int>(parse_int(list.substr(pos, comma - pos), "value")));
      pos = comma + 1;
    }
    return from_table(static_cast<std::uint64_t>(m), std::move(vals));
  }
  throw std::invalid_argument("character: unknown kind '" + std::string(kind) + "'");
}

}  // namespace hproj
