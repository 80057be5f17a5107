#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hproj {

// Real-valued Dirichlet character, stored as a value table over Z/mZ.
class DirichletCharacter {
 public:
  // n -> (D/n) for a discriminant D (D = 0, 1 mod 4); modulus |D|.
  static DirichletCharacter kronecker(std::int64_t d);
  // Values chi(0), ..., chi(m-1); checked for periodic multiplicativity.
  static DirichletCharacter from_table(std::uint64_t modulus, std::vector<int> values);
  static DirichletCharacter trivial();
  // "kronecker:D" or "table:m:v0,v1,...".
  static DirichletCharacter parse(std::string_view spec);

  int operator()(std::int64_t n) const {
    auto m = static_cast<std::int64_t>(values_.size());
    auto r = n % m;
    if (r < 0) r += m;
    return values_[static_cast<std::size_t>(r)];
  }

  std::uint64_t modulus() const { return values_.size(); }
  // 0 for even characters, 1 for odd ones.
  int parity() const { return (*this)(-1) == -1 ? 1 : 0; }
  const std::vector<signed char>& values() const { return values_; }
  const std::string& label() const { return label_; }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.values_ == b.values_;
  }

 private:
  DirichletCharacter(std::vector<signed char> values, std::string label);

  std::vector<signed char> values_;
  std::string label_;
};

}  // namespace hproj
