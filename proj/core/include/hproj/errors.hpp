#pragma once

#include <stdexcept>

namespace hproj {

// A numerical procedure could not reach or certify its requested accuracy.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A series operation needed coefficients beyond the stored precision.
class precision_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hproj
