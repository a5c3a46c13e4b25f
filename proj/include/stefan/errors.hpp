#pragma once

#include <stdexcept>
#include <string>

namespace stefan {

/// Thrown when an algorithm breaks down numerically (loss of positive
/// definiteness, melting-front collapse).  Input-validation failures use
/// std::invalid_argument / std::domain_error instead, so callers can map the
/// two classes to different exit codes.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stefan
