#pragma once

#include <stdexcept>
#include <string>

namespace qrr {

// Error taxonomy mirrored by the CLI exit codes:
//   input_error      -> 2   malformed data, bad arguments, invalid ranges
//   contract_error   -> 3   precondition/consistency violations
//   degeneracy_error -> 3   rank deficiency, impossible measurement branches
//   resource_error   -> 4   dimension budget exceeded
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class contract_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class degeneracy_error : public contract_error {
 public:
  using contract_error::contract_error;
};

class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrr
