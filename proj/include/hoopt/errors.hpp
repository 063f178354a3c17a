#pragma once

#include <stdexcept>
#include <string>

namespace hoopt {

// Error taxonomy shared by the library and the CLI exit-code contract:
// config errors map to exit 2, missing inputs to 3, schema mismatches to 4.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hoopt
