#include "sdm/errors.hpp"

namespace sdm {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const DataError*>(&e)) return 3;
  return 4;
}

}  // namespace sdm
