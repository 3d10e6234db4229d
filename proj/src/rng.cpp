#include "ringnet/rng.hpp"

#include "ringnet/common.hpp"

#include <sstream>

namespace ringnet {

std::string rng_state(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

void set_rng_state(Rng& rng, const std::string& text) {
  std::istringstream is(text);
  Rng tmp;
  is >> tmp;
  if (is.fail()) throw CorruptFileError("unreadable RNG state");
  rng = tmp;
}

}  // namespace ringnet
