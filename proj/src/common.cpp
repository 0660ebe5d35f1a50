#include "bgp/common.hpp"

namespace bgp {

const char* to_string(SurroundMode mode) { return mode == SurroundMode::open ? "open" : "closed"; }

const char* to_string(Method method) { return method == Method::exact ? "exact" : "two-phase"; }

SurroundMode parse_mode(const std::string& text) {
  if (text == "open") return SurroundMode::open;
  if (text == "closed") return SurroundMode::closed;
  throw Error("unknown mode '" + text + "' (expected open|closed)");
}

Method parse_method(const std::string& text) {
  if (text == "exact") return Method::exact;
  if (text == "two-phase") return Method::two_phase;
  throw Error("unknown method '" + text + "' (expected exact|two-phase)");
}

}  // namespace bgp
