#pragma once

// Text format for finite models:
//
//   model <N> over <ring-spec>
//   action <elem> : <N*N entries, row-major>     one line per ring element
//   p : <N*N*N entries>                          optional
//   add : <N*N entries>                          optional
//   o : <index>                                  optional
//
// Blank lines and '#' comments are ignored. Diagnostics carry
// "line L, column C".

#include <string>
#include <string_view>

#include "clonekit/action_models.hpp"

namespace clonekit {

FiniteModel parse_model(std::string_view text);
std::string format_model(const FiniteModel& m);

}  // namespace clonekit
