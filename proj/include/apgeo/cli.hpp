#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apgeo {

// Exit codes: 0 success / verified, 1 verification failure, 2 usage error,
// 3 cap exhaustion.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apgeo
