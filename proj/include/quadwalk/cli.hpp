#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "quadwalk/qirr.hpp"
#include "quadwalk/steplaw.hpp"

namespace quadwalk::cli {

// Grammar: quad:p,q,r,d | poly:a,b,c,+|- | phi | sqrt<d>
QuadIrrational parse_alpha(const std::string& text);

// Grammar: v1:p1,v2:p2,... with exact rational probabilities (e.g. -1:1/2,1:1/2)
StepLaw parse_law(const std::string& text);

// Full command dispatcher. Returns the process exit code:
// 0 success, 1 domain error, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadwalk::cli
