#pragma once

// The gas-station walkthrough, shared by the reduction tests and the acceptance run.

#include <string>
#include <vector>

namespace walkthrough {

inline const char* const kGas = "W[C[call-attendant, name], C[credit-card, octane^, receipt?]]";

// Our path through the gas example, one rule per line.
inline const std::vector<std::string> kWalk = {
    "const ~ :: nil || W[C[call-attendant, name], C[credit-card, octane^, receipt?]] || "
    "credit-card octane call-attendant name receipt?",
    "W[C[call-attendant, name], @] :: const ~ :: nil || C[credit-card, octane^, receipt?] || "
    "credit-card octane call-attendant name receipt?",
    "C[@, octane^, receipt?] :: W[C[call-attendant, name], @] :: const ~ :: nil || credit-card || "
    "credit-card octane call-attendant name receipt?",
    "W[C[call-attendant, name], @] :: const ~ :: nil || C[octane^, receipt?] || "
    "octane call-attendant name receipt?",
    "C[@, receipt?] :: W[C[call-attendant, name], @] :: const ~ :: nil || octane^ || "
    "octane call-attendant name receipt?",
    "W[C[call-attendant, name], C[@, receipt?]] :: const ~ :: nil || octane || octane call-attendant name receipt?",
    "const ~ :: nil || W[C[call-attendant, name], receipt?] || call-attendant name receipt?",
    "W[@, receipt?] :: const ~ :: nil || C[call-attendant, name] || call-attendant name receipt?",
    "C[@, name] :: W[@, receipt?] :: const ~ :: nil || call-attendant || call-attendant name receipt?",
    "W[@, receipt?] :: const ~ :: nil || name || name receipt?",
    "const ~ :: nil || receipt? || receipt?",
    "nil || ~ || ",
};

// The configurations printed in the worked example, in order.
inline const std::vector<std::string> kPrinted = {kWalk[0], kWalk[1], kWalk[2], kWalk[3], kWalk[4], kWalk[6], kWalk[7]};

}  // namespace walkthrough
