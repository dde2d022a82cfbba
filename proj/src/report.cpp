#include "apport/report.hpp"

namespace apport {

std::string to_string(ApportionStatus s) {
    switch (s) {
        case ApportionStatus::uniform: return "uniform";
        case ApportionStatus::inconclusive: return "inconclusive";
        case ApportionStatus::infeasible_by_theorem: return "infeasible-by-theorem";
    }
    return "?";
}

}  // namespace apport
