#include "mxl/status.hpp"

namespace mxl {

const char* to_string(Status s) {
    switch (s) {
    case Status::Verified: return "Verified";
    case Status::Refuted: return "Refuted";
    case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

}  // namespace mxl
