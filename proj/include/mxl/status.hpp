#pragma once

namespace mxl {

enum class Status { Verified, Refuted, Inconclusive };

const char* to_string(Status s);

}  // namespace mxl
