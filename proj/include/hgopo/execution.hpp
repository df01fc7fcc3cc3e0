#pragma once

namespace hgopo {

// Serial is the reference path; parallel must reproduce it bit for bit.
enum class Execution { serial, parallel };

}  // namespace hgopo
