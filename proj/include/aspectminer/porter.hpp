#pragma once

#include <string>
#include <string_view>

namespace aspectminer {

/// Porter's 1980 suffix-stripping algorithm (steps 1a through 5b), as
/// published; the later reference-C departures (bli/logi) are not applied.
/// Input containing anything but a-z is returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace aspectminer
