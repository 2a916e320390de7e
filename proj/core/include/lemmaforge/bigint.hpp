#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace lemmaforge {

// Wide enough for every machine-integer bound we model (size_t max + 1).
using BigInt = __int128;

std::string to_string(BigInt value);
std::optional<BigInt> parse_bigint(std::string_view text);

}  // namespace lemmaforge
