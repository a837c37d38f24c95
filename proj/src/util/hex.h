// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_UTIL_HEX_H
#define ATOMICLOANS_UTIL_HEX_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace atomicloans {

std::string to_hex(std::span<const uint8_t> bytes);
std::optional<std::vector<uint8_t>> from_hex(const std::string& s);

}  // namespace atomicloans

#endif  // ATOMICLOANS_UTIL_HEX_H
