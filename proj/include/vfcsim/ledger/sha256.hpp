#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vfc {

/// SHA-256 over a byte string, returned as lowercase hex. Used as the stable
/// content digest for blocks and credentials; simulation fidelity, not a
/// security product.
std::string sha256_hex(std::string_view data);

}  // namespace vfc
