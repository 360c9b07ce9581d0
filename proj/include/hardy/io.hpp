#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hardy/behavior.hpp"

namespace hardy::io {

/// 17 significant digits, enough to round-trip any double exactly.
std::string format_double(double v);

/// CSV with header `x,y,z,a,b,c,p`; outcomes written as +1 / -1, rows in
/// storage order.
std::string behavior_to_csv(const Behavior& b);
Behavior behavior_from_csv(std::string_view text);

/// JSON object {"layout": ..., "p": [64 numbers]} in storage order.
std::string behavior_to_json(const Behavior& b);
Behavior behavior_from_json(std::string_view text);

/// 64-bit FNV-1a; used for config fingerprints in run manifests.
std::uint64_t fnv1a(std::string_view bytes);

/// Writes `contents` to `path`, creating parent directories.
void write_file(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace hardy::io
