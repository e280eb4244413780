// Copyright 2026 The RipStab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RIPSTAB_IO_MANIFEST_HPP
#define RIPSTAB_IO_MANIFEST_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

namespace ripstab {

/// FNV-1a 64-bit content hash, hex encoded. Identifies inputs in run
/// manifests; not cryptographic.
std::string fnv1a64_file(const std::string& path);
std::string fnv1a64_bytes(const void* data, std::size_t size);

/// Hardware descriptor for throughput reporting: logical thread count and
/// the CPU model read from /proc/cpuinfo when available.
nlohmann::json hardware_descriptor();

/// Shared manifest scaffold: tool name, version, command and hardware.
/// Callers add config, inputs, counters and timings before writing.
nlohmann::json make_manifest(const std::string& command);

void write_json(const nlohmann::json& doc, const std::string& path);

}  // namespace ripstab

#endif  // RIPSTAB_IO_MANIFEST_HPP
