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

#include "ripstab/io/manifest.hpp"

#include <sys/utsname.h>

#include <cstdio>
#include <fstream>
#include <thread>

#include "ripstab/errors.hpp"
#include "ripstab/version.hpp"

namespace ripstab {

using nlohmann::json;

std::string fnv1a64_bytes(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path + " for hashing");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

json hardware_descriptor() {
  json hw;
  hw["threads"] = std::thread::hardware_concurrency();
  std::string model = "unknown";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto value = line.substr(colon + 1);
        auto b = value.find_first_not_of(' ');
        model = b == std::string::npos ? value : value.substr(b);
      }
      break;
    }
  }
  hw["cpu"] = model;
  utsname uts{};
  if (uname(&uts) == 0) {
    hw["machine"] = uts.machine;
    hw["system"] = uts.sysname;
  }
  return hw;
}

json make_manifest(const std::string& command) {
  json m;
  m["tool"] = "ripstab";
  m["version"] = RIPSTAB_VERSION;
  m["command"] = command;
  m["hardware"] = hardware_descriptor();
  return m;
}

void write_json(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace ripstab
