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

#ifndef RIPSTAB_IO_PNG_IO_HPP
#define RIPSTAB_IO_PNG_IO_HPP

#include <string>

#include "ripstab/mask.hpp"

namespace ripstab {

/// Writes a mask as a single-channel 8-bit PNG with values 0/255.
void write_mask_png(const BinaryMask& mask, const std::string& path);

/// Reads a single-channel 8-bit PNG; nonzero pixels are set.
BinaryMask read_mask_png(const std::string& path);

}  // namespace ripstab

#endif  // RIPSTAB_IO_PNG_IO_HPP
