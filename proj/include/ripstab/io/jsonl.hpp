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

#ifndef RIPSTAB_IO_JSONL_HPP
#define RIPSTAB_IO_JSONL_HPP

#include <fstream>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "ripstab/tca.hpp"

namespace ripstab {

/// Mask payload of one JSONL instance: uncompressed column-major RLE
/// ({"size":[h,w],"counts":[...]}), a flat polygon ring [x0,y0,...] or a
/// list of flat rings (their union). Polygon payloads need the frame
/// geometry, either from the line's "width"/"height" fields or from
/// `fallback_geometry`.
BinaryMask mask_from_json(const nlohmann::json& payload,
                          std::optional<FrameGeometry> geometry,
                          const std::string& context);

nlohmann::json mask_to_json(const BinaryMask& mask);

/// Streaming reader for prediction JSONL: one instance per line, grouped
/// into frames. Frame indices must be non-decreasing per video; videos may
/// interleave. Lines with a null or missing instance mark explicitly empty
/// frames.
class JsonlReader {
 public:
  explicit JsonlReader(const std::string& path,
                       std::optional<FrameGeometry> default_geometry = {});

  /// Returns the next frame, or nullopt at end of file. Gaps in the frame
  /// index are NOT filled here; callers step intermediate empty frames.
  std::optional<FrameDetections> next();

  std::int64_t lines_read() const { return line_no_; }

 private:
  std::optional<nlohmann::json> read_record();

  std::ifstream in_;
  std::string path_;
  std::optional<FrameGeometry> default_geometry_;
  std::int64_t line_no_ = 0;
  std::optional<nlohmann::json> pending_;
  std::map<std::string, std::int64_t> last_frame_;  // per-video ordering check
};

/// Writes stabilized prediction lines, one instance per line, masks as RLE.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::string& path);

  void write_instance(const std::string& video_id, std::int64_t frame_index,
                      double score, const BinaryMask& mask,
                      std::optional<std::int64_t> track_id);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace ripstab

#endif  // RIPSTAB_IO_JSONL_HPP
